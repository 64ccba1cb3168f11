#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sympidx/forms.hpp"

namespace sympidx {

// dim_C ker(M^power - I), evaluated as Σ dim ker(M - ωI) over the power-th
// roots of unity ω.  Same number, but it never forms M^power, whose
// hyperbolic part would swamp the rank test for large powers.
struct NullityResult {
  int nullity = 0;
  bool borderline = false;  // some singular value within a factor 10 of the threshold
};
NullityResult nullity_oracle(const Matrix& m, long long power, double rel_tol = 1e-8);

// A one-period path γ on [0, 1] (τ normalized to 1) and its iterate
// extension γ^m(t) = γ(t - j) γ(1)^j on [j, j+1].
class SampledPath {
 public:
  SampledPath(int n, int periods, int samples_per_period, std::function<Matrix(double)> prime,
              std::string generator);

  int n() const { return n_; }
  int periods() const { return periods_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const std::string& generator() const { return generator_; }

  Matrix at(double t) const;       // t in [0, periods]
  const Matrix& endpoint() const;  // γ(1)

 private:
  int n_, periods_;
  std::function<Matrix(double)> prime_;
  std::vector<Matrix> powers_;  // γ(1)^j, j = 0..periods
  std::vector<double> times_;
  std::vector<Matrix> matrices_;
  std::string generator_;
};

// Block-wise one-parameter paths ending at realize_seed(seed).  All winding
// goes on the first block; ParityError when i1 has the wrong parity for the
// endpoint (D(2) tails fix it even, D(-2) odd).
SampledPath build_path(const IndexSeed& seed, int samples_per_period, int periods);

struct CrossingOptions {
  int max_subdivision_log2 = 20;  // per period
  double max_step_phase = 0.5;    // radians of det-phase per accepted step
  double zero_phase = 1e-6;
};

struct CrossingCalibration {
  long long offset = 0;
  std::string reference;
};

// Index of γ^m for m = 1..periods, from the winding of det W along the path,
// where W is the unitary Souriau image of the graph of γ relative to the
// diagonal.  The crossings of the graph with the diagonal are exactly the
// eigenphases of W passing 1, so this counts them with signature weights
// without needing them to be regular or isolated.
std::vector<long long> crossing_index_series(const SampledPath& path, const CrossingCalibration& cal,
                                             const CrossingOptions& opt = {});
long long crossing_index(const SampledPath& path, const CrossingCalibration& cal,
                         const CrossingOptions& opt = {});

// the reference seed used by default: N1(1,1) ⋄ three surd rotations, i1 = -2
IndexSeed reference_seed();
CrossingCalibration calibrate_crossing(const IndexSeed& reference, const CrossingOptions& opt = {});

double mean_index_limit(const IndexSeed& seed, long long m_max);

struct OracleRecord {
  std::string seed_id;
  std::string quantity;  // "index" or "nullity"
  long long m = 1;
  long long formula_value = 0;
  long long oracle_value = 0;
  bool agree = false;
};

// nullity and index records for m = 1..m_max
std::vector<OracleRecord> cross_check(const IndexSeed& seed, const std::string& seed_id,
                                      int m_max, const CrossingCalibration& cal,
                                      int samples_per_period = 64);

}  // namespace sympidx
