#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sympidx/forms.hpp"

namespace sympidx {

enum class Location { one, minus_one, elliptic, hyperbolic_real, hyperbolic_complex };
enum class FloquetType { hyperbolic, elliptic, mixed };
std::string to_string(Location l);
std::string to_string(FloquetType f);

struct EigenCluster {
  std::complex<double> value;
  int multiplicity = 0;
  Location location = Location::elliptic;
};

struct SpectralClassification {
  std::vector<EigenCluster> clusters;  // sorted by (location, arg, modulus)
  // the two forced multipliers at 1 are set aside before typing the rest
  FloquetType floquet_type = FloquetType::elliptic;
  // 1 has algebraic multiplicity exactly 2 and no other multiplier on U is a
  // root of unity of order <= max_root_order
  bool nondegenerate = false;
  int multiplicity_at_one = 0;
};

struct DecomposeOptions {
  double cluster_tol = 1e-5;
  double rank_tol = 1e-8;   // relative to ‖M‖
  double sym_tol = 1e-6;
  int max_root_order = 1000;
  double resonance_tol = 1e-6;  // |q·θ/2π - p| treated as zero
};

SpectralClassification classify_spectrum(const Matrix& m, const DecomposeOptions& opt);
SpectralClassification classify_spectrum(const Matrix& m, double tol);

struct Decomposition {
  int n = 0;
  SpectralClassification spectrum;
  NormalFormCounts counts;  // N2 angles reported in (0, π)
};

// Normal-form invariants of an arbitrary symplectic matrix.
Decomposition decompose(const Matrix& m, const DecomposeOptions& opt);

// Same, restricted to the N1(1,1) ⋄ U shape of a closed characteristic:
// throws NotACharacteristicError unless 1 has algebraic multiplicity 2 with a
// one-dimensional kernel.
Decomposition extract_counts(const Matrix& m, const DecomposeOptions& opt);
Decomposition extract_counts(const Matrix& m, double tol);

// (b2 - b3) sin θ > 0 → trivial, < 0 → non-trivial
Triviality triviality_sign(const Eigen::Matrix2d& B, const Angle& theta);

}  // namespace sympidx
