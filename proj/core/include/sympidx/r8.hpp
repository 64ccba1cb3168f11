#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sympidx/angle.hpp"
#include "sympidx/forms.hpp"

namespace sympidx {

// Block budget r + s + 2r* + 2r0 = 3 of the 6-dimensional factor U in
// M = P⁻¹(N1(1,1) ⋄ U)P.
struct R8Shape {
  int r = 0, s = 0, r_star = 0, r_zero = 0;
  bool operator==(const R8Shape&) const = default;
  std::string to_string() const;
};

// all non-negative solutions, ordered by (r, s, r*, r0) ascending
std::vector<R8Shape> enumerate_configs();

struct R8Config {
  R8Shape shape;
  std::vector<Angle> theta, alpha, beta;  // irrational turn fractions
  HyperbolicTail tail = HyperbolicTail::positive;
  long long i_viterbo = 0;  // i(y) of the prime characteristic

  void check() const;  // budget, lengths, irrational angles, parity of i(y)+4
};

IndexSeed seed_of(const R8Config& c);

// i(y^m) = m(i(y) + 5 - r) + 2Σ[mθj/2π] + r - 5
long long r8_index(const R8Config& c, long long m);

// Deterministic algebraic turn fractions frac(a/b·sqrt(d)) in (0, 1), kept
// away from 0, 1/2 and 1.
std::vector<Angle> algebraic_angles(std::uint64_t seed, int count);

struct ScanPoint {
  R8Shape shape;
  std::vector<std::string> angles;
  long long i_viterbo = 0;
  long long m = 0;
  long long index = 0;
  std::string note;
};

struct ScanReport {
  std::string claim;
  long long configs_scanned = 0;
  long long points_scanned = 0;
  std::vector<ScanPoint> violations;
  std::vector<ScanPoint> witnesses;      // capped sample; witness_count has the total
  long long witness_count = 0;
  std::vector<ScanPoint> check_failures;  // intermediate inequalities, two-path mismatches
  nlohmann::json details = nlohmann::json::object();
  double runtime_seconds = 0;  // not serialized into reports
};

struct Lemma31Options {
  long long i_min = -15, i_max = 15;
  long long m_max = 1000;
  int angle_samples = 100;
  bool enforce_hypothesis = true;
  std::uint64_t rng_seed = 20240601;
  int workers = 1;
};

ScanReport lemma31_scan(const Lemma31Options& opt);

struct ZeroMeanFamily {
  std::string name;
  R8Config config;
};

// Constructed families with î = 0 for r = 0, 2, 3 (and the half-integer r = 2
// families, where Σθj/2π ∈ Z + 1/2).
std::vector<ZeroMeanFamily> default_zero_mean_families();

ScanReport claim1_scan(const std::vector<ZeroMeanFamily>& families, long long m_max,
                       int r1_angle_samples = 100, std::uint64_t rng_seed = 20240601);

enum class MeanIndexClass { diverges_up, diverges_down, zero_family };
std::string to_string(MeanIndexClass c);
MeanIndexClass mean_index_dichotomy(const R8Config& c, long long m_probe);

nlohmann::json to_json(const ScanPoint& p);
nlohmann::json to_json(const ScanReport& r);

}  // namespace sympidx
