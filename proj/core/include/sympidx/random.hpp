#pragma once

#include <cstdint>
#include <random>

#include "sympidx/forms.hpp"

namespace sympidx {

// Only raw engine output is used, so streams are identical across standard
// libraries for a given seed.
using Rng = std::mt19937_64;
double uniform01(Rng& rng);
long long uniform_int(Rng& rng, long long lo, long long hi);  // inclusive

struct SeedOptions {
  int n_min = 1;
  int n_max = 4;
  bool characteristic = false;  // p₋ = 1 and no other eigenvalue-1 blocks
  bool rational_angles = true;
  bool algebraic_angles = true;
  bool float_angles = true;
  double angle_gap = 0.02;  // min turn distance between unit-circle eigenvalues
  // irrational angles: e^{iθ} stays resonance_separation away from every m-th
  // root of unity, m <= resonance_horizon
  int resonance_horizon = 0;
  double resonance_separation = 1e-3;
  int max_winding = 3;
};

// Random valid seed; i1 always has the endpoint parity, so build_path accepts it.
IndexSeed random_seed(Rng& rng, const SeedOptions& opt);

// U·diag(Σ, Σ⁻¹)·V with U, V random orthosymplectic; the condition number is
// log-uniform in [1, cond_max].
Matrix random_symplectic(Rng& rng, int n, double cond_max = 1e3);

}  // namespace sympidx
