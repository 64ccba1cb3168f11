#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sympidx/angle.hpp"
#include "sympidx/exact.hpp"
#include "sympidx/forms.hpp"

namespace sympidx {

// [a], {a}, E(a), φ(a).  The double overload treats exact integers as
// integers and throws PrecisionError when a lies within `guard` of an
// integer without being one.
IntParts int_parts(double a, double guard);
IntParts int_parts(double a);
IntParts int_parts(const mpq_class& a);
IntParts int_parts(const SurdSum& a);

// i(γ, m) and ν(γ, m) of the m-th iterate from the seed alone.
long long iterate_index(const IndexSeed& seed, long long m);
int iterate_nullity(const IndexSeed& seed, long long m);

// î(γ, 1) = i1 + p₋ + p₀ - r + Σθj/π
double mean_index(const IndexSeed& seed);
// exact value when every θj is rational or algebraic
std::optional<SurdSum> exact_mean_index(const IndexSeed& seed);

// Viterbo index of a closed characteristic vs. the Maslov-type index
inline long long viterbo_from_maslov(long long i_maslov, int n) { return i_maslov - n; }
inline long long maslov_from_viterbo(long long i_viterbo, int n) { return i_viterbo + n; }

enum class Parity { even, odd, unconstrained };
std::string to_string(Parity p);

// Parity of i(γ, 1) forced by the endpoint blocks; unconstrained iff s >= 1.
Parity block_parity(const IndexSeed& seed);
// Finer rule that also fixes the hyperbolic tail: D(2) even, D(-2) odd.
Parity endpoint_parity(const IndexSeed& seed);
// budget, list lengths and block parity of i1
void validate(const IndexSeed& seed);

bool is_good_iterate(const IndexSeed& seed, long long m);

// d(K) = 2n([KT/2π] + 1); DomainError when KT ∈ 2πZ
long long grading_offset(double K, double T, int n);

struct IterationResult {
  long long m = 1;
  long long maslov_index = 0;
  int nullity = 0;
  long long viterbo_index = 0;
  bool good = true;
};

std::vector<IterationResult> iterate_table(const IndexSeed& seed, long long m_max);

struct CharacteristicRecord {
  std::string label;
  double tau = 1.0;
  IndexSeed seed;
  double mean_index = 0.0;

  long long viterbo_index(long long m) const {
    return viterbo_from_maslov(iterate_index(seed, m), seed.n);
  }
  bool good(long long m) const { return is_good_iterate(seed, m); }
};

// Requires tau > 0 and the forced N1(1,1) factor (p₋ >= 1).
CharacteristicRecord make_characteristic(std::string label, double tau, IndexSeed seed);

}  // namespace sympidx
