#include "sympidx/index.hpp"

#include <cmath>
#include <numbers>

#include "sympidx/errors.hpp"
#include "sympidx/tolerances.hpp"

namespace sympidx {

IntParts int_parts(double a, double guard) {
  if (!std::isfinite(a)) throw DomainError("int_parts of a non-finite value");
  IntParts r;
  const double f = std::floor(a);
  if (f == a) {
    r.floor = r.ceil = static_cast<long long>(f);
    return r;
  }
  const double nearest = std::round(a);
  if (std::fabs(a - nearest) <= guard)
    throw PrecisionError("value " + std::to_string(a) + " lies within " + std::to_string(guard) +
                         " of an integer");
  r.floor = static_cast<long long>(f);
  r.ceil = r.floor + 1;
  r.frac = a - f;
  r.phi = 1;
  return r;
}

IntParts int_parts(double a) {
  return int_parts(a, default_tolerances().floor_guard);
}

IntParts int_parts(const mpq_class& a) {
  return int_parts(SurdSum(a));
}

IntParts int_parts(const SurdSum& a) {
  IntParts r;
  r.floor = a.floor().get_si();
  const bool integral = a.is_rational() && a.rational_part().get_den() == 1;
  r.ceil = integral ? r.floor : r.floor + 1;
  r.phi = static_cast<int>(r.ceil - r.floor);
  r.frac = (a - SurdSum(r.floor)).to_double();
  return r;
}

long long iterate_index(const IndexSeed& seed, long long m) {
  if (m < 1) throw DomainError("iterate number must be positive");
  const NormalFormCounts& c = seed.counts;
  long long sum_e = 0;
  for (const Angle& t : c.theta) sum_e += t.floor_mul(m) + (t.integral_mul(m) ? 0 : 1);
  long long sum_phi = 0;
  for (const Angle& a : c.alpha) sum_phi += a.integral_mul(m) ? 0 : 1;
  const long long even = (m % 2 == 0) ? 1 : 0;
  return m * (seed.i1 + c.p_minus + c.p_zero - c.r) + 2 * sum_e - c.r - c.p_minus - c.p_zero -
         even * (c.q_zero + c.q_plus) + 2 * (sum_phi - c.r_star);
}

int iterate_nullity(const IndexSeed& seed, long long m) {
  if (m < 1) throw DomainError("iterate number must be positive");
  const NormalFormCounts& c = seed.counts;
  int phis = 0;
  for (const auto* list : {&c.theta, &c.alpha, &c.beta})
    for (const Angle& a : *list) phis += a.integral_mul(m) ? 0 : 1;
  const int even = (m % 2 == 0) ? 1 : 0;
  return c.nullity1() + even * (c.q_minus + 2 * c.q_zero + c.q_plus) +
         2 * (c.r + c.r_star + c.r_zero) - 2 * phis;
}

double mean_index(const IndexSeed& seed) {
  const NormalFormCounts& c = seed.counts;
  double sum = 0;
  for (const Angle& t : c.theta) sum += 2 * t.turn();
  return static_cast<double>(seed.i1 + c.p_minus + c.p_zero - c.r) + sum;
}

std::optional<SurdSum> exact_mean_index(const IndexSeed& seed) {
  const NormalFormCounts& c = seed.counts;
  SurdSum v(static_cast<long>(seed.i1 + c.p_minus + c.p_zero - c.r));
  for (const Angle& t : c.theta) {
    if (!t.is_exact()) return std::nullopt;
    v += t.exact_turn() * mpq_class(2);
  }
  return v;
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::unconstrained: return "unconstrained";
  }
  return "?";
}

namespace {
int odd_blocks(const NormalFormCounts& c) {
  // N1(1,1), I2, N1(-1,±1), -I2 and R(θ) contribute odd; N1(1,-1) and N2 even
  return c.p_minus + c.p_zero + c.q_minus + c.q_zero + c.q_plus + c.r;
}
}  // namespace

Parity block_parity(const IndexSeed& seed) {
  if (seed.counts.s >= 1) return Parity::unconstrained;
  return odd_blocks(seed.counts) % 2 ? Parity::odd : Parity::even;
}

Parity endpoint_parity(const IndexSeed& seed) {
  int k = odd_blocks(seed.counts);
  if (seed.counts.s >= 1 && seed.counts.hyperbolic_tail == HyperbolicTail::one_negative) ++k;
  return k % 2 ? Parity::odd : Parity::even;
}

void validate(const IndexSeed& seed) {
  seed.check();
  const Parity p = block_parity(seed);
  if (p == Parity::unconstrained) return;
  const bool odd = (seed.i1 % 2) != 0;
  if (odd != (p == Parity::odd))
    throw ParityError("i(gamma,1) = " + std::to_string(seed.i1) + " but the blocks force " +
                      to_string(p) + " parity");
}

bool is_good_iterate(const IndexSeed& seed, long long m) {
  const long long d = iterate_index(seed, m) - iterate_index(seed, 1);
  return d % 2 == 0;
}

long long grading_offset(double K, double T, int n) {
  if (!(T > 0)) throw DomainError("period T must be positive");
  if (n < 1) throw DomainError("n must be positive");
  const double v = K * T / (2 * std::numbers::pi);
  if (std::fabs(v - std::round(v)) <= 1e-12 * std::max(1.0, std::fabs(v)))
    throw DomainError("KT lies on the excluded lattice 2piZ");
  return 2LL * n * (static_cast<long long>(std::floor(v)) + 1);
}

std::vector<IterationResult> iterate_table(const IndexSeed& seed, long long m_max) {
  std::vector<IterationResult> out;
  out.reserve(static_cast<std::size_t>(std::max(0LL, m_max)));
  const long long i1 = iterate_index(seed, 1);
  for (long long m = 1; m <= m_max; ++m) {
    IterationResult r;
    r.m = m;
    r.maslov_index = iterate_index(seed, m);
    r.nullity = iterate_nullity(seed, m);
    r.viterbo_index = viterbo_from_maslov(r.maslov_index, seed.n);
    r.good = (r.maslov_index - i1) % 2 == 0;
    out.push_back(r);
  }
  return out;
}

CharacteristicRecord make_characteristic(std::string label, double tau, IndexSeed seed) {
  if (!(tau > 0)) throw DomainError("period tau must be positive");
  validate(seed);
  if (seed.counts.p_minus < 1)
    throw NotACharacteristicError("a closed characteristic carries the N1(1,1) factor (p_minus >= 1)");
  CharacteristicRecord r{std::move(label), tau, std::move(seed), 0.0};
  r.mean_index = mean_index(r.seed);
  return r;
}

}  // namespace sympidx
