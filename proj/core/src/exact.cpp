#include "sympidx/exact.hpp"

#include <cmath>
#include <numeric>

#include <mpfr.h>

#include "sympidx/errors.hpp"

namespace sympidx {
namespace {

constexpr mpfr_prec_t kStartBits = 128;
constexpr mpfr_prec_t kMaxBits = 1 << 16;

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

// Value at precision p, plus an absolute error bound.  Each term is
// computed with at most 3 roundings of relative size 2^-p.
void evaluate(const std::map<std::uint64_t, mpq_class>& terms, mpfr_prec_t p, Mpfr& sum,
              Mpfr& err) {
  Mpfr t(p), a(p);
  mpfr_set_zero(sum.v, 1);
  mpfr_set_zero(err.v, 1);
  for (const auto& [rad, c] : terms) {
    mpfr_set_ui(t.v, static_cast<unsigned long>(rad), MPFR_RNDN);
    mpfr_sqrt(t.v, t.v, MPFR_RNDN);
    mpfr_mul_q(t.v, t.v, c.get_mpq_t(), MPFR_RNDN);
    mpfr_add(sum.v, sum.v, t.v, MPFR_RNDN);
    mpfr_abs(a.v, t.v, MPFR_RNDU);
    mpfr_add(err.v, err.v, a.v, MPFR_RNDU);
  }
  // |terms| * 2^(3-p) for term roundings, plus the additions
  mpfr_mul_2si(err.v, err.v, 3 - static_cast<long>(p) + static_cast<long>(terms.size()), MPFR_RNDU);
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t v) {
  if (v >= (std::uint64_t{1} << 53)) throw DomainError("radicand too large: " + std::to_string(v));
  std::uint64_t s = 1;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    while (v % (p * p) == 0) {
      v /= p * p;
      s *= p;
    }
  }
  return {s, v};
}

SurdSum::SurdSum(const mpq_class& q) {
  if (q != 0) terms_[1] = q;
}

SurdSum SurdSum::sqrt_of(const mpq_class& q) {
  if (q < 0) throw DomainError("square root of a negative number");
  if (q == 0) return {};
  // sqrt(a/b) = sqrt(a*b)/b
  mpz_class ab = q.get_num() * q.get_den();
  if (!ab.fits_ulong_p()) throw DomainError("radicand too large");
  auto [s, rad] = split_square(ab.get_ui());
  SurdSum r;
  r.terms_[rad] = mpq_class(mpz_class(static_cast<unsigned long>(s)), q.get_den());
  r.terms_[rad].canonicalize();
  return r;
}

bool SurdSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

mpq_class SurdSum::rational_part() const {
  auto it = terms_.find(1);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void SurdSum::add_term(std::uint64_t radicand, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(radicand, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SurdSum SurdSum::operator-() const {
  SurdSum r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

SurdSum& SurdSum::operator+=(const SurdSum& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

SurdSum& SurdSum::operator-=(const SurdSum& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

SurdSum& SurdSum::operator*=(const mpq_class& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= q;
  return *this;
}

SurdSum& SurdSum::operator*=(const SurdSum& o) {
  SurdSum r;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      // sqrt(a) sqrt(b) = g sqrt((a/g)(b/g)), g = gcd(a, b); the product stays square-free
      std::uint64_t g = std::gcd(a, b);
      mpq_class c = ca * cb * mpq_class(static_cast<unsigned long>(g));
      r.add_term((a / g) * (b / g), c);
    }
  }
  terms_ = std::move(r.terms_);
  return *this;
}

int SurdSum::sign() const {
  if (terms_.empty()) return 0;
  if (is_rational()) return sgn(terms_.begin()->second);
  for (mpfr_prec_t p = kStartBits; p <= kMaxBits; p *= 2) {
    Mpfr v(p), e(p), a(p);
    evaluate(terms_, p, v, e);
    mpfr_abs(a.v, v.v, MPFR_RNDD);
    if (mpfr_cmp(a.v, e.v) > 0) return mpfr_sgn(v.v);
  }
  throw PrecisionError("sign of " + to_string() + " unresolved at " + std::to_string(kMaxBits) +
                       " bits");
}

mpz_class SurdSum::floor() const {
  if (is_rational()) {
    mpq_class q = rational_part();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
  }
  for (mpfr_prec_t p = kStartBits; p <= kMaxBits; p *= 2) {
    Mpfr v(p), e(p), lo(p), hi(p);
    evaluate(terms_, p, v, e);
    mpfr_sub(lo.v, v.v, e.v, MPFR_RNDD);
    mpfr_add(hi.v, v.v, e.v, MPFR_RNDU);
    mpz_class flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), lo.v, MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), hi.v, MPFR_RNDD);
    if (flo == fhi) return flo;
  }
  throw PrecisionError("floor of " + to_string() + " unresolved at " + std::to_string(kMaxBits) +
                       " bits");
}

mpz_class SurdSum::ceil() const {
  return -(-*this).floor();
}

double SurdSum::to_double() const {
  if (terms_.empty()) return 0.0;
  Mpfr v(kStartBits), e(kStartBits);
  evaluate(terms_, kStartBits, v, e);
  return mpfr_get_d(v.v, MPFR_RNDN);
}

std::string SurdSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [rad, c] : terms_) {
    mpq_class a = abs(c);
    if (!first) s += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) s += "-";
    first = false;
    if (rad == 1) {
      s += a.get_str();
      continue;
    }
    if (a != 1) s += a.get_str() + "*";
    s += "sqrt(" + std::to_string(rad) + ")";
  }
  return s;
}

}  // namespace sympidx
