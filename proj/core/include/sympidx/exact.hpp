#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

namespace sympidx {

// Finite Q-linear combination of square roots of square-free integers.
// Radicand 1 holds the rational part.  Distinct square-free roots are
// linearly independent over Q, so a sum with a non-zero irrational part is
// never an integer; floors and signs always terminate.
class SurdSum {
 public:
  SurdSum() = default;
  SurdSum(long v) { if (v) terms_[1] = v; }  // NOLINT implicit
  SurdSum(const mpq_class& q);               // NOLINT implicit

  // sqrt(q) for q >= 0; square factors are pulled out of the radicand
  static SurdSum sqrt_of(const mpq_class& q);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  mpq_class rational_part() const;
  const std::map<std::uint64_t, mpq_class>& terms() const { return terms_; }

  SurdSum operator-() const;
  SurdSum& operator+=(const SurdSum& o);
  SurdSum& operator-=(const SurdSum& o);
  SurdSum& operator*=(const SurdSum& o);
  SurdSum& operator*=(const mpq_class& q);
  friend SurdSum operator+(SurdSum a, const SurdSum& b) { return a += b; }
  friend SurdSum operator-(SurdSum a, const SurdSum& b) { return a -= b; }
  friend SurdSum operator*(SurdSum a, const SurdSum& b) { return a *= b; }
  friend SurdSum operator*(SurdSum a, const mpq_class& q) { return a *= q; }
  friend SurdSum operator*(const mpq_class& q, SurdSum a) { return a *= q; }
  bool operator==(const SurdSum& o) const { return terms_ == o.terms_; }

  int sign() const;
  mpz_class floor() const;
  mpz_class ceil() const;
  double to_double() const;
  std::string to_string() const;

 private:
  void add_term(std::uint64_t radicand, const mpq_class& c);
  std::map<std::uint64_t, mpq_class> terms_;
};

// Largest s with s^2 | v; returns (s, v / s^2).  v must be below 2^53.
std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t v);

}  // namespace sympidx
