#pragma once

#include <string>

#include "sympidx/exact.hpp"

namespace sympidx {

// Integer-part data of a real a: [a], {a}, E(a) = ceiling, φ(a) = E(a) - [a].
struct IntParts {
  long long floor = 0;
  double frac = 0.0;
  long long ceil = 0;
  int phi = 0;
};

// An angle θ in (0, 2π) \ {π}, stored through its turn fraction x = θ/2π.
//
//   rational   x = p/q in lowest terms
//   algebraic  θ given as an expression over sqrt() and pi; x is a SurdSum
//   floating   θ in radians; floors of m·x are refused when m·x lies within
//              the guard of an integer and the angle is declared irrational
class Angle {
 public:
  enum class Kind { rational, algebraic, floating };

  static Angle rational(long long p, long long q);
  static Angle algebraic(const std::string& expr);
  static Angle from_turn(const SurdSum& x);  // exact turn fraction
  static Angle floating(double radians, bool irrational = true);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ != Kind::floating; }
  bool declared_irrational() const { return irrational_; }
  long long p() const { return p_; }
  long long q() const { return q_; }
  const std::string& expr() const { return expr_; }
  const SurdSum& exact_turn() const;  // throws for floating angles

  double turn() const { return turn_; }
  double radians() const;

  // integer parts of m·x; exact for rational/algebraic angles
  IntParts parts(long long m) const;
  long long floor_mul(long long m) const;
  bool integral_mul(long long m) const;  // m·x ∈ Z
  SurdSum exact_frac_mul(long long m) const;

  Angle reflected() const;  // 2π - θ
  std::string to_string() const;

 private:
  Angle() = default;
  void check_range() const;
  long long float_floor(long long m) const;
  double float_guard(long long m) const;
  Kind kind_ = Kind::rational;
  long long p_ = 0, q_ = 1;
  SurdSum exact_;
  std::string expr_;
  double turn_ = 0.0;
  bool irrational_ = false;
};

// Parses an arithmetic expression over integers, decimals, pi and sqrt()
// into (coefficient, power of pi).  Throws DomainError on anything else.
struct PiMultiple {
  SurdSum coeff;
  int pi_power = 0;
};
PiMultiple parse_pi_expression(const std::string& expr);

}  // namespace sympidx
