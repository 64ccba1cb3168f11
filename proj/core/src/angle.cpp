#include "sympidx/angle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <mpfr.h>

#include "sympidx/errors.hpp"
#include "sympidx/tolerances.hpp"

namespace sympidx {

__extension__ using i128 = __int128;

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  PiMultiple parse() {
    PiMultiple v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("angle expression '" + s_ + "' at " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool word(const char* w) {
    skip();
    std::string_view rest(s_.data() + pos_, s_.size() - pos_);
    std::string_view ww(w);
    if (rest.substr(0, ww.size()) != ww) return false;
    if (rest.size() > ww.size() && std::isalnum(static_cast<unsigned char>(rest[ww.size()])))
      return false;
    pos_ += ww.size();
    return true;
  }

  PiMultiple add(PiMultiple a, const PiMultiple& b, bool minus) {
    SurdSum c = minus ? -b.coeff : b.coeff;
    if (a.coeff.is_zero()) return {c, b.pi_power};
    if (c.is_zero()) return a;
    if (a.pi_power != b.pi_power) fail("mixed powers of pi in a sum");
    a.coeff += c;
    return a;
  }

  PiMultiple expr() {
    PiMultiple v = term();
    for (;;) {
      if (eat('+')) v = add(v, term(), false);
      else if (eat('-')) v = add(v, term(), true);
      else return v;
    }
  }

  PiMultiple term() {
    PiMultiple v = unary();
    for (;;) {
      if (eat('*')) {
        PiMultiple r = unary();
        v.coeff *= r.coeff;
        v.pi_power += r.pi_power;
      } else if (eat('/')) {
        PiMultiple r = unary();
        if (!r.coeff.is_rational() || r.coeff.is_zero()) fail("division by a non-rational factor");
        v.coeff *= 1 / r.coeff.rational_part();
        v.pi_power -= r.pi_power;
      } else {
        return v;
      }
    }
  }

  PiMultiple unary() {
    if (eat('-')) {
      PiMultiple v = unary();
      v.coeff = -v.coeff;
      return v;
    }
    if (eat('+')) return unary();
    return primary();
  }

  PiMultiple primary() {
    skip();
    if (eat('(')) {
      PiMultiple v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (word("pi")) return {SurdSum(1), 1};
    if (word("sqrt")) {
      if (!eat('(')) fail("expected '(' after sqrt");
      PiMultiple a = expr();
      if (!eat(')')) fail("expected ')'");
      if (a.pi_power != 0 || !a.coeff.is_rational()) fail("sqrt argument must be rational");
      if (a.coeff.rational_part() < 0) fail("sqrt of a negative number");
      return {SurdSum::sqrt_of(a.coeff.rational_part()), 0};
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      return {number(), 0};
    fail("expected a number, pi, sqrt or '('");
  }

  SurdSum number() {
    std::string digits;
    long long scale = 0;
    bool dot = false;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || (s_[pos_] == '.' && !dot))) {
      if (s_[pos_] == '.') {
        dot = true;
      } else {
        digits += s_[pos_];
        if (dot) ++scale;
      }
      ++pos_;
    }
    if (digits.empty()) fail("malformed number");
    mpz_class num(digits), den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
    mpq_class q(num, den);
    q.canonicalize();
    return SurdSum(q);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

// fast floor of m·x from a double approximation, with a rigorous slack
bool fast_floor(double x, long long m, long long& out) {
  double mx = static_cast<double>(m) * x;
  double slack = (std::fabs(mx) + 1.0) * 0x1p-50;
  double lo = std::floor(mx - slack), hi = std::floor(mx + slack);
  if (lo != hi || std::fabs(mx) > 0x1p52) return false;
  out = static_cast<long long>(lo);
  return true;
}

}  // namespace

PiMultiple parse_pi_expression(const std::string& expr) {
  return Parser(expr).parse();
}

Angle Angle::rational(long long p, long long q) {
  if (q <= 0) throw DomainError("rational angle needs q > 0");
  long long g = std::gcd(p, q);
  if (g != 1) throw DomainError("rational angle " + std::to_string(p) + "/" + std::to_string(q) +
                                " is not in lowest terms");
  Angle a;
  a.kind_ = Kind::rational;
  a.p_ = p;
  a.q_ = q;
  a.exact_ = SurdSum(mpq_class(mpz_class(std::to_string(p)), mpz_class(std::to_string(q))));
  a.turn_ = static_cast<double>(p) / static_cast<double>(q);
  a.check_range();
  return a;
}

Angle Angle::from_turn(const SurdSum& x) {
  if (x.is_rational()) {
    mpq_class q = x.rational_part();
    if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
      throw DomainError("rational angle out of range");
    return rational(q.get_num().get_si(), q.get_den().get_si());
  }
  Angle a;
  a.kind_ = Kind::algebraic;
  a.exact_ = x;
  a.turn_ = x.to_double();
  a.irrational_ = true;
  a.expr_ = "2*pi*(" + x.to_string() + ")";
  a.check_range();
  return a;
}

Angle Angle::algebraic(const std::string& expr) {
  PiMultiple v = parse_pi_expression(expr);
  if (v.pi_power != 1) throw DomainError("angle expression '" + expr + "' is not a multiple of pi");
  Angle a = from_turn(v.coeff * mpq_class(1, 2));
  if (a.kind_ == Kind::algebraic) a.expr_ = expr;
  return a;
}

Angle Angle::floating(double radians, bool irrational) {
  if (!std::isfinite(radians)) throw DomainError("angle is not finite");
  Angle a;
  a.kind_ = Kind::floating;
  a.turn_ = radians / (2 * std::numbers::pi);
  a.irrational_ = irrational;
  a.check_range();
  return a;
}

void Angle::check_range() const {
  if (is_exact()) {
    if (exact_.sign() <= 0 || (exact_ - SurdSum(1)).sign() >= 0)
      throw DomainError("angle " + to_string() + " outside (0, 2pi)");
    if ((exact_ * mpq_class(2)) == SurdSum(1)) throw DomainError("angle pi is not admissible");
    return;
  }
  const double g = default_tolerances().floor_guard;
  if (!(turn_ > g && turn_ < 1 - g)) throw DomainError("angle " + to_string() + " outside (0, 2pi)");
  if (std::fabs(turn_ - 0.5) <= g) throw DomainError("angle pi is not admissible");
}

const SurdSum& Angle::exact_turn() const {
  if (!is_exact()) throw PrecisionError("floating angle has no exact turn fraction");
  return exact_;
}

double Angle::radians() const {
  return 2 * std::numbers::pi * turn_;
}

long long Angle::floor_mul(long long m) const {
  switch (kind_) {
    case Kind::rational: {
      // floor division for a possibly negative numerator
      i128 num = static_cast<i128>(m) * p_;
      i128 f = num / q_;
      if (num % q_ != 0 && num < 0) --f;
      return static_cast<long long>(f);
    }
    case Kind::algebraic: {
      long long f;
      if (fast_floor(turn_, m, f)) return f;
      return (exact_ * mpq_class(mpz_class(std::to_string(m)))).floor().get_si();
    }
    case Kind::floating: break;
  }
  return float_floor(m);
}

namespace {

// m·x at the working precision of the tolerance table: floor and distance to
// the nearest integer
struct Scaled {
  long long floor;
  double distance;
};

Scaled scale_turn(double x, long long m, int bits) {
  mpfr_t v;
  mpfr_init2(v, std::max(bits, 2));
  mpfr_set_d(v, x, MPFR_RNDN);
  mpfr_mul_si(v, v, static_cast<long>(m), MPFR_RNDN);
  mpfr_t f;
  mpfr_init2(f, std::max(bits, 2));
  mpfr_floor(f, v);
  Scaled out{static_cast<long long>(mpfr_get_si(f, MPFR_RNDN)), 0};
  mpfr_sub(v, v, f, MPFR_RNDN);
  const double frac = mpfr_get_d(v, MPFR_RNDN);
  out.distance = std::min(frac, 1.0 - frac);
  mpfr_clear(f);
  mpfr_clear(v);
  return out;
}

}  // namespace

long long Angle::float_floor(long long m) const {
  const double guard = float_guard(m);
  const Scaled sc = scale_turn(turn_, m, default_tolerances().angle_bits);
  if (sc.distance <= guard) {
    if (irrational_)
      throw PrecisionError(std::to_string(m) + "*" + to_string() +
                           "/2pi is within the float guard of an integer");
    return static_cast<long long>(std::round(static_cast<double>(m) * turn_));
  }
  return sc.floor;
}

// Two error sources after scaling by m: the double itself is only known to
// half an ulp, and the product is rounded at angle_bits of working precision.
// Refuse whenever they could move m·x across the floor guard.
double Angle::float_guard(long long m) const {
  const double am = std::fabs(static_cast<double>(m));
  const double representation = am * (std::nextafter(turn_, 1.0) - turn_) / 2;
  const double arithmetic = (am * turn_ + 1.0) * std::ldexp(1.0, -default_tolerances().angle_bits);
  const double guard = default_tolerances().floor_guard;
  if (8 * (representation + arithmetic) > guard)
    throw PrecisionError("float angle " + to_string() + " cannot resolve floors at m=" +
                         std::to_string(m) + " with " + std::to_string(default_tolerances().angle_bits) +
                         " working bits");
  return guard;
}

bool Angle::integral_mul(long long m) const {
  switch (kind_) {
    case Kind::rational: return (static_cast<i128>(m) * p_) % q_ == 0;
    case Kind::algebraic: return false;  // non-zero irrational part
    case Kind::floating: break;
  }
  const double guard = float_guard(m);
  if (scale_turn(turn_, m, default_tolerances().angle_bits).distance > guard) return false;
  if (irrational_)
    throw PrecisionError(std::to_string(m) + "*" + to_string() +
                         "/2pi is within the float guard of an integer");
  return true;
}

IntParts Angle::parts(long long m) const {
  IntParts r;
  r.floor = floor_mul(m);
  bool integral = integral_mul(m);
  r.ceil = integral ? r.floor : r.floor + 1;
  r.phi = static_cast<int>(r.ceil - r.floor);
  if (kind_ == Kind::rational) {
    long long num = static_cast<long long>((static_cast<i128>(m) * p_) % q_);
    if (num < 0) num += q_;
    r.frac = static_cast<double>(num) / static_cast<double>(q_);
  } else if (kind_ == Kind::algebraic) {
    r.frac = exact_frac_mul(m).to_double();
  } else {
    r.frac = integral ? 0.0 : static_cast<double>(m) * turn_ - static_cast<double>(r.floor);
  }
  return r;
}

SurdSum Angle::exact_frac_mul(long long m) const {
  mpq_class mq(mpz_class(std::to_string(m)));
  SurdSum mx = exact_turn() * mq;
  return mx - SurdSum(mpq_class(mpz_class(std::to_string(floor_mul(m)))));
}

Angle Angle::reflected() const {
  switch (kind_) {
    case Kind::rational: return rational(q_ - p_, q_);
    case Kind::algebraic: return from_turn(SurdSum(1) - exact_);
    case Kind::floating: break;
  }
  Angle a = *this;
  a.turn_ = 1.0 - turn_;
  return a;
}

std::string Angle::to_string() const {
  switch (kind_) {
    case Kind::rational: return "2pi*" + std::to_string(p_) + "/" + std::to_string(q_);
    case Kind::algebraic: return expr_.empty() ? "2*pi*(" + exact_.to_string() + ")" : expr_;
    case Kind::floating: break;
  }
  std::ostringstream os;
  os.precision(17);
  os << radians();
  return os.str();
}

}  // namespace sympidx
