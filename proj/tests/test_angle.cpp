#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sympidx/angle.hpp"
#include "sympidx/errors.hpp"
#include "sympidx/index.hpp"
#include "sympidx/tolerances.hpp"

using namespace sympidx;

TEST(Angle, RationalInLowestTermsOnly) {
  const Angle a = Angle::rational(2, 5);
  EXPECT_EQ(a.kind(), Angle::Kind::rational);
  EXPECT_DOUBLE_EQ(a.turn(), 0.4);
  EXPECT_NEAR(a.radians(), 0.8 * std::numbers::pi, 1e-15);
  EXPECT_THROW(Angle::rational(2, 4), DomainError);
  EXPECT_THROW(Angle::rational(1, 2), DomainError);
  EXPECT_THROW(Angle::rational(0, 1), DomainError);
  EXPECT_THROW(Angle::rational(5, 4), DomainError);
  EXPECT_THROW(Angle::rational(1, 0), DomainError);
}

TEST(Angle, RationalIntegerParts) {
  const Angle a = Angle::rational(2, 5);
  for (long long m = 1; m <= 20; ++m) {
    const IntParts p = a.parts(m);
    EXPECT_EQ(p.floor, (2 * m) / 5);
    EXPECT_EQ(p.phi, (2 * m) % 5 == 0 ? 0 : 1);
    EXPECT_EQ(a.integral_mul(m), m % 5 == 0);
  }
  // large m stays exact
  EXPECT_EQ(Angle::rational(999999, 1000000).floor_mul(1000000000000LL), 999999000000LL);
}

TEST(Angle, AlgebraicParsing) {
  const Angle a = Angle::algebraic("2*pi*(sqrt(2)-1)");
  EXPECT_EQ(a.kind(), Angle::Kind::algebraic);
  EXPECT_NEAR(a.turn(), std::sqrt(2.0) - 1, 1e-15);
  EXPECT_EQ(a.exact_turn(), SurdSum::sqrt_of(2) - SurdSum(1));
  const Angle b = Angle::algebraic("pi*sqrt(2)/2");
  EXPECT_NEAR(b.turn(), std::sqrt(2.0) / 4, 1e-15);
  // rational expressions collapse to the rational kind
  const Angle c = Angle::algebraic("2*pi/3");
  EXPECT_EQ(c.kind(), Angle::Kind::rational);
  EXPECT_EQ(c.p(), 1);
  EXPECT_EQ(c.q(), 3);
  EXPECT_THROW(Angle::algebraic("sqrt(2)"), DomainError);
  EXPECT_THROW(Angle::algebraic("pi*pi/4"), DomainError);
  EXPECT_THROW(Angle::algebraic("pi"), DomainError);
  EXPECT_THROW(Angle::algebraic("2*pi*(sqrt(2)"), DomainError);
  EXPECT_THROW(Angle::algebraic("2*pi*log(2)"), DomainError);
}

TEST(Angle, AlgebraicFloorsAtLargeM) {
  // m·(√2 - 1) for Pell denominators sits within ~1/(2√2 m) of an integer
  const Angle a = Angle::algebraic("2*pi*(sqrt(2)-1)");
  EXPECT_EQ(a.floor_mul(985), 408);   // 408.00035...
  EXPECT_EQ(a.floor_mul(1393), 576);  // 576.99949...
  EXPECT_EQ(a.floor_mul(2378), 984);  // 984.99985...
  EXPECT_FALSE(a.integral_mul(1393));
}

TEST(Angle, FloatGuardRefusesNearIntegers) {
  const Angle a = Angle::floating(2 * std::numbers::pi * 0.25000000001);
  EXPECT_EQ(a.floor_mul(3), 0);
  EXPECT_THROW(a.floor_mul(4), PrecisionError);
  // declared rational: exact hits are accepted
  const Angle b = Angle::floating(2 * std::numbers::pi * 0.25, false);
  EXPECT_EQ(b.floor_mul(4), 1);
}

TEST(Angle, FloatPrecisionBudget) {
  const Angle a = Angle::floating(2 * std::numbers::pi * 0.3141592653);
  EXPECT_NO_THROW(a.floor_mul(1000));
  // half an ulp of x, scaled by m, exceeds the guard
  EXPECT_THROW(a.floor_mul(100000000000LL), PrecisionError);
}

TEST(Angle, WorkingBitsComeFromTheToleranceTable) {
  const Angle a = Angle::floating(2 * std::numbers::pi * 0.3141592653);
  const Tolerances saved = default_tolerances();
  Tolerances t = saved;
  t.angle_bits = 24;  // (|mx|+1)·2^-24 is far above the floor guard
  set_default_tolerances(t);
  EXPECT_THROW(a.floor_mul(1), PrecisionError);
  t.angle_bits = 80;
  set_default_tolerances(t);
  EXPECT_EQ(a.floor_mul(1000), 314);
  set_default_tolerances(saved);
}

TEST(Angle, Reflection) {
  EXPECT_EQ(Angle::rational(1, 3).reflected().p(), 2);
  const Angle r = Angle::algebraic("2*pi*(sqrt(2)-1)").reflected();
  EXPECT_EQ(r.exact_turn(), SurdSum(2) - SurdSum::sqrt_of(2));
  EXPECT_NEAR(Angle::floating(1.0).reflected().radians(), 2 * std::numbers::pi - 1.0, 1e-15);
}

TEST(IntParts, Definitions) {
  // E(a) = min{k in Z : k >= a}, φ(a) = E(a) - [a]
  IntParts p = int_parts(2.5);
  EXPECT_EQ(p.floor, 2);
  EXPECT_EQ(p.ceil, 3);
  EXPECT_EQ(p.phi, 1);
  EXPECT_DOUBLE_EQ(p.frac, 0.5);
  p = int_parts(-2.0);
  EXPECT_EQ(p.floor, -2);
  EXPECT_EQ(p.ceil, -2);
  EXPECT_EQ(p.phi, 0);
  p = int_parts(mpq_class(-7, 3));
  EXPECT_EQ(p.floor, -3);
  EXPECT_EQ(p.ceil, -2);
  EXPECT_THROW(int_parts(3.0 + 1e-12), PrecisionError);
}
