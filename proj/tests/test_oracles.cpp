#include <cmath>

#include <gtest/gtest.h>

#include "sympidx/errors.hpp"
#include "sympidx/index.hpp"
#include "sympidx/io.hpp"
#include "sympidx/oracles.hpp"
#include "sympidx/random.hpp"

using namespace sympidx;

TEST(NullityOracle, Examples) {
  EXPECT_EQ(nullity_oracle(realize(hyperbolic(2)), 5).nullity, 0);
  EXPECT_EQ(nullity_oracle(realize(rotation(Angle::rational(3, 7))), 7).nullity, 2);
  EXPECT_EQ(nullity_oracle(realize(rotation(Angle::rational(3, 7))), 6).nullity, 0);
  EXPECT_EQ(nullity_oracle(Matrix::Identity(4, 4), 3).nullity, 4);
  EXPECT_EQ(nullity_oracle(realize(shear(1, 1)), 9).nullity, 1);
  EXPECT_THROW(nullity_oracle(Matrix::Identity(2, 2), 0), DomainError);
}

TEST(NullityOracle, MatchesFormulaOnRandomSeeds) {
  Rng rng(9);
  SeedOptions opt;
  opt.resonance_horizon = 60;
  for (int k = 0; k < 100; ++k) {
    const IndexSeed s = random_seed(rng, opt);
    const Matrix m = realize_seed(s);
    EXPECT_EQ(nullity_oracle(m, 1).nullity, s.counts.nullity1());
    for (long long p = 1; p <= 60; ++p) {
      const NullityResult r = nullity_oracle(m, p);
      EXPECT_EQ(r.nullity, iterate_nullity(s, p)) << to_json(s).dump() << " m=" << p;
    }
  }
}

TEST(SampledPath, IterateLawAtPeriodBoundaries) {
  const IndexSeed s = reference_seed();
  const SampledPath path = build_path(s, 16, 5);
  const Matrix end = path.endpoint();
  EXPECT_LT((end - realize_seed(s).matrix()).cwiseAbs().maxCoeff(), 1e-12);
  Matrix pw = Matrix::Identity(2 * s.n, 2 * s.n);
  for (int j = 0; j <= 5; ++j) {
    EXPECT_LT((path.at(j) - pw).cwiseAbs().maxCoeff(), 1e-10) << j;
    pw = pw * end;
  }
  EXPECT_LT((path.at(0.0) - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SampledPath, PathsStaySymplectic) {
  Rng rng(10);
  for (int k = 0; k < 30; ++k) {
    const IndexSeed s = random_seed(rng, SeedOptions{});
    const SampledPath path = build_path(s, 8, 2);
    const Matrix j = standard_j(s.n);
    for (const Matrix& m : path.matrices())
      EXPECT_LT((m.transpose() * j * m - j).cwiseAbs().maxCoeff() / std::max(1.0, m.squaredNorm()), 1e-12);
  }
}

TEST(SampledPath, WrongParityRejected) {
  IndexSeed s = reference_seed();
  s.i1 += 1;
  EXPECT_THROW(build_path(s, 16, 1), ParityError);
}

TEST(CrossingOracle, CalibrationIsZeroAndReferenceAgrees) {
  const IndexSeed ref = reference_seed();
  const CrossingCalibration cal = calibrate_crossing(ref);
  EXPECT_EQ(cal.offset, 0);
  const SampledPath path = build_path(ref, 64, 20);
  const std::vector<long long> series = crossing_index_series(path, cal);
  ASSERT_EQ(series.size(), 20u);
  for (long long m = 1; m <= 20; ++m) EXPECT_EQ(series[m - 1], iterate_index(ref, m)) << m;
}

TEST(CrossingOracle, ConstantHyperbolicSequence) {
  IndexSeed s;
  s.n = 4;
  s.i1 = -1;
  s.counts.p_minus = 1;
  s.counts.s = 3;
  const std::vector<long long> series = crossing_index_series(build_path(s, 32, 12), {});
  for (long long v : series) EXPECT_EQ(v, -1);
}

TEST(CrossingOracle, AgreesWithFormulaOnRandomSeeds) {
  const CrossingCalibration cal = calibrate_crossing(reference_seed());
  Rng rng(12);
  SeedOptions opt;
  opt.resonance_horizon = 20;
  for (int k = 0; k < 30; ++k) {
    const IndexSeed s = random_seed(rng, opt);
    for (const OracleRecord& r : cross_check(s, "s", 20, cal))
      EXPECT_TRUE(r.agree) << to_json(s).dump() << " " << to_json(r).dump();
  }
}

TEST(CrossingOracle, DetectsAShiftedIndex) {
  // the oracle sees the path, so a seed whose i1 is off by 2 must disagree with its path's index
  const IndexSeed s = reference_seed();
  const std::vector<long long> series = crossing_index_series(build_path(s, 64, 3), {});
  IndexSeed shifted = s;
  shifted.i1 += 2;
  for (long long m = 1; m <= 3; ++m) EXPECT_NE(series[m - 1], iterate_index(shifted, m));
}

TEST(CrossingOracle, DegenerateRationalEndpoints) {
  // R(2π/3): γ³ ends at the identity; the index there still comes out integral
  IndexSeed s;
  s.n = 2;
  s.i1 = 0;
  s.counts.p_minus = 1;
  s.counts.r = 1;
  s.counts.theta = {Angle::rational(1, 3)};
  const std::vector<long long> series = crossing_index_series(build_path(s, 64, 9), {});
  for (long long m = 1; m <= 9; ++m) EXPECT_EQ(series[m - 1], iterate_index(s, m)) << m;
}

TEST(MeanIndexLimit, Examples) {
  const IndexSeed ref = reference_seed();
  EXPECT_LE(std::fabs(mean_index_limit(ref, 100000) - mean_index(ref)), 10.0 / 100000);
  IndexSeed s;
  s.n = 4;
  s.i1 = -1;
  s.counts.p_minus = 1;
  s.counts.s = 3;
  // linear sequence i(γ,m) = m·(i1 + 1) - 1: the estimate is exact up to 1/m
  EXPECT_NEAR(mean_index_limit(s, 1000), -1.0 / 1000, 1e-15);
  EXPECT_THROW(mean_index_limit(s, 10), DomainError);
}
