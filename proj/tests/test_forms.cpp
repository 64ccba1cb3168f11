#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sympidx/errors.hpp"
#include "sympidx/forms.hpp"
#include "sympidx/random.hpp"

using namespace sympidx;

namespace {

double sym_defect(const Matrix& m) {
  const Matrix j = standard_j(static_cast<int>(m.rows() / 2));
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Blocks, AllBasicBlocksAreSymplectic) {
  const std::vector<BasicBlock> blocks = {
      shear(1, 1), shear(1, 0), shear(1, -1), shear(-1, 1), shear(-1, 0), shear(-1, -1),
      hyperbolic(2), hyperbolic(-2), hyperbolic(0.3), rotation(Angle::rational(1, 3)),
      rotation(Angle::algebraic("2*pi*(sqrt(2)-1)")),
      jordan_rotation(Angle::rational(1, 5), Triviality::trivial),
      jordan_rotation(Angle::rational(1, 5), Triviality::nontrivial),
      jordan_rotation(Angle::rational(4, 5), Triviality::trivial)};
  for (const BasicBlock& b : blocks) {
    const Matrix m = realize(b);
    EXPECT_LT(sym_defect(m), 1e-12) << describe(b);
    EXPECT_NEAR(m.determinant(), 1.0, 1e-12) << describe(b);
  }
}

TEST(Blocks, RejectInvalidParameters) {
  EXPECT_THROW(shear(2, 1), DomainError);
  EXPECT_THROW(hyperbolic(1), DomainError);
  EXPECT_THROW(hyperbolic(-1), DomainError);
  EXPECT_THROW(hyperbolic(0), DomainError);
  Eigen::Matrix2d b;
  b << 1, 2, 3, 4;  // RᵀB not symmetric for θ = 2π/3
  EXPECT_THROW(jordan_rotation(Angle::rational(1, 3), b, Triviality::trivial), DomainError);
}

TEST(Blocks, JordanRotationTrivialityFollowsSign) {
  // (b2 - b3) sin θ > 0 is trivial; B = κR(θ) gives -2κ sin²θ
  const Angle th = Angle::rational(1, 5);
  const Eigen::Matrix2d r = rotation_matrix(th.radians());
  EXPECT_NO_THROW(jordan_rotation(th, Eigen::Matrix2d(-r), Triviality::trivial));
  EXPECT_NO_THROW(jordan_rotation(th, Eigen::Matrix2d(r), Triviality::nontrivial));
  EXPECT_THROW(jordan_rotation(th, Eigen::Matrix2d(r), Triviality::trivial), DomainError);
  // a non-default symplectic B: B = R·S with S symmetric
  Eigen::Matrix2d s;
  s << 0.5, 0.7, 0.7, -0.2;
  const Eigen::Matrix2d bb = r * s;
  const double sign = (bb(0, 1) - bb(1, 0)) * std::sin(th.radians());
  const Triviality t = sign > 0 ? Triviality::trivial : Triviality::nontrivial;
  const Matrix m = realize(jordan_rotation(th, bb, t));
  EXPECT_LT(sym_defect(m), 1e-12);
}

TEST(DiamondSum, InterleavesCoordinates) {
  Matrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 7;
  b << 5, 6, 7, 8;
  const Matrix d = diamond_sum(a, b);
  Matrix expect(4, 4);
  expect << 1, 0, 2, 0,  //
      0, 5, 0, 6,        //
      3, 0, 7, 0,        //
      0, 7, 0, 8;
  EXPECT_EQ(d, expect);
}

TEST(DiamondSum, PreservesSymplecticityAndIsAssociative) {
  Rng rng(7);
  const Matrix a = random_symplectic(rng, 1), b = random_symplectic(rng, 2), c = random_symplectic(rng, 1);
  const Matrix l = diamond_sum(diamond_sum(a, b), c);
  const Matrix r = diamond_sum(a, diamond_sum(b, c));
  EXPECT_LT((l - r).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(sym_defect(l) / l.squaredNorm(), 1e-12);
}

TEST(SymplecticMatrix, ChecksDefinition) {
  Matrix m = Matrix::Identity(4, 4);
  EXPECT_NO_THROW(SymplecticMatrix(m, 1e-9));
  m(0, 0) = 2;
  EXPECT_THROW(SymplecticMatrix(m, 1e-9), DomainError);
  EXPECT_THROW(SymplecticMatrix(Matrix::Identity(3, 3), 1e-9), DimensionError);
}

TEST(Seeds, BudgetAndListLengths) {
  IndexSeed s;
  s.n = 3;
  s.i1 = 0;
  s.counts.p_minus = 1;
  s.counts.r = 2;
  s.counts.theta = {Angle::rational(1, 3)};
  EXPECT_THROW(s.check(), InconsistencyError);
  s.counts.theta.push_back(Angle::rational(1, 4));
  EXPECT_NO_THROW(s.check());
  s.n = 4;
  EXPECT_THROW(s.check(), InconsistencyError);
  s.n = 3;
  s.counts.hyperbolic_tail = HyperbolicTail::one_negative;
  EXPECT_THROW(s.check(), InconsistencyError);
}

TEST(Seeds, RealizeSeedIsSymplecticWithExpectedTrace) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const IndexSeed s = random_seed(rng, SeedOptions{});
    const Matrix m = realize_seed(s);
    ASSERT_EQ(m.rows(), 2 * s.n);
    EXPECT_LT(sym_defect(m), 1e-9);
    // trace = 2(p + ...) − 2q + Σ 2cos θ + 4Σ cos α + 4Σ cos β + Σ(λ + 1/λ)
    const NormalFormCounts& c = s.counts;
    double tr = 2.0 * (c.p_minus + c.p_zero + c.p_plus) - 2.0 * (c.q_minus + c.q_zero + c.q_plus);
    for (const Angle& a : c.theta) tr += 2 * std::cos(a.radians());
    for (const Angle& a : c.alpha) tr += 4 * std::cos(a.radians());
    for (const Angle& a : c.beta) tr += 4 * std::cos(a.radians());
    for (int j = 0; j < c.s; ++j) {
      const bool neg = j == 0 && c.hyperbolic_tail == HyperbolicTail::one_negative;
      tr += neg ? -2.5 : 2.5;
    }
    EXPECT_NEAR(m.trace(), tr, 1e-9);
  }
}
