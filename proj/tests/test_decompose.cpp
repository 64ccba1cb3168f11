#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "sympidx/decompose.hpp"
#include "sympidx/errors.hpp"
#include "sympidx/io.hpp"
#include "sympidx/linalg.hpp"
#include "sympidx/oracles.hpp"
#include "sympidx/random.hpp"

using namespace sympidx;

namespace {

// N2 angles come back in (0, π); compare against the same canonical form
double canonical_n2(double turn) {
  return turn > 0.5 ? 1.0 - turn : turn;
}

void expect_same_counts(const NormalFormCounts& a, const NormalFormCounts& b, const std::string& ctx) {
  EXPECT_EQ(a.p_minus, b.p_minus) << ctx;
  EXPECT_EQ(a.p_zero, b.p_zero) << ctx;
  EXPECT_EQ(a.p_plus, b.p_plus) << ctx;
  EXPECT_EQ(a.q_minus, b.q_minus) << ctx;
  EXPECT_EQ(a.q_zero, b.q_zero) << ctx;
  EXPECT_EQ(a.q_plus, b.q_plus) << ctx;
  EXPECT_EQ(a.r, b.r) << ctx;
  EXPECT_EQ(a.r_star, b.r_star) << ctx;
  EXPECT_EQ(a.r_zero, b.r_zero) << ctx;
  EXPECT_EQ(a.s, b.s) << ctx;
  EXPECT_EQ(a.hyperbolic_tail, b.hyperbolic_tail) << ctx;
  auto turns = [](const std::vector<Angle>& v, bool n2) {
    std::vector<double> t;
    for (const Angle& x : v) t.push_back(n2 ? canonical_n2(x.turn()) : x.turn());
    std::sort(t.begin(), t.end());
    return t;
  };
  for (auto [x, y, n2] : {std::tuple{&a.theta, &b.theta, false}, std::tuple{&a.alpha, &b.alpha, true},
                          std::tuple{&a.beta, &b.beta, true}}) {
    const auto tx = turns(*x, n2), ty = turns(*y, n2);
    ASSERT_EQ(tx.size(), ty.size()) << ctx;
    for (std::size_t i = 0; i < tx.size(); ++i) EXPECT_NEAR(tx[i], ty[i], 1e-6 / (2 * std::numbers::pi)) << ctx;
  }
}

}  // namespace

TEST(ClassifySpectrum, BasicBlocks) {
  SpectralClassification d = classify_spectrum(realize(hyperbolic(2)), 1e-5);
  ASSERT_EQ(d.clusters.size(), 2u);
  for (const EigenCluster& c : d.clusters) EXPECT_EQ(c.location, Location::hyperbolic_real);
  EXPECT_NEAR(std::abs(d.clusters[0].value * d.clusters[1].value), 1.0, 1e-12);

  d = classify_spectrum(realize(rotation(Angle::rational(1, 5))), 1e-5);
  ASSERT_EQ(d.clusters.size(), 2u);
  for (const EigenCluster& c : d.clusters) {
    EXPECT_EQ(c.location, Location::elliptic);
    EXPECT_NEAR(std::abs(std::arg(c.value)), 2 * std::numbers::pi / 5, 1e-12);
  }
}

TEST(ClassifySpectrum, CharacteristicWithThreeRotations) {
  const SpectralClassification d = classify_spectrum(realize_seed(reference_seed()), 1e-5);
  EXPECT_EQ(d.multiplicity_at_one, 2);
  EXPECT_EQ(d.floquet_type, FloquetType::elliptic);
  EXPECT_TRUE(d.nondegenerate);
  int elliptic = 0;
  for (const EigenCluster& c : d.clusters)
    if (c.location == Location::elliptic) elliptic += c.multiplicity;
  EXPECT_EQ(elliptic, 6);
}

TEST(ClassifySpectrum, SpectralSymmetry) {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const IndexSeed s = random_seed(rng, SeedOptions{});
    const Matrix p = random_symplectic(rng, s.n);
    const Matrix m = p.inverse() * realize_seed(s).matrix() * p;
    const SpectralClassification d = classify_spectrum(m, 1e-5);
    auto has = [&](std::complex<double> z, int mult) {
      for (const EigenCluster& c : d.clusters)
        if (std::abs(c.value - z) < 1e-4 && c.multiplicity == mult) return true;
      return false;
    };
    for (const EigenCluster& c : d.clusters) {
      EXPECT_TRUE(has(std::conj(c.value), c.multiplicity));
      EXPECT_TRUE(has(1.0 / c.value, c.multiplicity));
    }
  }
}

TEST(Decompose, AllHyperbolicCharacteristic) {
  IndexSeed s;
  s.n = 4;
  s.i1 = -1;
  s.counts.p_minus = 1;
  s.counts.s = 3;
  const Decomposition d = extract_counts(realize_seed(s), 1e-5);
  EXPECT_EQ(d.counts.s, 3);
  EXPECT_EQ(d.counts.r + d.counts.s + 2 * d.counts.r_star + 2 * d.counts.r_zero, 3);
  EXPECT_EQ(d.spectrum.floquet_type, FloquetType::hyperbolic);
}

TEST(Decompose, IdentityIsNotACharacteristic) {
  EXPECT_THROW(extract_counts(Matrix::Identity(2, 2), 1e-5), NotACharacteristicError);
  // a plain rotation has no eigenvalue 1 at all
  EXPECT_THROW(extract_counts(realize(rotation(Angle::rational(1, 3))), 1e-5), NotACharacteristicError);
}

TEST(Decompose, NearCollisionIsAmbiguous) {
  IndexSeed s;
  s.n = 3;
  s.i1 = 0;
  s.counts.p_minus = 1;
  s.counts.r = 2;
  s.counts.theta = {Angle::floating(1.0), Angle::floating(1.0 + 1.5e-5)};
  try {
    decompose(realize_seed(s), DecomposeOptions{});
    FAIL() << "expected AmbiguityError";
  } catch (const AmbiguityError& e) {
    EXPECT_EQ(e.candidates().size(), 2u);
  }
}

TEST(Decompose, NonSymplecticInputRejected) {
  Matrix m = Matrix::Identity(4, 4);
  m(0, 1) = 0.5;
  EXPECT_THROW(decompose(m, DecomposeOptions{}), DomainError);
}

TEST(Decompose, RoundTripGeneralSeeds) {
  Rng rng(6);
  for (int k = 0; k < 200; ++k) {
    const IndexSeed s = random_seed(rng, SeedOptions{});
    const Matrix p = random_symplectic(rng, s.n);
    const Matrix m = p.inverse() * realize_seed(s).matrix() * p;
    const Decomposition d = decompose(m, DecomposeOptions{});
    EXPECT_EQ(d.n, s.n);
    expect_same_counts(s.counts, d.counts, to_json(s).dump());
    EXPECT_EQ(d.counts.half_dimension(), s.n);
  }
}

TEST(Decompose, RoundTripCharacteristicSeeds) {
  Rng rng(7);
  SeedOptions opt;
  opt.characteristic = true;
  for (int k = 0; k < 200; ++k) {
    const IndexSeed s = random_seed(rng, opt);
    const Matrix p = random_symplectic(rng, s.n);
    const Matrix m = p.inverse() * realize_seed(s).matrix() * p;
    const Decomposition d = extract_counts(m, 1e-5);
    expect_same_counts(s.counts, d.counts, to_json(s).dump());
  }
}

TEST(Decompose, NonDefaultJordanB) {
  // B = R·S, S symmetric, keeps the block symplectic but moves it off the default form
  const Angle th = Angle::rational(2, 7);
  const Eigen::Matrix2d r = rotation_matrix(th.radians());
  Eigen::Matrix2d sym;
  sym << 0.3, 1.1, 1.1, -0.6;
  const Eigen::Matrix2d b = r * sym;
  const Triviality t = triviality_sign(b, th);
  const Matrix blk = realize(jordan_rotation(th, b, t));
  const Matrix m = diamond_sum(realize(shear(1, 1)), blk);
  Rng rng(8);
  const Matrix p = random_symplectic(rng, 3);
  const Decomposition d = extract_counts(p.inverse() * m * p, 1e-5);
  EXPECT_EQ(d.counts.r_star + d.counts.r_zero, 1);
  EXPECT_EQ(t == Triviality::nontrivial ? d.counts.r_star : d.counts.r_zero, 1);
}

TEST(TrivialitySign, Rule) {
  const Angle th = Angle::rational(1, 6);  // π/3
  Eigen::Matrix2d b;
  b << 0, 1, 0, 0;  // b2 - b3 = 1
  EXPECT_EQ(triviality_sign(b, th), Triviality::trivial);
  b << 0, 0, 1, 0;  // b2 - b3 = -1
  EXPECT_EQ(triviality_sign(b, th), Triviality::nontrivial);
  b << 0, 1, 1, 0;
  EXPECT_THROW(triviality_sign(b, th), DomainError);
  // b2 = 1, b3 = 0 with the non-trivial flag is rejected
  EXPECT_THROW(jordan_rotation(th, (Eigen::Matrix2d() << 0, 1, 0, 0).finished(), Triviality::nontrivial),
               DomainError);
}
