#include "sympidx/forms.hpp"

#include <cmath>

#include "sympidx/decompose.hpp"
#include "sympidx/errors.hpp"
#include "sympidx/tolerances.hpp"

namespace sympidx {

Matrix standard_j(int n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return j;
}

bool is_symplectic(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) return false;
  const Matrix j = standard_j(static_cast<int>(m.rows() / 2));
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff() <= tol;
}

SymplecticMatrix::SymplecticMatrix(Matrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() % 2 != 0 || m_.rows() == 0)
    throw DimensionError("symplectic matrix must be square of even size, got " +
                         std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  if (!is_symplectic(m_, tol)) throw DomainError("matrix is not symplectic within tolerance");
  // det M = 1 follows, but a cheap independent check catches gross input errors
  if (std::fabs(m_.determinant() - 1.0) > std::max(1e-6, tol) * std::max(1.0, m_.norm()))
    throw DomainError("symplectic matrix with det != 1");
}

Matrix diamond_sum(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() % 2 || b.rows() % 2)
    throw DimensionError("diamond_sum needs even-dimensional square matrices");
  const Eigen::Index i = a.rows() / 2, j = b.rows() / 2, k = i + j;
  Matrix m = Matrix::Zero(2 * k, 2 * k);
  m.block(0, 0, i, i) = a.block(0, 0, i, i);
  m.block(0, k, i, i) = a.block(0, i, i, i);
  m.block(k, 0, i, i) = a.block(i, 0, i, i);
  m.block(k, k, i, i) = a.block(i, i, i, i);
  m.block(i, i, j, j) = b.block(0, 0, j, j);
  m.block(i, k + i, j, j) = b.block(0, j, j, j);
  m.block(k + i, i, j, j) = b.block(j, 0, j, j);
  m.block(k + i, k + i, j, j) = b.block(j, j, j, j);
  return m;
}

Eigen::Matrix2d rotation_matrix(double t) {
  Eigen::Matrix2d r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

BasicBlock shear(double lambda, double b) {
  if (lambda != 1.0 && lambda != -1.0) throw DomainError("N1 needs lambda = +1 or -1");
  if (!std::isfinite(b)) throw DomainError("N1 entry b is not finite");
  return ShearBlock{lambda, b};
}

BasicBlock hyperbolic(double lambda) {
  if (!std::isfinite(lambda) || lambda == 0.0 || std::fabs(lambda) == 1.0)
    throw DomainError("D(lambda) needs |lambda| not in {0, 1}");
  return HyperbolicBlock{lambda};
}

BasicBlock rotation(const Angle& theta) {
  return RotationBlock{theta};
}

BasicBlock jordan_rotation(const Angle& theta, const Eigen::Matrix2d& B, Triviality t) {
  if (triviality_sign(B, theta) != t)
    throw DomainError("N2 triviality flag disagrees with the sign of (b2 - b3) sin(theta)");
  const Eigen::Matrix2d rb = rotation_matrix(theta.radians()).transpose() * B;
  if (std::fabs(rb(0, 1) - rb(1, 0)) > 1e-12 * std::max(1.0, B.norm()))
    throw DomainError("N2 with this B is not symplectic (R^T B must be symmetric)");
  return JordanRotationBlock{theta, B, t};
}

BasicBlock jordan_rotation(const Angle& theta, Triviality t) {
  const double kappa = t == Triviality::trivial ? -1.0 : 1.0;
  return jordan_rotation(theta, kappa * rotation_matrix(theta.radians()), t);
}

namespace {

Matrix block_matrix(const BasicBlock& block) {
  return std::visit(
      [](const auto& b) -> Matrix {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ShearBlock>) {
          Matrix m(2, 2);
          m << b.lambda, b.b, 0, b.lambda;
          return m;
        } else if constexpr (std::is_same_v<T, HyperbolicBlock>) {
          Matrix m = Matrix::Zero(2, 2);
          m(0, 0) = b.lambda;
          m(1, 1) = 1.0 / b.lambda;
          return m;
        } else if constexpr (std::is_same_v<T, RotationBlock>) {
          return rotation_matrix(b.theta.radians());
        } else {
          Matrix m = Matrix::Zero(4, 4);
          const Eigen::Matrix2d r = rotation_matrix(b.theta.radians());
          m.topLeftCorner(2, 2) = r;
          m.topRightCorner(2, 2) = b.B;
          m.bottomRightCorner(2, 2) = r;
          return m;
        }
      },
      block);
}

}  // namespace

SymplecticMatrix realize(const BasicBlock& block) {
  if (const auto* h = std::get_if<HyperbolicBlock>(&block)) hyperbolic(h->lambda);
  if (const auto* s = std::get_if<ShearBlock>(&block)) shear(s->lambda, s->b);
  return SymplecticMatrix(block_matrix(block), default_tolerances().eps_sym_blocks);
}

std::string describe(const BasicBlock& block) {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        auto num = [](double v) {
          std::string s = std::to_string(v);
          s.erase(s.find_last_not_of('0') + 1);
          if (s.back() == '.') s.pop_back();
          return s;
        };
        if constexpr (std::is_same_v<T, ShearBlock>) {
          return "N1(" + num(b.lambda) + "," + num(b.b) + ")";
        } else if constexpr (std::is_same_v<T, HyperbolicBlock>) {
          return "D(" + num(b.lambda) + ")";
        } else if constexpr (std::is_same_v<T, RotationBlock>) {
          return "R(" + b.theta.to_string() + ")";
        } else {
          return std::string("N2(") + b.theta.to_string() + "," +
                 (b.triviality == Triviality::trivial ? "trivial" : "nontrivial") + ")";
        }
      },
      block);
}

void NormalFormCounts::check() const {
  for (int v : {p_minus, p_zero, p_plus, q_minus, q_zero, q_plus, r, r_star, r_zero, s})
    if (v < 0) throw InconsistencyError("normal-form counts must be non-negative");
  if (static_cast<int>(theta.size()) != r)
    throw InconsistencyError("theta list has " + std::to_string(theta.size()) + " entries, r = " +
                             std::to_string(r));
  if (static_cast<int>(alpha.size()) != r_star)
    throw InconsistencyError("alpha list has " + std::to_string(alpha.size()) +
                             " entries, r_star = " + std::to_string(r_star));
  if (static_cast<int>(beta.size()) != r_zero)
    throw InconsistencyError("beta list has " + std::to_string(beta.size()) +
                             " entries, r_zero = " + std::to_string(r_zero));
  if (s == 0 && hyperbolic_tail == HyperbolicTail::one_negative)
    throw InconsistencyError("the D(-2) tail needs s >= 1");
}

void IndexSeed::check() const {
  if (n < 1) throw InconsistencyError("n must be positive");
  counts.check();
  if (counts.half_dimension() != n)
    throw InconsistencyError("block budget sums to " + std::to_string(counts.half_dimension()) +
                             ", n = " + std::to_string(n));
}

std::vector<BasicBlock> seed_blocks(const IndexSeed& seed) {
  seed.check();
  const NormalFormCounts& c = seed.counts;
  std::vector<BasicBlock> out;
  auto rep = [&](int k, const BasicBlock& b) {
    for (int i = 0; i < k; ++i) out.push_back(b);
  };
  rep(c.p_minus, ShearBlock{1, 1});
  rep(c.p_zero, ShearBlock{1, 0});
  rep(c.p_plus, ShearBlock{1, -1});
  rep(c.q_minus, ShearBlock{-1, 1});
  rep(c.q_zero, ShearBlock{-1, 0});
  rep(c.q_plus, ShearBlock{-1, -1});
  for (const Angle& t : c.theta) out.push_back(RotationBlock{t});
  for (const Angle& a : c.alpha) out.push_back(jordan_rotation(a, Triviality::nontrivial));
  for (const Angle& b : c.beta) out.push_back(jordan_rotation(b, Triviality::trivial));
  if (c.s > 0) {
    int pos = c.s;
    if (c.hyperbolic_tail == HyperbolicTail::one_negative) {
      out.push_back(HyperbolicBlock{-2});
      --pos;
    }
    rep(pos, HyperbolicBlock{2});
  }
  return out;
}

SymplecticMatrix realize_seed(const IndexSeed& seed) {
  Matrix m(0, 0);
  for (const BasicBlock& b : seed_blocks(seed)) {
    Matrix bm = block_matrix(b);
    m = m.size() == 0 ? bm : diamond_sum(m, bm);
  }
  return SymplecticMatrix(std::move(m), default_tolerances().eps_sym_blocks);
}

}  // namespace sympidx
