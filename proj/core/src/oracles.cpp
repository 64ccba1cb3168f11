#include "sympidx/oracles.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "sympidx/errors.hpp"
#include "sympidx/index.hpp"
#include "sympidx/linalg.hpp"

namespace sympidx {

using cd = std::complex<double>;
constexpr double kTwoPi = 2 * std::numbers::pi;

NullityResult nullity_oracle(const Matrix& m, long long power, double rel_tol) {
  if (power < 1) throw DomainError("power must be positive");
  if (m.rows() != m.cols() || m.rows() % 2) throw DimensionError("square even matrix expected");
  const Eigen::Index dim = m.rows();
  const double scale = spectral_norm(m);
  const Eigen::VectorXcd ev = Eigen::EigenSolver<Matrix>(m, false).eigenvalues();
  const CMatrix mc = m.cast<cd>();
  NullityResult r;
  for (long long k = 0; k < power; ++k) {
    const cd w = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(power));
    // roots far from every eigenvalue cannot carry a kernel
    double dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ev.size(); ++i) dist = std::min(dist, std::abs(ev[i] - w));
    if (dist > 1e-3) continue;
    const KernelInfo ki = kernel_dimension(CMatrix(mc - w * CMatrix::Identity(dim, dim)), rel_tol, scale);
    r.nullity += ki.dimension;
    r.borderline = r.borderline || ki.borderline;
  }
  return r;
}

SampledPath::SampledPath(int n, int periods, int samples_per_period,
                         std::function<Matrix(double)> prime, std::string generator)
    : n_(n), periods_(periods), prime_(std::move(prime)), generator_(std::move(generator)) {
  if (periods < 1 || samples_per_period < 1) throw DomainError("periods and samples must be positive");
  const Matrix end = prime_(1.0);
  powers_.push_back(Matrix::Identity(2 * n, 2 * n));
  for (int j = 1; j <= periods; ++j) powers_.push_back(powers_.back() * end);
  const int total = periods * samples_per_period;
  for (int k = 0; k <= total; ++k) {
    const double t = static_cast<double>(k) / samples_per_period;
    times_.push_back(t);
    matrices_.push_back(at(t));
  }
}

Matrix SampledPath::at(double t) const {
  if (t < 0 || t > periods_) throw DomainError("time outside the sampled path");
  int j = static_cast<int>(std::floor(t));
  if (j >= periods_) j = periods_ - 1;
  return prime_(t - j) * powers_[j];
}

const Matrix& SampledPath::endpoint() const {
  return powers_[1];
}

namespace {

Matrix embed_rotation_x1y1(int dim, double angle) {
  // rotation in the plane of the block's first position and momentum
  Matrix x = Matrix::Identity(dim, dim);
  const int h = dim / 2;
  x(0, 0) = std::cos(angle);
  x(0, h) = -std::sin(angle);
  x(h, 0) = std::sin(angle);
  x(h, h) = std::cos(angle);
  return x;
}

struct BlockPath {
  int base = 0;
  std::function<Matrix(double, long long)> eval;  // (t, winding)
};

Matrix two(const Eigen::Matrix2d& m) {
  return Matrix(m);
}

BlockPath block_path(const BasicBlock& block) {
  return std::visit(
      [](const auto& b) -> BlockPath {
        using T = std::decay_t<decltype(b)>;
        constexpr double pi = std::numbers::pi;
        if constexpr (std::is_same_v<T, ShearBlock>) {
          const double lam = b.lambda, bb = b.b;
          if (lam > 0) {
            return {bb < 0 ? 2 : 1, [bb](double t, long long k) {
                      Eigen::Matrix2d sh;
                      sh << 1, bb * t, 0, 1;
                      return two(rotation_matrix(kTwoPi * (1 + k) * t) * sh);
                    }};
          }
          return {1, [bb](double t, long long k) {
                    Eigen::Matrix2d sh;
                    sh << 1, -bb * t, 0, 1;
                    return two(rotation_matrix(pi * (1 + 2 * k) * t) * sh);
                  }};
        } else if constexpr (std::is_same_v<T, HyperbolicBlock>) {
          const double lam = b.lambda;
          const double a = std::fabs(lam);
          const bool neg = lam < 0;
          return {neg ? 1 : 0, [a, neg](double t, long long k) {
                    Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
                    d(0, 0) = std::pow(a, t);
                    d(1, 1) = std::pow(a, -t);
                    const double turn = neg ? pi * (1 + 2 * k) : kTwoPi * k;
                    return two(rotation_matrix(turn * t) * d);
                  }};
        } else if constexpr (std::is_same_v<T, RotationBlock>) {
          const double th = b.theta.radians();
          return {1, [th](double t, long long k) {
                    return two(rotation_matrix((th + kTwoPi * k) * t));
                  }};
        } else {
          const double th = b.theta.radians();
          const double kappa = b.triviality == Triviality::trivial ? -1.0 : 1.0;
          return {0, [th, kappa](double t, long long k) {
                    Matrix m = Matrix::Zero(4, 4);
                    const Eigen::Matrix2d r = rotation_matrix(th * t);
                    m.topLeftCorner(2, 2) = r;
                    m.topRightCorner(2, 2) = kappa * t * r;
                    m.bottomRightCorner(2, 2) = r;
                    if (k != 0) m = embed_rotation_x1y1(4, kTwoPi * k * t) * m;
                    return m;
                  }};
        }
      },
      block);
}

}  // namespace

SampledPath build_path(const IndexSeed& seed, int samples_per_period, int periods) {
  seed.check();
  const std::vector<BasicBlock> blocks = seed_blocks(seed);
  for (const BasicBlock& b : blocks)
    if (const auto* jb = std::get_if<JordanRotationBlock>(&b)) {
      const double kappa = jb->triviality == Triviality::trivial ? -1.0 : 1.0;
      if ((jb->B - kappa * rotation_matrix(jb->theta.radians())).cwiseAbs().maxCoeff() > 1e-12)
        throw DomainError("build_path supports N2 blocks with B = +-R(theta) only");
    }
  std::vector<BlockPath> paths;
  long long base = 0;
  for (const BasicBlock& b : blocks) {
    paths.push_back(block_path(b));
    base += paths.back().base;
  }
  const long long diff = seed.i1 - base;
  if (diff % 2 != 0)
    throw ParityError("i(gamma,1) = " + std::to_string(seed.i1) +
                      " has the wrong parity for this endpoint (needs " +
                      to_string(endpoint_parity(seed)) + ")");
  const long long winding = diff / 2;

  std::string gen;
  for (std::size_t i = 0; i < blocks.size(); ++i) gen += (i ? " <> " : "") + describe(blocks[i]);
  gen += "; winding " + std::to_string(winding) + " on block 1";

  auto prime = [paths, winding](double t) {
    Matrix m(0, 0);
    for (std::size_t i = 0; i < paths.size(); ++i) {
      Matrix b = paths[i].eval(t, i == 0 ? winding : 0);
      m = m.size() == 0 ? b : diamond_sum(m, b);
    }
    return m;
  };
  return SampledPath(seed.n, periods, samples_per_period, prime, gen);
}

namespace {

// Souriau map of the graph {(x, Mx)} ⊂ (R^2n, -ω) × (R^2n, ω)
CMatrix souriau(const Matrix& m) {
  const Eigen::Index dim = m.rows(), n = dim / 2;
  Matrix g(2 * dim, dim);
  g.topRows(dim) = Matrix::Identity(dim, dim);
  g.bottomRows(dim) = m;
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix z = qr.householderQ() * Matrix::Identity(2 * dim, dim);
  CMatrix u(dim, dim);
  const cd i(0, 1);
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index r = 0; r < n; ++r) {
      u(r, k) = z(r, k) - i * z(n + r, k);
      u(n + r, k) = z(dim + r, k) + i * z(dim + n + r, k);
    }
  }
  return u * u.transpose();
}

class PhaseTracker {
 public:
  PhaseTracker(const SampledPath& path, const CrossingOptions& opt) : path_(path), opt_(opt) {
    const int dim = 2 * path.n();
    diag_conj_ = souriau(Matrix::Identity(dim, dim)).conjugate();
  }

  CMatrix w(const Matrix& m) const { return souriau(m) * diag_conj_; }
  cd det_at(double t) const { return w(path_.at(t)).determinant(); }

  // accumulated arg det W over [t0, t1]
  double phase(double t0, double t1, cd d0, cd d1, int depth) const {
    const double tm = 0.5 * (t0 + t1);
    const cd dm = det_at(tm);
    const double full = std::arg(d1 / d0);
    const double a = std::arg(dm / d0), b = std::arg(d1 / dm);
    if (std::fabs(full) < opt_.max_step_phase && std::fabs(a) < opt_.max_step_phase &&
        std::fabs(b) < opt_.max_step_phase && std::fabs(full - (a + b)) < 1e-9)
      return a + b;
    if (depth <= 0)
      throw DegeneracyError("det-phase not resolved at the subdivision cap near t=" +
                            std::to_string(tm));
    return phase(t0, tm, d0, dm, depth - 1) + phase(tm, t1, dm, d1, depth - 1);
  }

  // Σ ({φ/2π} - 1/2) over eigenphases of W away from 0, and the count at 0
  std::pair<double, int> endpoint_terms(const Matrix& m) const {
    Eigen::ComplexEigenSolver<CMatrix> es(w(m), false);
    double sum = 0;
    int zeros = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const double ph = std::arg(es.eigenvalues()[k]);
      if (std::fabs(ph) <= opt_.zero_phase) {
        ++zeros;
        continue;
      }
      double f = ph / kTwoPi;
      f -= std::floor(f);
      sum += f - 0.5;
    }
    return {sum, zeros};
  }

 private:
  const SampledPath& path_;
  const CrossingOptions& opt_;
  CMatrix diag_conj_;
};

}  // namespace

std::vector<long long> crossing_index_series(const SampledPath& path, const CrossingCalibration& cal,
                                             const CrossingOptions& opt) {
  PhaseTracker tr(path, opt);
  const auto& ts = path.times();
  const auto& ms = path.matrices();
  const int per_period = static_cast<int>((ts.size() - 1) / path.periods());
  int depth = opt.max_subdivision_log2;
  for (int s = per_period; s > 1; s >>= 1) --depth;
  depth = std::max(depth, 0);

  const auto [s0, z0] = tr.endpoint_terms(ms.front());
  std::vector<long long> out;
  double total = 0;
  cd prev = tr.w(ms.front()).determinant();
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const cd cur = tr.w(ms[k]).determinant();
    total += tr.phase(ts[k - 1], ts[k], prev, cur, depth);
    prev = cur;
    if (k % per_period != 0) continue;
    const auto [s1, z1] = tr.endpoint_terms(ms[k]);
    const double rs = total / kTwoPi - s1 + s0;
    const double idx = rs - 0.5 * z1;
    const double rounded = std::round(idx);
    if (std::fabs(idx - rounded) > 1e-4)
      throw DegeneracyError("crossing count " + std::to_string(idx) + " at m=" +
                            std::to_string(k / per_period) + " is not an integer");
    out.push_back(static_cast<long long>(rounded) + cal.offset);
  }
  return out;
}

long long crossing_index(const SampledPath& path, const CrossingCalibration& cal,
                         const CrossingOptions& opt) {
  return crossing_index_series(path, cal, opt).back();
}

IndexSeed reference_seed() {
  IndexSeed s;
  s.n = 4;
  s.i1 = -2;
  s.counts.p_minus = 1;
  s.counts.r = 3;
  s.counts.theta = {Angle::algebraic("2*pi*(sqrt(2)-1)"), Angle::algebraic("2*pi*(sqrt(3)-1)"),
                    Angle::algebraic("2*pi*(4-sqrt(2)-sqrt(3))")};
  return s;
}

CrossingCalibration calibrate_crossing(const IndexSeed& reference, const CrossingOptions& opt) {
  const SampledPath p = build_path(reference, 64, 1);
  const long long raw = crossing_index(p, CrossingCalibration{}, opt);
  CrossingCalibration c;
  c.offset = iterate_index(reference, 1) - raw;
  c.reference = p.generator();
  return c;
}

double mean_index_limit(const IndexSeed& seed, long long m_max) {
  if (m_max < 1000) throw DomainError("mean_index_limit needs m_max >= 1000");
  return static_cast<double>(iterate_index(seed, m_max)) / static_cast<double>(m_max);
}

std::vector<OracleRecord> cross_check(const IndexSeed& seed, const std::string& seed_id, int m_max,
                                      const CrossingCalibration& cal, int samples_per_period) {
  std::vector<OracleRecord> out;
  const Matrix m = realize_seed(seed);
  for (int k = 1; k <= m_max; ++k) {
    OracleRecord r{seed_id, "nullity", k, iterate_nullity(seed, k), nullity_oracle(m, k).nullity, false};
    r.agree = r.formula_value == r.oracle_value;
    out.push_back(r);
  }
  const SampledPath path = build_path(seed, samples_per_period, m_max);
  const std::vector<long long> series = crossing_index_series(path, cal);
  for (int k = 1; k <= m_max; ++k) {
    OracleRecord r{seed_id, "index", k, iterate_index(seed, k), series[k - 1], false};
    r.agree = r.formula_value == r.oracle_value;
    out.push_back(r);
  }
  return out;
}

}  // namespace sympidx
