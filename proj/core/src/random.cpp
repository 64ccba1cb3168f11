#include "sympidx/random.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "sympidx/index.hpp"
#include "sympidx/linalg.hpp"
#include "sympidx/r8.hpp"

namespace sympidx {

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

long long uniform_int(Rng& rng, long long lo, long long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(rng() % span);
}

namespace {

bool far_from(double x, const std::vector<double>& taken, double gap) {
  auto circ = [](double a, double b) {
    double d = std::fabs(a - b);
    return std::min(d, 1.0 - d);
  };
  for (double t : {0.0, 0.5})
    if (circ(x, t) < gap) return false;
  for (double t : taken)
    if (circ(x, t) < gap || circ(x, 1.0 - t) < gap) return false;
  return true;
}

// distance from e^{iθ} to the nearest m-th root of unity, for every m <= horizon
bool resonance_free(const Angle& a, int horizon, double separation) {
  if (a.kind() == Angle::Kind::rational) return true;
  for (int m = 1; m <= horizon; ++m) {
    const double mx = m * a.turn();
    if (2 * std::numbers::pi * std::fabs(mx - std::round(mx)) / m < separation) return false;
  }
  return true;
}

Angle draw_angle(Rng& rng, const SeedOptions& opt, std::vector<double>& taken) {
  std::vector<int> kinds;
  if (opt.rational_angles) kinds.push_back(0);
  if (opt.algebraic_angles) kinds.push_back(1);
  if (opt.float_angles) kinds.push_back(2);
  if (kinds.empty()) kinds.push_back(1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const int kind = kinds[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long long>(kinds.size()) - 1))];
    Angle a = Angle::rational(1, 3);
    if (kind == 0) {
      const long long q = uniform_int(rng, 3, 12);
      const long long p = uniform_int(rng, 1, q - 1);
      if (std::gcd(p, q) != 1 || 2 * p == q) continue;
      a = Angle::rational(p, q);
    } else if (kind == 1) {
      a = algebraic_angles(rng(), 1).front();
    } else {
      a = Angle::floating(2 * std::numbers::pi * (0.01 + 0.98 * uniform01(rng)));
    }
    if (!far_from(a.turn(), taken, opt.angle_gap) || !resonance_free(a, opt.resonance_horizon, opt.resonance_separation)) continue;
    taken.push_back(a.turn());
    return a;
  }
  throw std::runtime_error("random_seed: could not place an angle; reduce angle_gap");
}

}  // namespace

IndexSeed random_seed(Rng& rng, const SeedOptions& opt) {
  IndexSeed s;
  s.n = static_cast<int>(uniform_int(rng, opt.n_min, opt.n_max));
  NormalFormCounts& c = s.counts;
  int left = s.n;
  if (opt.characteristic) {
    c.p_minus = 1;
    --left;
  }
  std::vector<double> taken;
  // kinds: 0 p-, 1 p0, 2 p+, 3 q-, 4 q0, 5 q+, 6 R, 7 N2 nontrivial, 8 N2 trivial, 9 D
  while (left > 0) {
    const int k = static_cast<int>(uniform_int(rng, 0, 9));
    if (opt.characteristic && k <= 2) continue;
    const int size = (k == 7 || k == 8) ? 2 : 1;
    if (size > left) continue;
    left -= size;
    switch (k) {
      case 0: ++c.p_minus; break;
      case 1: ++c.p_zero; break;
      case 2: ++c.p_plus; break;
      case 3: ++c.q_minus; break;
      case 4: ++c.q_zero; break;
      case 5: ++c.q_plus; break;
      case 6: c.theta.push_back(draw_angle(rng, opt, taken)); break;
      case 7: c.alpha.push_back(draw_angle(rng, opt, taken)); break;
      case 8: c.beta.push_back(draw_angle(rng, opt, taken)); break;
      default: ++c.s;
    }
  }
  c.r = static_cast<int>(c.theta.size());
  c.r_star = static_cast<int>(c.alpha.size());
  c.r_zero = static_cast<int>(c.beta.size());
  if (c.s > 0 && (rng() & 1)) c.hyperbolic_tail = HyperbolicTail::one_negative;
  const long long parity = endpoint_parity(s) == Parity::odd ? 1 : 0;
  s.i1 = parity + 2 * uniform_int(rng, -opt.max_winding, opt.max_winding);
  return s;
}

Matrix random_symplectic(Rng& rng, int n, double cond_max) {
  if (n < 1 || !(cond_max >= 1)) throw std::invalid_argument("random_symplectic needs n >= 1 and cond_max >= 1");
  const int dim = 2 * n;
  // Box-Muller on raw engine output keeps the stream portable
  auto gauss = [&] {
    const double u = 1.0 - uniform01(rng), v = uniform01(rng);
    return std::sqrt(-2 * std::log(u)) * std::cos(2 * std::numbers::pi * v);
  };
  // U(n) ⊂ Sp(2n) ∩ O(2n): X + iY unitary gives [[X, -Y], [Y, X]]
  auto orthosymplectic = [&] {
    CMatrix z(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) z(i, j) = {gauss(), gauss()};
    const CMatrix u = Eigen::HouseholderQR<CMatrix>(z).householderQ();
    Matrix g(dim, dim);
    g.topLeftCorner(n, n) = u.real();
    g.topRightCorner(n, n) = -u.imag();
    g.bottomLeftCorner(n, n) = u.imag();
    g.bottomRightCorner(n, n) = u.real();
    return g;
  };
  // symplectic SVD P = U diag(Σ, Σ⁻¹) V with cond(P) = σ_max², drawn log-uniform in [1, cond_max]
  const double log_sigma_max = 0.5 * std::log(cond_max) * uniform01(rng);
  Matrix d = Matrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    const double ls = i == 0 ? log_sigma_max : log_sigma_max * uniform01(rng);
    d(i, i) = std::exp(ls);
    d(n + i, n + i) = std::exp(-ls);
  }
  return orthosymplectic() * d * orthosymplectic();
}

}  // namespace sympidx
