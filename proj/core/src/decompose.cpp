#include "sympidx/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "sympidx/errors.hpp"
#include "sympidx/linalg.hpp"

namespace sympidx {

using cd = std::complex<double>;

std::string to_string(Location l) {
  switch (l) {
    case Location::one: return "one";
    case Location::minus_one: return "minus_one";
    case Location::elliptic: return "elliptic";
    case Location::hyperbolic_real: return "hyperbolic_real";
    case Location::hyperbolic_complex: return "hyperbolic_complex";
  }
  return "?";
}

std::string to_string(FloquetType f) {
  switch (f) {
    case FloquetType::hyperbolic: return "hyperbolic";
    case FloquetType::elliptic: return "elliptic";
    case FloquetType::mixed: return "mixed";
  }
  return "?";
}

Triviality triviality_sign(const Eigen::Matrix2d& B, const Angle& theta) {
  const double d = B(0, 1) - B(1, 0);
  if (d == 0.0) throw DomainError("N2 needs b2 != b3");
  // sin θ > 0 exactly when θ/2π < 1/2
  const bool upper = theta.is_exact() ? (theta.exact_turn() * mpq_class(2) - SurdSum(1)).sign() < 0
                                      : theta.turn() < 0.5;
  return (d > 0) == upper ? Triviality::trivial : Triviality::nontrivial;
}

namespace {

std::string fmt(cd v) {
  std::ostringstream os;
  os.precision(10);
  os << v.real() << (v.imag() < 0 ? "-" : "+") << std::fabs(v.imag()) << "i";
  return os.str();
}

struct RawCluster {
  std::vector<cd> members;
  cd mean;
};

std::vector<RawCluster> single_linkage(const Eigen::VectorXcd& ev, double tol) {
  const int k = static_cast<int>(ev.size());
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (std::abs(ev[i] - ev[j]) <= tol) parent[find(i)] = find(j);
  std::vector<RawCluster> out;
  std::vector<int> slot(k, -1);
  for (int i = 0; i < k; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].members.push_back(ev[i]);
  }
  for (auto& c : out) {
    cd s = 0;
    for (cd v : c.members) s += v;
    c.mean = s / static_cast<double>(c.members.size());
  }
  return out;
}

double min_distance(const RawCluster& a, const RawCluster& b) {
  double d = std::numeric_limits<double>::infinity();
  for (cd x : a.members)
    for (cd y : b.members) d = std::min(d, std::abs(x - y));
  return d;
}

int location_rank(Location l) {
  return static_cast<int>(l);
}

// is e^{2πix} a root of unity of order <= qmax, within tol on the circle?
// λ = e^{2πix} with |q·x - p| <= tol for some q <= qmax, i.e. λ^q within 2π·tol
// of 1.  A tolerance on the distance |λ - ω| instead would flag every angle:
// some q <= qmax always has |q·x - p| < 1/qmax.
bool near_root_of_unity(double x, int qmax, double tol) {
  for (int q = 1; q <= qmax; ++q) {
    const double qx = x * q;
    if (std::fabs(qx - std::round(qx)) <= tol) return true;
  }
  return false;
}

}  // namespace

SpectralClassification classify_spectrum(const Matrix& m, double tol) {
  DecomposeOptions opt;
  opt.cluster_tol = tol;
  return classify_spectrum(m, opt);
}

SpectralClassification classify_spectrum(const Matrix& m, const DecomposeOptions& opt) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
    throw DimensionError("classify_spectrum needs a square even-dimensional matrix");
  if (!is_symplectic(m, opt.sym_tol)) throw DomainError("matrix is not symplectic within tolerance");
  const double tol = opt.cluster_tol;
  Eigen::EigenSolver<Matrix> es(m, false);
  Eigen::VectorXcd lambda;
  if (es.info() == Eigen::Success) {
    lambda = es.eigenvalues();
  } else {
    // real QR can stall on defective spectra; complex Schur is the fallback
    Eigen::ComplexEigenSolver<CMatrix> ces(m.cast<std::complex<double>>(), false);
    if (ces.info() != Eigen::Success) throw AmbiguityError("eigenvalue solver did not converge", {});
    lambda = ces.eigenvalues();
  }
  std::vector<RawCluster> raw = single_linkage(lambda, tol);

  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t j = i + 1; j < raw.size(); ++j)
      if (min_distance(raw[i], raw[j]) <= 2 * tol)
        throw AmbiguityError(
            "eigenvalue clusters at " + fmt(raw[i].mean) + " and " + fmt(raw[j].mean) +
                " lie within twice the clustering radius",
            {"separate: " + fmt(raw[i].mean) + " (x" + std::to_string(raw[i].members.size()) +
                 "), " + fmt(raw[j].mean) + " (x" + std::to_string(raw[j].members.size()) + ")",
             "merged: " + fmt((raw[i].mean * double(raw[i].members.size()) +
                               raw[j].mean * double(raw[j].members.size())) /
                              double(raw[i].members.size() + raw[j].members.size())) +
                 " (x" + std::to_string(raw[i].members.size() + raw[j].members.size()) + ")"});

  SpectralClassification sc;
  for (const RawCluster& rc : raw) {
    EigenCluster c;
    c.multiplicity = static_cast<int>(rc.members.size());
    cd v = rc.mean;
    if (std::abs(v - 1.0) <= tol) {
      c.location = Location::one;
      v = 1.0;
    } else if (std::abs(v + 1.0) <= tol) {
      c.location = Location::minus_one;
      v = -1.0;
    } else if (std::fabs(std::abs(v) - 1.0) <= tol) {
      c.location = Location::elliptic;
      v /= std::abs(v);
    } else if (std::fabs(v.imag()) <= tol) {
      c.location = Location::hyperbolic_real;
      v = v.real();
    } else {
      c.location = Location::hyperbolic_complex;
    }
    c.value = v;
    sc.clusters.push_back(c);
  }

  // symplectic spectra are closed under conjugation and inversion
  auto partner = [&](cd w, int mult) {
    for (const EigenCluster& c : sc.clusters)
      if (std::abs(c.value - w) <= 2 * tol * std::max(1.0, std::abs(w)) && c.multiplicity == mult)
        return true;
    return false;
  };
  for (const EigenCluster& c : sc.clusters) {
    if (!partner(std::conj(c.value), c.multiplicity) || !partner(1.0 / c.value, c.multiplicity))
      throw AmbiguityError("spectrum is not closed under conjugation and inversion at " +
                               fmt(c.value),
                           {});
  }

  std::sort(sc.clusters.begin(), sc.clusters.end(), [](const EigenCluster& a, const EigenCluster& b) {
    if (a.location != b.location) return location_rank(a.location) < location_rank(b.location);
    const double aa = std::arg(a.value), ab = std::arg(b.value);
    if (aa != ab) return aa > ab;
    return std::abs(a.value) > std::abs(b.value);
  });

  int on_circle = 0, off_circle = 0;
  bool resonant = false;
  for (const EigenCluster& c : sc.clusters) {
    switch (c.location) {
      case Location::one: sc.multiplicity_at_one = c.multiplicity; break;
      case Location::minus_one:
        on_circle += c.multiplicity;
        resonant = true;
        break;
      case Location::elliptic:
        on_circle += c.multiplicity;
        if (near_root_of_unity(std::arg(c.value) / (2 * std::numbers::pi), opt.max_root_order, opt.resonance_tol))
          resonant = true;
        break;
      default: off_circle += c.multiplicity;
    }
  }
  on_circle += std::max(0, sc.multiplicity_at_one - 2);
  if (off_circle == 0) sc.floquet_type = FloquetType::elliptic;
  else if (on_circle == 0) sc.floquet_type = FloquetType::hyperbolic;
  else sc.floquet_type = FloquetType::mixed;
  sc.nondegenerate = sc.multiplicity_at_one == 2 && !resonant;
  return sc;
}

namespace {

struct SignSplit {
  int positive = 0;
  int negative = 0;
};

// signs of the k largest-magnitude eigenvalues of a Hermitian form; the rest
// must be numerically zero
template <class Mat>
SignSplit top_signs(const Mat& h, int k, const std::string& where) {
  if (k == 0) return {};
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  std::vector<double> v(ev.data(), ev.data() + ev.size());
  std::sort(v.begin(), v.end(), [](double a, double b) { return std::fabs(a) > std::fabs(b); });
  const double big = std::fabs(v[k - 1]);
  const double rest = static_cast<int>(v.size()) > k ? std::fabs(v[k]) : 0.0;
  if (!(big > 0) || rest > 1e-3 * big)
    throw AmbiguityError("sign form at " + where + " has no clear rank-" + std::to_string(k) +
                             " part",
                         {});
  SignSplit s;
  for (int i = 0; i < k; ++i) (v[i] > 0 ? s.positive : s.negative) += 1;
  return s;
}

void check_rank(const KernelInfo& k, const std::string& where) {
  if (k.borderline)
    throw AmbiguityError("Jordan structure at " + where + " is unresolvable at the rank tolerance",
                         {});
}

}  // namespace

Decomposition decompose(const Matrix& m, const DecomposeOptions& opt) {
  Decomposition d;
  d.n = static_cast<int>(m.rows() / 2);
  d.spectrum = classify_spectrum(m, opt);
  const int dim = static_cast<int>(m.rows());
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix j = standard_j(d.n);
  const double scale = spectral_norm(m);
  NormalFormCounts& c = d.counts;
  int off_circle = 0, negative_real = 0;

  for (const EigenCluster& cl : d.spectrum.clusters) {
    const int a = cl.multiplicity;
    if (cl.location == Location::one || cl.location == Location::minus_one) {
      const double lam = cl.location == Location::one ? 1.0 : -1.0;
      const std::string where = cl.location == Location::one ? "1" : "-1";
      const Matrix am = m - lam * id;
      const KernelInfo k = kernel_dimension(am, opt.rank_tol, scale);
      check_rank(k, where);
      const int g = k.dimension;
      if (a % 2 != 0 || 2 * g < a || g > a)
        throw AmbiguityError("Jordan structure at " + where + " (algebraic " + std::to_string(a) +
                                 ", geometric " + std::to_string(g) + ") is not a normal form",
                             {});
      const int shears = a - g;
      const Matrix v = smallest_right_singular(Matrix(am * am), a);
      const Matrix s = j * am;
      const Matrix q = v.transpose() * (0.5 * (s + s.transpose())) * v;
      const SignSplit sp = top_signs(q, shears, where);
      if (lam > 0) {
        c.p_zero += g - a / 2;
        c.p_minus += sp.positive;
        c.p_plus += sp.negative;
      } else {
        c.q_zero += g - a / 2;
        c.q_minus += sp.positive;
        c.q_plus += sp.negative;
      }
    } else if (cl.location == Location::elliptic) {
      if (cl.value.imag() < 0) continue;  // counted with its conjugate
      const cd lam = cl.value;
      const double phi = std::arg(lam);
      const CMatrix am = m.cast<cd>() - lam * CMatrix::Identity(dim, dim);
      const KernelInfo k = kernel_dimension(am, opt.rank_tol, scale);
      const std::string where = fmt(lam);
      check_rank(k, where);
      const int g = k.dimension;
      const int n2 = a - g, nr = 2 * g - a;
      if (n2 < 0 || nr < 0)
        throw AmbiguityError("Jordan structure at " + where + " is not a normal form", {});
      const CMatrix jc = j.cast<cd>();
      const cd mi(0, -1);
      if (nr > 0) {
        const CMatrix x = smallest_right_singular(am, g);
        CMatrix h = mi * (x.adjoint() * jc * x);
        h = 0.5 * (h + h.adjoint()).eval();
        const SignSplit sp = top_signs(h, nr, where);
        for (int i = 0; i < sp.positive; ++i) c.theta.push_back(Angle::floating(phi, false));
        for (int i = 0; i < sp.negative; ++i)
          c.theta.push_back(Angle::floating(2 * std::numbers::pi - phi, false));
      }
      if (n2 > 0) {
        const CMatrix y = smallest_right_singular(CMatrix(am * am), a);
        CMatrix h = mi * (y.adjoint() * jc * am * y);
        h = 0.5 * (h + h.adjoint()).eval();
        const SignSplit sp = top_signs(h, n2, where);
        for (int i = 0; i < sp.positive; ++i) c.alpha.push_back(Angle::floating(phi, false));
        for (int i = 0; i < sp.negative; ++i) c.beta.push_back(Angle::floating(phi, false));
      }
    } else {
      off_circle += a;
      if (cl.location == Location::hyperbolic_real && cl.value.real() < 0) negative_real += a;
    }
  }
  c.r = static_cast<int>(c.theta.size());
  c.r_star = static_cast<int>(c.alpha.size());
  c.r_zero = static_cast<int>(c.beta.size());
  c.s = off_circle / 2;
  c.hyperbolic_tail = (negative_real / 2) % 2 ? HyperbolicTail::one_negative : HyperbolicTail::positive;
  auto by_turn = [](const Angle& x, const Angle& y) { return x.turn() < y.turn(); };
  std::sort(c.theta.begin(), c.theta.end(), by_turn);
  std::sort(c.alpha.begin(), c.alpha.end(), by_turn);
  std::sort(c.beta.begin(), c.beta.end(), by_turn);
  if (c.half_dimension() != d.n)
    throw InconsistencyError("recovered blocks span dimension " +
                             std::to_string(2 * c.half_dimension()) + ", matrix has " +
                             std::to_string(dim));
  return d;
}

Decomposition extract_counts(const Matrix& m, const DecomposeOptions& opt) {
  Decomposition d = decompose(m, opt);
  const NormalFormCounts& c = d.counts;
  if (d.spectrum.multiplicity_at_one != 2)
    throw NotACharacteristicError("multiplier 1 has algebraic multiplicity " +
                                  std::to_string(d.spectrum.multiplicity_at_one) + ", expected 2");
  if (c.p_zero != 0) throw NotACharacteristicError("eigenvalue-1 kernel has dimension 2");
  if (c.p_minus != 1)
    throw NotACharacteristicError("the eigenvalue-1 block is N1(1,-1), not N1(1,1)");
  return d;
}

Decomposition extract_counts(const Matrix& m, double tol) {
  DecomposeOptions opt;
  opt.cluster_tol = tol;
  return extract_counts(m, opt);
}

}  // namespace sympidx
