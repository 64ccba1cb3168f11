#include "sympidx/linalg.hpp"

namespace sympidx {
namespace {

template <class Vec>
KernelInfo count_small(const Vec& sv, double thr) {
  KernelInfo k;
  k.threshold = thr;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double s = sv[i];
    if (s <= thr) ++k.dimension;
    if (s > thr / 10 && s < thr * 10) k.borderline = true;
  }
  return k;
}

}  // namespace

KernelInfo kernel_dimension(const CMatrix& a, double rel_tol, double scale) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  return count_small(svd.singularValues(), rel_tol * std::max(1.0, scale));
}

KernelInfo kernel_dimension(const Eigen::MatrixXd& a, double rel_tol, double scale) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return count_small(svd.singularValues(), rel_tol * std::max(1.0, scale));
}

CMatrix smallest_right_singular(const CMatrix& a, int k) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  // singular values come sorted in decreasing order
  return svd.matrixV().rightCols(k);
}

Eigen::MatrixXd smallest_right_singular(const Eigen::MatrixXd& a, int k) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(k);
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, long long p) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd b = m;
  while (p > 0) {
    if (p & 1) r = r * b;
    b = b * b;
    p >>= 1;
  }
  return r;
}

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

double spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace sympidx
