#pragma once

#include <complex>

#include <Eigen/Dense>

namespace sympidx {

using CMatrix = Eigen::MatrixXcd;

struct KernelInfo {
  int dimension = 0;
  bool borderline = false;  // a singular value within a factor 10 of the threshold
  double threshold = 0.0;
};

// dim ker A from singular values below rel_tol * scale
KernelInfo kernel_dimension(const CMatrix& a, double rel_tol, double scale);
KernelInfo kernel_dimension(const Eigen::MatrixXd& a, double rel_tol, double scale);

// right singular vectors belonging to the k smallest singular values
CMatrix smallest_right_singular(const CMatrix& a, int k);
Eigen::MatrixXd smallest_right_singular(const Eigen::MatrixXd& a, int k);

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, long long p);
double condition_number(const Eigen::MatrixXd& m);
double spectral_norm(const Eigen::MatrixXd& m);

}  // namespace sympidx
