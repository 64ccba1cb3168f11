#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sympidx/angle.hpp"

namespace sympidx {

using Matrix = Eigen::MatrixXd;

// J = [[0, -I_n], [I_n, 0]]
Matrix standard_j(int n);

bool is_symplectic(const Matrix& m, double tol);

// A real 2n×2n matrix known to satisfy MᵀJM = J within the tolerance it
// was constructed with.
class SymplecticMatrix {
 public:
  SymplecticMatrix(Matrix m, double tol);  // DimensionError / DomainError
  int n() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }
  operator const Matrix&() const { return m_; }  // NOLINT implicit

 private:
  Matrix m_;
};

// A ⋄ B: symplectic direct sum with interleaved coordinates
Matrix diamond_sum(const Matrix& a, const Matrix& b);

enum class Triviality { trivial, nontrivial };

struct ShearBlock {  // N1(λ, b); b = 0 gives ±I2
  double lambda = 1;
  double b = 1;
};
struct HyperbolicBlock {  // D(λ)
  double lambda = 2;
};
struct RotationBlock {  // R(θ)
  Angle theta;
};
struct JordanRotationBlock {  // N2(e^{iθ}, B)
  Angle theta;
  Eigen::Matrix2d B;
  Triviality triviality;
};
using BasicBlock = std::variant<ShearBlock, HyperbolicBlock, RotationBlock, JordanRotationBlock>;

BasicBlock shear(double lambda, double b);
BasicBlock hyperbolic(double lambda);
BasicBlock rotation(const Angle& theta);
// B must make the block symplectic (RᵀB symmetric), b2 != b3, and the flag
// must agree with the sign of (b2 - b3) sin θ.
BasicBlock jordan_rotation(const Angle& theta, const Eigen::Matrix2d& B, Triviality t);
// default B = κR(θ) with κ = -1 (trivial) or +1 (non-trivial)
BasicBlock jordan_rotation(const Angle& theta, Triviality t);

Eigen::Matrix2d rotation_matrix(double radians);
SymplecticMatrix realize(const BasicBlock& block);
std::string describe(const BasicBlock& block);

enum class HyperbolicTail { positive, one_negative };  // D(2)^s or D(-2)⋄D(2)^(s-1)

struct NormalFormCounts {
  int p_minus = 0, p_zero = 0, p_plus = 0;
  int q_minus = 0, q_zero = 0, q_plus = 0;
  int r = 0, r_star = 0, r_zero = 0, s = 0;
  HyperbolicTail hyperbolic_tail = HyperbolicTail::positive;
  std::vector<Angle> theta;  // R(θj), r entries
  std::vector<Angle> alpha;  // non-trivial N2, r* entries
  std::vector<Angle> beta;   // trivial N2, r0 entries

  int half_dimension() const {
    return p_minus + p_zero + p_plus + q_minus + q_zero + q_plus + r + 2 * r_star + 2 * r_zero + s;
  }
  int nullity1() const { return p_minus + 2 * p_zero + p_plus; }
  void check() const;  // lengths and tail; InconsistencyError
};

struct IndexSeed {
  int n = 1;
  long long i1 = 0;
  NormalFormCounts counts;

  void check() const;  // budget equality plus counts.check()
};

// blocks of the endpoint normal form in canonical display order
std::vector<BasicBlock> seed_blocks(const IndexSeed& seed);
SymplecticMatrix realize_seed(const IndexSeed& seed);

}  // namespace sympidx
