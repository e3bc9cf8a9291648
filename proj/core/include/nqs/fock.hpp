#pragma once

// Truncated two-mode Fock space: basis bookkeeping, boson ladder operators
// and state construction.
//
// Joint basis states |m>_a (x) |n>_b are stored mode-a-major: the flat index
// of |m, n> is m * dim_b + n, so amplitudes are laid out as
// c(0,0), c(0,1), ..., c(0,dim_b-1), c(1,0), ...

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nqs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerance used for the unit-norm invariant of StateVector.
inline constexpr double kNormTolerance = 1e-10;

/// Thrown when a computation produces a result that violates a numerical
/// invariant (lost unitarity, non-Hermitian generator, failed eigensolver).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Occupation numbers (m, n) of a joint Fock state |m>_a (x) |n>_b.
struct FockLabel {
  int m = 0;
  int n = 0;

  friend constexpr auto operator<=>(const FockLabel&, const FockLabel&) = default;
};

std::string to_string(const FockLabel& label);

class FockBasis {
 public:
  /// Both dimensions must be at least 2 so that the qubit subspace
  /// {|0>, |1>} exists in each mode.
  FockBasis(int dim_a, int dim_b);

  int dim_a() const noexcept { return dim_a_; }
  int dim_b() const noexcept { return dim_b_; }
  int joint_dim() const noexcept { return dim_a_ * dim_b_; }

  bool contains(const FockLabel& label) const noexcept {
    return label.m >= 0 && label.m < dim_a_ && label.n >= 0 && label.n < dim_b_;
  }

  /// Throws std::out_of_range for labels outside the truncation.
  Eigen::Index flat_index(const FockLabel& label) const;
  FockLabel unflatten(Eigen::Index index) const;

  friend bool operator==(const FockBasis&, const FockBasis&) = default;

 private:
  int dim_a_;
  int dim_b_;
};

/// Normalized pure state over a joint Fock basis.
class StateVector {
 public:
  /// Rejects amplitude vectors of the wrong length or whose norm differs from
  /// one by more than kNormTolerance.
  StateVector(FockBasis basis, Vector amplitudes);

  const FockBasis& basis() const noexcept { return basis_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }

  Complex amplitude(const FockLabel& label) const {
    return amplitudes_(basis_.flat_index(label));
  }
  double probability(const FockLabel& label) const {
    return std::norm(amplitude(label));
  }
  double norm() const { return amplitudes_.norm(); }

  /// Amplitudes reshaped as a dim_a x dim_b matrix C with C(m, n) = c(m,n).
  Matrix amplitude_matrix() const;

 private:
  FockBasis basis_;
  Vector amplitudes_;
};

/// Dense operator on the joint Fock space.
class JointOperator {
 public:
  JointOperator(FockBasis basis, Matrix elements);

  const FockBasis& basis() const noexcept { return basis_; }
  const Matrix& elements() const noexcept { return elements_; }

  Complex element(const FockLabel& row, const FockLabel& col) const {
    return elements_(basis_.flat_index(row), basis_.flat_index(col));
  }

  /// max |M - M^dagger| <= tol
  bool is_hermitian(double tol) const;
  /// max |M^dagger M - I| <= tol
  bool is_unitary(double tol) const;

  /// Applies the operator to a raw amplitude vector (no normalization check).
  Vector apply(const Vector& amplitudes) const;

  friend JointOperator operator*(const JointOperator& lhs, const JointOperator& rhs);
  friend JointOperator operator+(const JointOperator& lhs, const JointOperator& rhs);
  friend JointOperator operator-(const JointOperator& lhs, const JointOperator& rhs);
  friend JointOperator operator*(Complex scale, const JointOperator& op);

 private:
  FockBasis basis_;
  Matrix elements_;
};

/// Lowering operator truncated to `dim` levels: entry (k, k+1) = sqrt(k+1).
Matrix single_mode_annihilation(int dim);

/// Kronecker product; block (i, j) of the result is A(i, j) * B.
Matrix kron(const Matrix& lhs, const Matrix& rhs);

JointOperator identity(const FockBasis& basis);
JointOperator mode_a_annihilation(const FockBasis& basis);
JointOperator mode_b_annihilation(const FockBasis& basis);
JointOperator dagger(const JointOperator& op);
JointOperator commutator(const JointOperator& lhs, const JointOperator& rhs);

StateVector vacuum_state(const FockBasis& basis);

/// Single-mode coherent state truncated to `dim` levels.
struct CoherentAmplitudes {
  /// exp(-|alpha|^2 / 2) alpha^n / sqrt(n!) for n < dim, as given by the
  /// infinite series before truncation.
  Vector raw;
  /// `raw` rescaled to unit norm.
  Vector normalized;
  /// 1 - sum |raw_n|^2: probability lost to the truncation.
  double truncation_deficit = 0.0;
};

CoherentAmplitudes coherent_state(Complex alpha, int dim);

/// |psi_a> (x) |psi_b> for normalized single-mode amplitude vectors.
StateVector product_state(const FockBasis& basis, const Vector& mode_a, const Vector& mode_b);

}  // namespace nqs
