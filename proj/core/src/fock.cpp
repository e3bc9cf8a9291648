#include "nqs/fock.hpp"

#include <cmath>
#include <utility>

namespace nqs {

std::string to_string(const FockLabel& label) {
  return "|" + std::to_string(label.m) + "," + std::to_string(label.n) + ">";
}

FockBasis::FockBasis(int dim_a, int dim_b) : dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a < 2 || dim_b < 2) {
    throw std::invalid_argument("FockBasis: each mode needs at least 2 levels, got (" +
                                std::to_string(dim_a) + ", " + std::to_string(dim_b) + ")");
  }
}

Eigen::Index FockBasis::flat_index(const FockLabel& label) const {
  if (!contains(label)) {
    throw std::out_of_range("FockBasis: label " + to_string(label) + " outside truncation (" +
                            std::to_string(dim_a_) + ", " + std::to_string(dim_b_) + ")");
  }
  return static_cast<Eigen::Index>(label.m) * dim_b_ + label.n;
}

FockLabel FockBasis::unflatten(Eigen::Index index) const {
  if (index < 0 || index >= joint_dim()) {
    throw std::out_of_range("FockBasis: flat index " + std::to_string(index) + " out of range");
  }
  return {static_cast<int>(index / dim_b_), static_cast<int>(index % dim_b_)};
}

StateVector::StateVector(FockBasis basis, Vector amplitudes)
    : basis_(basis), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != basis_.joint_dim()) {
    throw std::invalid_argument("StateVector: expected " + std::to_string(basis_.joint_dim()) +
                                " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
  const double deviation = std::abs(amplitudes_.norm() - 1.0);
  if (!(deviation <= kNormTolerance)) {
    throw std::invalid_argument("StateVector: amplitudes not normalized (|norm - 1| = " +
                                std::to_string(deviation) + ")");
  }
}

Matrix StateVector::amplitude_matrix() const {
  // Flat storage is row-major over (m, n).
  Matrix c(basis_.dim_a(), basis_.dim_b());
  for (int m = 0; m < basis_.dim_a(); ++m) {
    for (int n = 0; n < basis_.dim_b(); ++n) {
      c(m, n) = amplitudes_(static_cast<Eigen::Index>(m) * basis_.dim_b() + n);
    }
  }
  return c;
}

JointOperator::JointOperator(FockBasis basis, Matrix elements)
    : basis_(basis), elements_(std::move(elements)) {
  if (elements_.rows() != basis_.joint_dim() || elements_.cols() != basis_.joint_dim()) {
    throw std::invalid_argument("JointOperator: matrix is " + std::to_string(elements_.rows()) +
                                "x" + std::to_string(elements_.cols()) + ", basis needs " +
                                std::to_string(basis_.joint_dim()));
  }
}

bool JointOperator::is_hermitian(double tol) const {
  return (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool JointOperator::is_unitary(double tol) const {
  const Matrix residual = elements_.adjoint() * elements_ - Matrix::Identity(elements_.rows(), elements_.cols());
  return residual.cwiseAbs().maxCoeff() <= tol;
}

Vector JointOperator::apply(const Vector& amplitudes) const {
  if (amplitudes.size() != elements_.cols()) {
    throw std::invalid_argument("JointOperator::apply: dimension mismatch");
  }
  return elements_ * amplitudes;
}

namespace {

void require_same_basis(const JointOperator& lhs, const JointOperator& rhs) {
  if (!(lhs.basis() == rhs.basis())) {
    throw std::invalid_argument("JointOperator: operands live on different bases");
  }
}

}  // namespace

JointOperator operator*(const JointOperator& lhs, const JointOperator& rhs) {
  require_same_basis(lhs, rhs);
  return {lhs.basis_, lhs.elements_ * rhs.elements_};
}

JointOperator operator+(const JointOperator& lhs, const JointOperator& rhs) {
  require_same_basis(lhs, rhs);
  return {lhs.basis_, lhs.elements_ + rhs.elements_};
}

JointOperator operator-(const JointOperator& lhs, const JointOperator& rhs) {
  require_same_basis(lhs, rhs);
  return {lhs.basis_, lhs.elements_ - rhs.elements_};
}

JointOperator operator*(Complex scale, const JointOperator& op) {
  return {op.basis_, scale * op.elements_};
}

Matrix single_mode_annihilation(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("single_mode_annihilation: dim must be >= 1");
  }
  Matrix a = Matrix::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) {
    a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  }
  return a;
}

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.size() == 0 || rhs.size() == 0) {
    throw std::invalid_argument("kron: operands must be non-empty");
  }
  const Eigen::Index br = rhs.rows();
  const Eigen::Index bc = rhs.cols();
  Matrix out(lhs.rows() * br, lhs.cols() * bc);
  for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
    for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = lhs(i, j) * rhs;
    }
  }
  return out;
}

JointOperator identity(const FockBasis& basis) {
  return {basis, Matrix::Identity(basis.joint_dim(), basis.joint_dim())};
}

JointOperator mode_a_annihilation(const FockBasis& basis) {
  return {basis, kron(single_mode_annihilation(basis.dim_a()), Matrix::Identity(basis.dim_b(), basis.dim_b()))};
}

JointOperator mode_b_annihilation(const FockBasis& basis) {
  return {basis, kron(Matrix::Identity(basis.dim_a(), basis.dim_a()), single_mode_annihilation(basis.dim_b()))};
}

JointOperator dagger(const JointOperator& op) {
  return {op.basis(), op.elements().adjoint()};
}

JointOperator commutator(const JointOperator& lhs, const JointOperator& rhs) {
  return lhs * rhs - rhs * lhs;
}

StateVector vacuum_state(const FockBasis& basis) {
  Vector amplitudes = Vector::Zero(basis.joint_dim());
  amplitudes(0) = 1.0;
  return {basis, std::move(amplitudes)};
}

CoherentAmplitudes coherent_state(Complex alpha, int dim) {
  if (dim < 1) {
    throw std::invalid_argument("coherent_state: dim must be >= 1");
  }
  CoherentAmplitudes out;
  out.raw.resize(dim);
  // alpha^n / sqrt(n!) by recurrence avoids overflowing n!.
  Complex term = std::exp(-0.5 * std::norm(alpha));
  out.raw(0) = term;
  for (int n = 1; n < dim; ++n) {
    term *= alpha / std::sqrt(static_cast<double>(n));
    out.raw(n) = term;
  }
  const double captured = out.raw.squaredNorm();
  out.truncation_deficit = 1.0 - captured;
  out.normalized = out.raw / std::sqrt(captured);
  return out;
}

StateVector product_state(const FockBasis& basis, const Vector& mode_a, const Vector& mode_b) {
  if (mode_a.size() != basis.dim_a() || mode_b.size() != basis.dim_b()) {
    throw std::invalid_argument("product_state: factor lengths do not match basis");
  }
  Vector joint(basis.joint_dim());
  for (int m = 0; m < basis.dim_a(); ++m) {
    joint.segment(static_cast<Eigen::Index>(m) * basis.dim_b(), basis.dim_b()) = mode_a(m) * mode_b;
  }
  return {basis, std::move(joint)};
}

}  // namespace nqs
