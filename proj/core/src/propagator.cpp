#include "nqs/propagator.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace nqs {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kUnitaryTolerance = 1e-10;

}  // namespace

Matrix expm_hermitian_scaled(const Matrix& hermitian, double scale) {
  if (hermitian.rows() != hermitian.cols()) {
    throw std::invalid_argument("expm_hermitian_scaled: matrix is not square");
  }
  const double asymmetry = (hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff();
  if (!(asymmetry <= kHermitianTolerance)) {
    throw NumericalError("expm_hermitian_scaled: generator is not Hermitian (max |H - H^dagger| = " +
                         std::to_string(asymmetry) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("expm_hermitian_scaled: eigendecomposition did not converge");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases(k) = std::polar(1.0, -scale * w(k));
  }
  const Matrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

JointOperator expm_hermitian_scaled(const JointOperator& hermitian, double scale) {
  return {hermitian.basis(), expm_hermitian_scaled(hermitian.elements(), scale)};
}

JointOperator diagonal_phase_propagator(const JointOperator& diagonal, double scale) {
  const Matrix& h = diagonal.elements();
  Matrix off = h;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("diagonal_phase_propagator: operator has off-diagonal entries");
  }
  Vector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    phases(k) = std::polar(1.0, -scale * h(k, k).real());
  }
  return {diagonal.basis(), phases.asDiagonal().toDenseMatrix()};
}

JointOperator build_u_nl(const CouplerConfig& cfg, const FockBasis& basis) {
  const JointOperator h = build_h_nl(cfg, basis);
  if (cfg.epsilon == Complex(0.0, 0.0)) {
    return diagonal_phase_propagator(h, cfg.period);
  }
  return expm_hermitian_scaled(h, cfg.period);
}

JointOperator build_u_k(const CouplerConfig& cfg, const FockBasis& basis) {
  // Validates the config/basis pairing the same way the joint generator does.
  (void)build_kick_generator(cfg, basis);
  const Matrix kick_a = expm_hermitian_scaled(kick_generator_mode_a(cfg.alpha, basis.dim_a()), 1.0);
  return {basis, kron(kick_a, Matrix::Identity(basis.dim_b(), basis.dim_b()))};
}

Propagators build_propagators(const CouplerConfig& cfg, const FockBasis& basis) {
  JointOperator u_nl = build_u_nl(cfg, basis);
  JointOperator u_k = build_u_k(cfg, basis);
  JointOperator u_step = u_k * u_nl;
  if (!u_nl.is_unitary(kUnitaryTolerance) || !u_k.is_unitary(kUnitaryTolerance) ||
      !u_step.is_unitary(kUnitaryTolerance)) {
    throw NumericalError("build_propagators: propagator failed unitarity check at 1e-10");
  }
  return {std::move(u_nl), std::move(u_k), std::move(u_step)};
}

void propagate_kicks(const Propagators& props, const StateVector& psi0, int n_kicks,
                     const KickVisitor& visit) {
  if (n_kicks < 0) {
    throw std::invalid_argument("propagate_kicks: n_kicks must be >= 0");
  }
  if (!(psi0.basis() == props.u_step.basis())) {
    throw std::invalid_argument("propagate_kicks: initial state basis does not match propagators");
  }
  const Matrix& step = props.u_step.elements();
  Vector current = psi0.amplitudes();
  Vector next(current.size());
  visit(0, psi0);
  for (int k = 1; k <= n_kicks; ++k) {
    next.noalias() = step * current;
    current.swap(next);
    const double drift = std::abs(current.norm() - 1.0);
    if (!(drift <= kNormTolerance)) {
      throw NumericalError("propagate_kicks: norm drifted by " + std::to_string(drift) +
                           " at kick " + std::to_string(k));
    }
    visit(k, StateVector(psi0.basis(), current));
  }
}

std::vector<StateVector> run_kicks(const Propagators& props, const StateVector& psi0, int n_kicks) {
  std::vector<StateVector> states;
  states.reserve(static_cast<std::size_t>(std::max(n_kicks, 0)) + 1);
  propagate_kicks(props, psi0, n_kicks, [&](int, const StateVector& psi) { states.push_back(psi); });
  return states;
}

std::vector<StateVector> run_kicks(const CouplerConfig& cfg, const FockBasis& basis,
                                   const StateVector& psi0) {
  cfg.validate();
  return run_kicks(build_propagators(cfg, basis), psi0, cfg.n_kicks);
}

}  // namespace nqs
