#pragma once

#include <functional>
#include <vector>

#include "nqs/fock.hpp"
#include "nqs/hamiltonian.hpp"

namespace nqs {

/// exp(-i s H) for Hermitian H via eigendecomposition H = V diag(w) V^dagger.
/// Throws NumericalError if H is not Hermitian to 1e-10.
Matrix expm_hermitian_scaled(const Matrix& hermitian, double scale);
JointOperator expm_hermitian_scaled(const JointOperator& hermitian, double scale);

/// exp(-i s H) for a diagonal H, exponentiating the diagonal directly.
/// Throws std::invalid_argument if H has any non-zero off-diagonal entry.
JointOperator diagonal_phase_propagator(const JointOperator& diagonal, double scale);

/// Free evolution over one inter-pulse interval, exp(-i H_NL T). Uses the
/// diagonal path when epsilon == 0.
JointOperator build_u_nl(const CouplerConfig& cfg, const FockBasis& basis);

/// Single-kick map exp(-i (alpha a+ + alpha* a)). Built as
/// kron(expm(single-mode generator), I_b), which equals the exponential of the
/// joint generator because the generator is G_a (x) I_b.
JointOperator build_u_k(const CouplerConfig& cfg, const FockBasis& basis);

struct Propagators {
  JointOperator u_nl;
  JointOperator u_k;
  JointOperator u_step;  ///< u_k * u_nl: free flight, then kick
};

/// Builds all three maps once per run. Throws NumericalError if any of them
/// fails the unitarity check at 1e-10.
Propagators build_propagators(const CouplerConfig& cfg, const FockBasis& basis);

using KickVisitor = std::function<void(int kick, const StateVector& state)>;

/// Applies u_step n_kicks times starting from psi0 and calls `visit` for
/// kick 0 (psi0 itself) through n_kicks. Each step is one matrix-vector
/// product. Throws NumericalError if the norm drifts by more than
/// kNormTolerance, std::invalid_argument on a basis mismatch.
void propagate_kicks(const Propagators& props, const StateVector& psi0, int n_kicks,
                     const KickVisitor& visit);

/// Full state sequence psi_0 .. psi_{n_kicks}.
std::vector<StateVector> run_kicks(const Propagators& props, const StateVector& psi0, int n_kicks);
std::vector<StateVector> run_kicks(const CouplerConfig& cfg, const FockBasis& basis,
                                   const StateVector& psi0);

}  // namespace nqs
