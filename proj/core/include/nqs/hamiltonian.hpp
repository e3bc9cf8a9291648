#pragma once

#include "nqs/fock.hpp"

namespace nqs {

/// Physical parameters of the kicked Kerr coupler plus run controls.
/// All strengths are in units of the Kerr nonlinearity constant.
struct CouplerConfig {
  double chi_a = 1.0;        ///< mode-a Kerr nonlinearity
  double chi_b = 1.0;        ///< mode-b Kerr nonlinearity
  double chi_ab = 1.0;       ///< cross-Kerr coupling
  Complex epsilon{0.01, 0};  ///< linear inter-mode coupling
  Complex alpha{0.04, 0};    ///< kick strength (mode a only)
  double period = 3.14159265358979323846;  ///< time between kicks
  int dim_a = 10;
  int dim_b = 10;
  int n_kicks = 1000;

  /// Throws std::invalid_argument if period <= 0, n_kicks < 1 or a dimension
  /// is below 2.
  void validate() const;

  FockBasis basis() const { return {dim_a, dim_b}; }

  friend bool operator==(const CouplerConfig&, const CouplerConfig&) = default;
};

/// Free coupler Hamiltonian
///   chi_a/2 a+^2 a^2 + chi_b/2 b+^2 b^2 + eps a+ b + eps* a b+ + chi_ab a+a b+b.
JointOperator build_h_nl(const CouplerConfig& cfg, const FockBasis& basis);

/// Kick generator alpha a+ + alpha* a. Acts on mode a only.
JointOperator build_kick_generator(const CouplerConfig& cfg, const FockBasis& basis);

/// Single-mode block of the kick generator (dim_a x dim_a); the joint
/// generator is kron(block, I_b).
Matrix kick_generator_mode_a(Complex alpha, int dim_a);

}  // namespace nqs
