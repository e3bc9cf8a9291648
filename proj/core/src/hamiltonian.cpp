#include "nqs/hamiltonian.hpp"

#include <string>

namespace nqs {

void CouplerConfig::validate() const {
  if (!(period > 0.0)) {
    throw std::invalid_argument("CouplerConfig: T must be > 0, got " + std::to_string(period));
  }
  if (n_kicks < 1) {
    throw std::invalid_argument("CouplerConfig: n_kicks must be >= 1, got " + std::to_string(n_kicks));
  }
  if (dim_a < 2 || dim_b < 2) {
    throw std::invalid_argument("CouplerConfig: dim_a and dim_b must be >= 2");
  }
}

namespace {

void require_matching_basis(const CouplerConfig& cfg, const FockBasis& basis) {
  if (cfg.dim_a != basis.dim_a() || cfg.dim_b != basis.dim_b()) {
    throw std::invalid_argument("config dimensions (" + std::to_string(cfg.dim_a) + ", " +
                                std::to_string(cfg.dim_b) + ") do not match basis (" +
                                std::to_string(basis.dim_a()) + ", " + std::to_string(basis.dim_b()) + ")");
  }
}

}  // namespace

JointOperator build_h_nl(const CouplerConfig& cfg, const FockBasis& basis) {
  require_matching_basis(cfg, basis);
  // Single-mode products lifted by one Kronecker product per term.
  const Matrix a = single_mode_annihilation(basis.dim_a());
  const Matrix b = single_mode_annihilation(basis.dim_b());
  const Matrix ad = a.adjoint();
  const Matrix bd = b.adjoint();
  const Matrix id_a = Matrix::Identity(basis.dim_a(), basis.dim_a());
  const Matrix id_b = Matrix::Identity(basis.dim_b(), basis.dim_b());

  const Matrix kerr_a = kron(ad * ad * a * a, id_b);
  const Matrix kerr_b = kron(id_a, bd * bd * b * b);
  const Matrix cross = kron(ad * a, bd * b);
  const Matrix hop = kron(ad, b);   // a+ b
  const Matrix hop_h = kron(a, bd); // a b+

  return {basis, (cfg.chi_a / 2.0) * kerr_a + (cfg.chi_b / 2.0) * kerr_b + cfg.epsilon * hop +
                     std::conj(cfg.epsilon) * hop_h + cfg.chi_ab * cross};
}

Matrix kick_generator_mode_a(Complex alpha, int dim_a) {
  const Matrix a = single_mode_annihilation(dim_a);
  return alpha * a.adjoint() + std::conj(alpha) * a;
}

JointOperator build_kick_generator(const CouplerConfig& cfg, const FockBasis& basis) {
  require_matching_basis(cfg, basis);
  const JointOperator a = mode_a_annihilation(basis);
  return cfg.alpha * dagger(a) + std::conj(cfg.alpha) * a;
}

}  // namespace nqs
