#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "qillum/error.hpp"
#include "qillum/fock_linalg.hpp"

namespace qillum {

/// Biphoton state on (return ⊗ stored). Only the single ⊗ single sector is
/// populated.
struct PureState {
  BasisLayout layout;
  ComplexVector amplitudes;

  double norm() const { return amplitudes.norm(); }

  HermitianOperator projector() const {
    return HermitianOperator::symmetrized(amplitudes * amplitudes.adjoint());
  }
};

/// Partner of internal index j: every binary degree of freedom is flipped
/// (H <-> V, signal <-> idler frequency).
constexpr std::int64_t partner_index(std::int64_t j, std::int64_t d) { return d - 1 - j; }

namespace detail {

inline void require_layout(std::int64_t M, std::int64_t d) {
  if (M < 1) throw Error(ErrorCode::NonPositiveM, "M = " + std::to_string(M));
  if (d < 1 || (d & (d - 1)) != 0) {
    throw Error(ErrorCode::UnsupportedF, "d = " + std::to_string(d) + " is not a power of two");
  }
}

}  // namespace detail

/// Equal superposition over the dM matched pairs (k, j)_return ⊗ (k, j̄)_stored.
inline PureState build_psi(std::int64_t M, std::int64_t d, Index dim_cap = kDefaultDimensionCap) {
  detail::require_layout(M, d);
  const BasisLayout layout{M, d};
  detail::require_dim_cap(layout.joint_dim(), dim_cap);
  ComplexVector amp = ComplexVector::Zero(layout.joint_dim());
  const double a = 1.0 / std::sqrt(static_cast<double>(M * d));
  for (std::int64_t k = 0; k < M; ++k) {
    for (std::int64_t j = 0; j < d; ++j) {
      amp(layout.joint_index(layout.return_index(k, j),
                             layout.stored_index(k, partner_index(j, d)))) = a;
    }
  }
  return PureState{layout, std::move(amp)};
}

/// Low-noise thermal return: vacuum weight 1 - M N_B and N_B / d on each
/// single-photon state, truncated at one photon.
inline HermitianOperator build_rho_thermal(std::int64_t M, std::int64_t d, double N_B) {
  detail::require_layout(M, d);
  if (!std::isfinite(N_B) || N_B < 0.0) {
    throw Error(ErrorCode::NegativePhotonNumber, "N_B must be finite and >= 0");
  }
  const double total = static_cast<double>(M) * N_B;
  if (!(total < 1.0)) {
    throw Error(ErrorCode::InvalidRegime,
                "M*N_B = " + std::to_string(total) + " leaves no vacuum weight");
  }
  const BasisLayout layout{M, d};
  ComplexMatrix m = ComplexMatrix::Zero(layout.return_dim(), layout.return_dim());
  m(0, 0) = 1.0 - total;
  const double per_state = N_B / static_cast<double>(d);
  for (Index i = 1; i < layout.return_dim(); ++i) m(i, i) = per_state;
  return HermitianOperator(std::move(m));
}

/// Maximally mixed stored idler, I / (dM).
inline HermitianOperator build_stored_marginal(std::int64_t M, std::int64_t d) {
  detail::require_layout(M, d);
  const Index n = BasisLayout{M, d}.stored_dim();
  return HermitianOperator(ComplexMatrix::Identity(n, n) / static_cast<double>(n));
}

inline HermitianOperator build_rho0(std::int64_t M, std::int64_t d, double N_B,
                                    Index dim_cap = kDefaultDimensionCap) {
  return tensor(build_rho_thermal(M, d, N_B), build_stored_marginal(M, d), dim_cap);
}

inline HermitianOperator build_rho1(const HermitianOperator& rho0, const PureState& psi,
                                    double kappa) {
  if (!std::isfinite(kappa) || kappa < 0.0 || kappa > 1.0) {
    throw Error(ErrorCode::InvalidReflectance, "kappa must lie in [0, 1]");
  }
  if (rho0.dim() != psi.layout.joint_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "rho0 and psi live on different spaces");
  }
  ComplexMatrix m = (1.0 - kappa) * rho0.matrix();
  m.noalias() += kappa * (psi.amplitudes * psi.amplitudes.adjoint());
  return HermitianOperator::symmetrized(m);
}

struct HypothesisPair {
  HermitianOperator rho0;
  HermitianOperator rho1;
};

inline HypothesisPair build_hypotheses(std::int64_t M, std::int64_t d, double kappa, double N_B,
                                       Index dim_cap = kDefaultDimensionCap) {
  HermitianOperator rho0 = build_rho0(M, d, N_B, dim_cap);
  HermitianOperator rho1 = build_rho1(rho0, build_psi(M, d, dim_cap), kappa);
  return {std::move(rho0), std::move(rho1)};
}

}  // namespace qillum
