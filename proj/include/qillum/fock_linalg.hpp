#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "qillum/error.hpp"

namespace qillum {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Index kDefaultDimensionCap = 4096;
inline constexpr double kDefaultHermitianTol = 1e-12;
inline constexpr double kDensityTol = 1e-12;
inline constexpr double kPsdClamp = 1e-12;

/// Single-photon basis of M temporal modes with d internal states each.
/// The return space prepends the vacuum; the stored space does not.
/// Single-photon states are ordered with the temporal mode outermost.
struct BasisLayout {
  std::int64_t M = 1;
  std::int64_t d = 1;

  Index single_photon_dim() const { return static_cast<Index>(M * d); }
  Index return_dim() const { return 1 + single_photon_dim(); }
  Index stored_dim() const { return single_photon_dim(); }
  Index joint_dim() const { return return_dim() * stored_dim(); }

  static constexpr Index vacuum_index() { return 0; }
  Index return_index(std::int64_t k, std::int64_t j) const { return 1 + stored_index(k, j); }
  Index stored_index(std::int64_t k, std::int64_t j) const { return static_cast<Index>(k * d + j); }
  Index joint_index(Index return_idx, Index stored_idx) const {
    return return_idx * stored_dim() + stored_idx;
  }

  struct ModeIndex {
    std::int64_t k;
    std::int64_t j;
  };
  ModeIndex stored_mode(Index idx) const { return {idx / d, idx % d}; }
  /// Inverse of return_index; the vacuum has no mode.
  ModeIndex return_mode(Index idx) const { return stored_mode(idx - 1); }
};

namespace detail {

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void require_dim_cap(Index dim, Index cap) {
  if (dim > cap) {
    throw Error(ErrorCode::DimensionOverflow,
                "dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
  }
}

}  // namespace detail

/// Dense Hermitian matrix. Hermiticity is checked once, at construction.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix entries, double hermitian_tol = kDefaultHermitianTol)
      : entries_(std::move(entries)), hermitian_tol_(hermitian_tol) {
    if (entries_.rows() != entries_.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "operator must be square");
    }
    const double asym = detail::max_abs(entries_ - entries_.adjoint());
    if (!(asym <= hermitian_tol_)) {
      throw Error(ErrorCode::NotHermitian, "max |A - A^dagger| = " + std::to_string(asym));
    }
  }

  static HermitianOperator identity(Index n) {
    return HermitianOperator(ComplexMatrix::Identity(n, n));
  }

  static HermitianOperator diagonal(std::span<const double> values) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(values.size()),
                                          static_cast<Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
      m(static_cast<Index>(i), static_cast<Index>(i)) = values[i];
    }
    return HermitianOperator(std::move(m));
  }

  /// Builds from a product expression that is Hermitian only up to rounding.
  static HermitianOperator symmetrized(const ComplexMatrix& m) {
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    return HermitianOperator(std::move(h));
  }

  Index dim() const { return entries_.rows(); }
  const ComplexMatrix& matrix() const { return entries_; }
  double hermitian_tol() const { return hermitian_tol_; }
  Complex operator()(Index i, Index j) const { return entries_(i, j); }
  double trace() const { return entries_.diagonal().real().sum(); }
  double max_abs() const { return detail::max_abs(entries_); }

 private:
  ComplexMatrix entries_;
  double hermitian_tol_;
};

inline HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b,
                                Index dim_cap = kDefaultDimensionCap) {
  const Index na = a.dim();
  const Index nb = b.dim();
  detail::require_dim_cap(na * nb, dim_cap);
  ComplexMatrix out(na * nb, na * nb);
  for (Index i = 0; i < na; ++i) {
    for (Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.matrix();
    }
  }
  return HermitianOperator(std::move(out), std::max(a.hermitian_tol(), b.hermitian_tol()));
}

enum class Subsystem { First, Second };

/// Partial trace of an operator on a d1 x d2 bipartite space, keeping the
/// named subsystem.
inline HermitianOperator partial_trace(const HermitianOperator& a, Index d1, Index d2,
                                       Subsystem keep) {
  if (d1 < 1 || d2 < 1 || a.dim() != d1 * d2) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator dim " + std::to_string(a.dim()) + " != " + std::to_string(d1) + " x " +
                    std::to_string(d2));
  }
  const ComplexMatrix& m = a.matrix();
  if (keep == Subsystem::First) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (Index i = 0; i < d1; ++i) {
      for (Index j = 0; j < d1; ++j) {
        out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
      }
    }
    return HermitianOperator::symmetrized(out);
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Index i = 0; i < d1; ++i) {
    out += m.block(i * d2, i * d2, d2, d2);
  }
  return HermitianOperator::symmetrized(out);
}

struct Eigendecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are eigenvectors
  /// Same eigenvectors when the operator is real symmetric, empty otherwise.
  Eigen::MatrixXd real_vectors;
};

/// Backed by Eigen's self-adjoint QR solver. Real symmetric input goes
/// through the real solver.
inline Eigendecomposition eigh(const HermitianOperator& a) {
  auto fail = [&] {
    throw Error(ErrorCode::ConvergenceFailure,
                "eigensolver did not converge for dim " + std::to_string(a.dim()));
  };
  if (a.matrix().imag().isZero(0.0)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.matrix().real(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) fail();
    return {solver.eigenvalues(), solver.eigenvectors().cast<Complex>(), solver.eigenvectors()};
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) fail();
  return {solver.eigenvalues(), solver.eigenvectors(), {}};
}

namespace detail {

/// Eigenvalues this close to zero are below what the eigensolver resolves.
inline double resolution_floor(Index dim, double scale) {
  return static_cast<double>(dim) * std::numeric_limits<double>::epsilon() * scale;
}

inline void require_psd_eigenvalue(double v, double scale) {
  if (v < -kPsdClamp * std::max(scale, 1e-300)) {
    throw Error(ErrorCode::NotPositiveSemidefinite,
                "eigenvalue " + std::to_string(v) + " below clamp threshold");
  }
}

/// lambda^s for a PSD spectrum. Small negative eigenvalues and positive
/// ones under the resolution floor are rounding noise and map to zero;
/// raised to a small s they would otherwise grow to O(1).
inline RealVector psd_power(const RealVector& values, double s, double scale) {
  const double floor = resolution_floor(values.size(), scale);
  RealVector out(values.size());
  for (Index i = 0; i < values.size(); ++i) {
    const double v = values(i);
    require_psd_eigenvalue(v, scale);
    out(i) = v <= floor ? 0.0 : std::pow(v, s);
  }
  return out;
}

inline void require_exponent(double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::InvalidExponent, "fractional power needs s in (0, 1]");
  }
}

}  // namespace detail

inline HermitianOperator frac_power(const Eigendecomposition& eig, double s, double scale) {
  detail::require_exponent(s);
  const RealVector powered = detail::psd_power(eig.values, s, scale);
  if (eig.real_vectors.size() > 0) {
    const Eigen::MatrixXd weighted = eig.real_vectors * powered.asDiagonal();
    const Eigen::MatrixXd product = weighted * eig.real_vectors.transpose();
    return HermitianOperator::symmetrized(product.cast<Complex>());
  }
  const ComplexMatrix weighted = eig.vectors * powered.asDiagonal();
  return HermitianOperator::symmetrized(weighted * eig.vectors.adjoint());
}

inline HermitianOperator frac_power(const HermitianOperator& a, double s) {
  detail::require_exponent(s);
  return frac_power(eigh(a), s, a.max_abs());
}

/// Re Tr(AB). The imaginary part of a trace of two Hermitian operators
/// vanishes up to rounding; anything larger signals a broken input.
inline double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "trace_product needs equal dims");
  }
  const Complex tr = (a.matrix().array() * b.matrix().transpose().array()).sum();
  if (std::abs(tr.imag()) > 1e-10) {
    throw Error(ErrorCode::NotHermitian,
                "Tr(AB) has imaginary part " + std::to_string(tr.imag()));
  }
  return tr.real();
}

/// Throws InvalidDensity unless trace is 1 and the spectrum is non-negative.
inline void check_density(const HermitianOperator& rho, double tol = kDensityTol) {
  const double tr = rho.trace();
  if (!(std::abs(tr - 1.0) <= tol)) {
    throw Error(ErrorCode::InvalidDensity, "trace = " + std::to_string(tr));
  }
  const Eigendecomposition eig = eigh(rho);
  if (eig.values.size() > 0 && eig.values(0) < -tol) {
    throw Error(ErrorCode::InvalidDensity,
                "min eigenvalue = " + std::to_string(eig.values(0)));
  }
}

}  // namespace qillum
