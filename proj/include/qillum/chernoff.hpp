#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qillum/error.hpp"
#include "qillum/fock_linalg.hpp"
#include "qillum/params.hpp"

namespace qillum {

/// Tr[rho1^s rho0^(1-s)] together with 1 - Tr[...]. The complement is
/// carried separately because it is ~1e-10 in the low-noise regime and a
/// subtraction from Q would lose every significant digit.
struct ChernoffPoint {
  double q = 1.0;
  double one_minus_q = 0.0;
};

struct ChernoffResult {
  double s_star = 0.5;
  double q_star = 1.0;
  double one_minus_q = 0.0;

  /// log of the N-shot bound (1/2) Q^N.
  double log_n_shot_bound(std::int64_t N) const {
    return std::log(0.5) + static_cast<double>(N) * std::log1p(-one_minus_q);
  }
  double n_shot_bound(std::int64_t N) const { return std::exp(log_n_shot_bound(N)); }
};

namespace detail {

inline void require_open_unit(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw Error(ErrorCode::InvalidExponent, "Chernoff parameter s must lie in (0, 1)");
  }
}

}  // namespace detail

/// Brute-force Tr[rho1^s rho0^(1-s)] through two fractional powers. The
/// complement is only as good as 1 - Q; use SpectralChernoff when 1 - Q
/// itself matters.
inline double q_numeric(const HermitianOperator& rho0, const HermitianOperator& rho1, double s) {
  detail::require_open_unit(s);
  if (rho0.dim() != rho1.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "rho0 and rho1 dims differ");
  }
  return trace_product(frac_power(rho1, s), frac_power(rho0, 1.0 - s));
}

/// Numeric Chernoff evaluator that diagonalizes both hypotheses once. With
/// rho1 = sum_i l_i |u_i><u_i| and rho0 = sum_j m_j |v_j><v_j|,
///
///   Q(s)     = sum_ij W_ij m_j exp(s (log l_i - log m_j))
///   1 - Q(s) = sum_ij W_ij m_j (-expm1(s (log l_i - log m_j)))
///
/// where W_ij = |<u_i|v_j>|^2 is doubly stochastic and Tr rho0 = 1.
class SpectralChernoff {
 public:
  SpectralChernoff(const HermitianOperator& rho0, const HermitianOperator& rho1) {
    if (rho0.dim() != rho1.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "rho0 and rho1 dims differ");
    }
    const Eigendecomposition e0 = eigh(rho0);
    const Eigendecomposition e1 = eigh(rho1);
    overlap_ = (e1.vectors.adjoint() * e0.vectors).cwiseAbs2();
    log_l_ = clamped_logs(e1.values, rho1.max_abs());
    m_ = e0.values;
    log_m_ = clamped_logs(e0.values, rho0.max_abs());
    for (Index j = 0; j < m_.size(); ++j) {
      if (log_m_(j) == -std::numeric_limits<double>::infinity()) m_(j) = 0.0;
    }
  }

  ChernoffPoint operator()(double s) const {
    detail::require_open_unit(s);
    const double neg_inf = -std::numeric_limits<double>::infinity();
    double q = 0.0;
    double complement = 0.0;
    for (Index j = 0; j < m_.size(); ++j) {
      if (m_(j) == 0.0) continue;
      double q_col = 0.0;
      double c_col = 0.0;
      for (Index i = 0; i < log_l_.size(); ++i) {
        const double w = overlap_(i, j);
        if (w == 0.0) continue;
        if (log_l_(i) == neg_inf) {
          c_col += w;
          continue;
        }
        const double x = s * (log_l_(i) - log_m_(j));
        q_col += w * std::exp(x);
        c_col -= w * std::expm1(x);
      }
      q += m_(j) * q_col;
      complement += m_(j) * c_col;
    }
    return {q, complement};
  }

  Index dim() const { return m_.size(); }

 private:
  static RealVector clamped_logs(const RealVector& values, double scale) {
    const double floor = detail::resolution_floor(values.size(), scale);
    RealVector out(values.size());
    for (Index i = 0; i < values.size(); ++i) {
      detail::require_psd_eigenvalue(values(i), scale);
      out(i) = values(i) <= floor ? -std::numeric_limits<double>::infinity() : std::log(values(i));
    }
    return out;
  }

  Eigen::MatrixXd overlap_;
  RealVector log_l_;
  RealVector m_;
  RealVector log_m_;
};

/// Closed-form Q(s) for the low-noise hyperentangled pair with internal
/// dimension d:
///
///   Q(s) = (1-k)^s [1 + c ((1 + u)^s - 1)],  c = N_B/(d^2 M),
///                                            u = d^2 k M / ((1-k) N_B)
///
/// evaluated in log space so that 1 - Q keeps full relative precision.
inline ChernoffPoint q_closed(std::int64_t M, std::int64_t d, double kappa, double N_B, double s) {
  if (M < 1) throw Error(ErrorCode::NonPositiveM, "M = " + std::to_string(M));
  if (d < 1) throw Error(ErrorCode::UnsupportedF, "d = " + std::to_string(d));
  if (!std::isfinite(kappa) || kappa < 0.0 || kappa > 1.0) {
    throw Error(ErrorCode::InvalidReflectance, "kappa must lie in [0, 1]");
  }
  if (!std::isfinite(N_B) || N_B < 0.0) {
    throw Error(ErrorCode::NegativePhotonNumber, "N_B must be finite and >= 0");
  }
  if (N_B == 0.0) {
    throw Error(ErrorCode::ZeroNoiseDegenerate,
                "closed form is undefined at N_B = 0; evaluate the matrices with q_numeric");
  }
  if (!(static_cast<double>(M) * N_B < 1.0)) {
    throw Error(ErrorCode::InvalidRegime, "closed form needs M*N_B < 1");
  }
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::InvalidExponent, "s must lie in [0, 1]");
  }
  if (kappa == 0.0 || s == 0.0) return {1.0, 0.0};

  const double dd = static_cast<double>(d) * static_cast<double>(d);
  const double c = N_B / (dd * static_cast<double>(M));
  double log_q = 0.0;
  if (kappa == 1.0) {
    // The thermal part of rho1 vanishes: Q = c^(1-s).
    log_q = (1.0 - s) * std::log(c);
  } else {
    const double u = dd * kappa * static_cast<double>(M) / ((1.0 - kappa) * N_B);
    log_q = s * std::log1p(-kappa) + std::log1p(c * std::expm1(s * std::log1p(u)));
  }
  return {std::exp(log_q), -std::expm1(log_q)};
}

inline constexpr double kChernoffLower = 0.01;
inline constexpr double kChernoffUpper = 0.99;
inline constexpr double kChernoffTol = 1e-6;

/// Golden-section search for the minimum of Q on [0.01, 0.99]. Q(s) is
/// log-convex, so the bracket is unimodal. Comparisons use 1 - Q.
inline ChernoffResult minimize_q(const std::function<ChernoffPoint(double)>& q_fn,
                                 double tol = kChernoffTol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  ChernoffResult best{0.5, std::numeric_limits<double>::infinity(), -1.0};
  auto eval = [&](double s) {
    const ChernoffPoint p = q_fn(s);
    if (!std::isfinite(p.q) || !std::isfinite(p.one_minus_q)) {
      throw Error(ErrorCode::NonFiniteObjective, "objective not finite at s = " + std::to_string(s));
    }
    if (p.one_minus_q > best.one_minus_q) best = {s, p.q, p.one_minus_q};
    return p.one_minus_q;
  };

  double a = kChernoffLower;
  double b = kChernoffUpper;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval(x2);
    }
  }
  eval(0.5 * (a + b));
  return best;
}

inline ChernoffResult minimize_q(const std::function<double(double)>& q_fn,
                                 double tol = kChernoffTol) {
  return minimize_q(
      [&](double s) {
        const double q = q_fn(s);
        return ChernoffPoint{q, 1.0 - q};
      },
      tol);
}

enum class Protocol {
  CoherentState,
  SinglePhoton,
  TmsvLowNoise,
  TmsvHighNoise,
  HyperLowNoise,
  HyperGeneralF,
};

constexpr const char* to_string(Protocol p) {
  switch (p) {
    case Protocol::CoherentState: return "CoherentState";
    case Protocol::SinglePhoton: return "SinglePhoton";
    case Protocol::TmsvLowNoise: return "TmsvLowNoise";
    case Protocol::TmsvHighNoise: return "TmsvHighNoise";
    case Protocol::HyperLowNoise: return "HyperLowNoise";
    case Protocol::HyperGeneralF: return "HyperGeneralF";
  }
  return "";
}

/// Error bound prefactor * exp(-exponent).
struct ExponentCatalogEntry {
  Protocol protocol;
  double exponent;
  double prefactor;
};

/// Exponents of the error-probability bounds compared against each other.
/// The coherent-state entry is kappa * N_S with no factor of N: that bound
/// is quoted per total transmitted energy.
inline std::vector<ExponentCatalogEntry> exponent_catalog(const ProbeParams& probe,
                                                          const ChannelParams& channel) {
  if (!(channel.N_B > 0.0)) {
    throw Error(ErrorCode::DivisionByZeroNoise, "noise-normalized exponents need N_B > 0");
  }
  const double N = static_cast<double>(probe.N);
  const double M = static_cast<double>(probe.M);
  const double k = channel.kappa;
  const double nb = channel.N_B;
  const double tmsv_low = N * M * k * k / (8.0 * nb);
  return {
      {Protocol::CoherentState, k * probe.N_S, 0.5},
      {Protocol::SinglePhoton, N * k * k / (8.0 * nb), 0.5},
      {Protocol::TmsvLowNoise, tmsv_low, 0.5},
      {Protocol::TmsvHighNoise, k * N * probe.N_S / nb, 0.5},
      {Protocol::HyperLowNoise, 2.0 * N * M * k * k / nb, 0.5},
      {Protocol::HyperGeneralF, std::ldexp(tmsv_low, 2 * probe.f), 0.5},
  };
}

}  // namespace qillum
