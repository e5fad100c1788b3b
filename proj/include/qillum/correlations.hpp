#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "qillum/error.hpp"

namespace qillum {

/// <a_x a_y> for one stored/return mode pair. The value is magnitude * phase.
struct CrossCorrelation {
  double magnitude = 0.0;
  std::complex<double> phase{0.0, 1.0};
  const char* mode_pair = "(3,H,S)-(4,V,I)";

  std::complex<double> value() const { return magnitude * phase; }
};

/// The four paired modes produced by polarization and frequency splitting.
/// All carry the same correlation.
inline constexpr std::array<const char*, 4> kCorrelatedModePairs = {
    "(3,H,S)-(4,V,I)",
    "(3,V,S)-(4,H,I)",
    "(3,H,I)-(4,V,S)",
    "(3,V,I)-(4,H,S)",
};

namespace detail {

inline void require_photon_number(double n) {
  if (!std::isfinite(n) || n < 0.0) {
    throw Error(ErrorCode::NegativePhotonNumber, "photon number must be finite and >= 0");
  }
}

}  // namespace detail

/// (i/2) sqrt(N'(N'+1)) for a source pair with N' photons per SPDC mode.
inline CrossCorrelation phase_sensitive_correlation(double N_S_prime,
                                                    const char* mode_pair = kCorrelatedModePairs[0]) {
  detail::require_photon_number(N_S_prime);
  return {0.5 * std::sqrt(N_S_prime * (N_S_prime + 1.0)), {0.0, 1.0}, mode_pair};
}

struct SeriesEstimate {
  double value = 0.0;
  /// Upper bound on the omitted tail; infinite when the ratio test fails.
  double tail_bound = 0.0;
};

/// Truncated Fock-space sum (two equal source contributions of 1/4 each):
///
///   (1/2) sum_{n=1}^{n_max} n N'^(n-1/2) / (N'+1)^(n+1/2)
///
/// Terms are formed in log space. The tail bound uses the term ratio
/// r (n+1)/n, r = N'/(N'+1), which is decreasing in n.
inline SeriesEstimate correlation_series_oracle(double N_S_prime, int n_max) {
  detail::require_photon_number(N_S_prime);
  if (N_S_prime == 0.0 || n_max < 1) return {0.0, 0.0};
  const double log_n = std::log(N_S_prime);
  const double log_n1 = std::log1p(N_S_prime);
  auto term = [&](int n) {
    return n * std::exp((n - 0.5) * log_n - (n + 0.5) * log_n1);
  };
  double sum = 0.0;
  for (int n = 1; n <= n_max; ++n) sum += term(n);

  const double r = N_S_prime / (N_S_prime + 1.0);
  const double ratio = r * (n_max + 2.0) / (n_max + 1.0);
  const double tail = ratio < 1.0 ? 0.5 * term(n_max + 1) / (1.0 - ratio)
                                  : std::numeric_limits<double>::infinity();
  return {0.5 * sum, tail};
}

/// Correlation between the stored mode and the return a_R = sqrt(k) a_4 +
/// sqrt(1-k) a_B. The bath is uncorrelated, so only sqrt(k) survives.
inline CrossCorrelation returned_correlation(double N_S_prime, double kappa) {
  if (!std::isfinite(kappa) || kappa < 0.0 || kappa > 1.0) {
    throw Error(ErrorCode::InvalidReflectance, "kappa must lie in [0, 1]");
  }
  CrossCorrelation c = phase_sensitive_correlation(N_S_prime, "(3,H,S)-(R,V,I)");
  c.magnitude *= std::sqrt(kappa);
  return c;
}

}  // namespace qillum
