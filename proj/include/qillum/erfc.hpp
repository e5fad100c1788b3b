#pragma once

#include <cmath>
#include <numbers>

namespace qillum {

namespace detail {

/// exp(-x^2) with the rounding error of x^2 folded back in.
inline double exp_neg_square(double x) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(-hi) * (1.0 - lo);
}

/// erf through the all-positive series
///   erf(x) = 2/sqrt(pi) exp(-x^2) sum_n 2^n x^(2n+1) / (2n+1)!!
inline double erf_series(double x) {
  const double two_x2 = 2.0 * x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= two_x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return 2.0 * std::numbers::inv_sqrtpi * exp_neg_square(x) * sum;
}

/// erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
/// by the modified Lentz method.
inline double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::numbers::inv_sqrtpi * exp_neg_square(x) / f;
}

}  // namespace detail

/// Complementary error function, independent of the platform libm erfc.
inline double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x > 27.3) return 0.0;
  if (x < 2.0) return 1.0 - detail::erf_series(x);
  return detail::erfc_continued_fraction(x);
}

}  // namespace qillum
