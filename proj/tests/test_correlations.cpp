#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <gtest/gtest.h>

#include "qillum/correlations.hpp"

namespace qillum {
namespace {

// Plain-sum oracle: each term built by repeated multiplication in long double.
long double series_by_products(long double n_prime, int n_max) {
  const long double r = n_prime / (n_prime + 1.0L);
  const long double base = 1.0L / std::sqrt(n_prime * (n_prime + 1.0L));
  long double power = 1.0L;
  long double sum = 0.0L;
  for (int n = 1; n <= n_max; ++n) {
    power *= r;
    sum += n * power * base;
  }
  return 0.5L * sum;
}

TEST(PhaseSensitiveCorrelation, ClosedFormValues) {
  EXPECT_NEAR(phase_sensitive_correlation(0.005).magnitude, 0.035443617196894563, 1e-17);
  EXPECT_NEAR(phase_sensitive_correlation(0.5).magnitude, 0.4330127018922193, 1e-16);
  EXPECT_EQ(phase_sensitive_correlation(0.0).magnitude, 0.0);
}

TEST(PhaseSensitiveCorrelation, IsPurelyImaginary) {
  const std::complex<double> v = phase_sensitive_correlation(0.2).value();
  EXPECT_EQ(v.real(), 0.0);
  EXPECT_GT(v.imag(), 0.0);
}

TEST(PhaseSensitiveCorrelation, SameOnAllFourPairs) {
  const double ref = phase_sensitive_correlation(0.01).magnitude;
  for (const char* pair : kCorrelatedModePairs) {
    const CrossCorrelation c = phase_sensitive_correlation(0.01, pair);
    EXPECT_EQ(c.magnitude, ref);
    EXPECT_EQ(std::string(c.mode_pair), std::string(pair));
  }
}

TEST(PhaseSensitiveCorrelation, MonotoneAndBelowClassicalScale) {
  double prev = -1.0;
  for (double n = 0.0; n <= 10.0; n += 0.05) {
    const double m = phase_sensitive_correlation(n).magnitude;
    EXPECT_GT(m, prev);
    EXPECT_LE(m, 0.5 * (n + 0.5) + 1e-15);
    prev = m;
  }
}

TEST(PhaseSensitiveCorrelation, RejectsNegative) {
  EXPECT_THROW(phase_sensitive_correlation(-1e-3), Error);
  EXPECT_THROW(phase_sensitive_correlation(std::numeric_limits<double>::infinity()), Error);
}

TEST(CorrelationSeries, ConvergesToClosedForm) {
  for (double n : {1e-4, 5e-3, 0.5}) {
    const SeriesEstimate e = correlation_series_oracle(n, 500);
    EXPECT_LE(std::abs(e.value - phase_sensitive_correlation(n).magnitude), 1e-12) << n;
    EXPECT_LE(e.tail_bound, 1e-12);
  }
}

TEST(CorrelationSeries, AgreesWheneverTailIsNegligible) {
  for (double n : {1e-4, 1e-2, 0.1, 0.5, 0.9}) {
    for (int n_max : {10, 50, 200, 500, 2000}) {
      const SeriesEstimate e = correlation_series_oracle(n, n_max);
      if (e.tail_bound > 1e-13) continue;
      const double exact = phase_sensitive_correlation(n).magnitude;
      EXPECT_LE(std::abs(e.value - exact) / exact, 1e-12) << "N'=" << n << " n_max=" << n_max;
    }
  }
  EXPECT_GT(std::abs(correlation_series_oracle(0.5, 10).value - phase_sensitive_correlation(0.5).magnitude),
            1e-6);
}

TEST(CorrelationSeries, MatchesLongDoubleProducts) {
  for (double n : {1e-3, 0.1, 2.0}) {
    const double independent = static_cast<double>(series_by_products(n, 300));
    EXPECT_NEAR(correlation_series_oracle(n, 300).value, independent, 1e-14);
  }
}

TEST(CorrelationSeries, TailBoundCoversTruncationError) {
  for (double n : {0.05, 0.5, 3.0}) {
    const double exact = phase_sensitive_correlation(n).magnitude;
    for (int n_max : {2, 5, 20, 60}) {
      const SeriesEstimate e = correlation_series_oracle(n, n_max);
      EXPECT_LE(e.value, exact + 1e-15);
      EXPECT_GE(e.value + e.tail_bound, exact - 1e-15) << "N'=" << n << " n_max=" << n_max;
    }
  }
}

TEST(CorrelationSeries, PartialSumsIncrease) {
  double prev = 0.0;
  for (int n_max = 1; n_max <= 40; ++n_max) {
    const double v = correlation_series_oracle(0.3, n_max).value;
    if (n_max <= 10) {
      EXPECT_GT(v, prev);
    } else {
      EXPECT_GE(v, prev);
    }
    prev = v;
  }
}

TEST(CorrelationSeries, DegenerateInputs) {
  EXPECT_EQ(correlation_series_oracle(0.0, 100).value, 0.0);
  EXPECT_EQ(correlation_series_oracle(0.1, 0).value, 0.0);
}

TEST(ReturnedCorrelation, ScalesWithRootKappa) {
  const double base = phase_sensitive_correlation(0.005).magnitude;
  for (double k : {0.0, 0.01, 0.25, 1.0}) {
    EXPECT_NEAR(returned_correlation(0.005, k).magnitude, std::sqrt(k) * base, 1e-17);
  }
  EXPECT_THROW(returned_correlation(0.005, 1.5), Error);
  EXPECT_THROW(returned_correlation(0.005, -0.1), Error);
}

}  // namespace
}  // namespace qillum
