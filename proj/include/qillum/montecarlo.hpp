#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qillum/error.hpp"
#include "qillum/parallel.hpp"
#include "qillum/receivers.hpp"
#include "qillum/rng.hpp"

namespace qillum {

/// Above this many modes the pooled count is drawn as one negative binomial.
inline constexpr std::int64_t kGeometricModeLimit = 32;

namespace detail {

inline void require_mean(double mean, std::int64_t mode_count) {
  if (!std::isfinite(mean) || mean < 0.0) {
    throw Error(ErrorCode::NegativeMean, "mean photon number must be finite and >= 0");
  }
  if (mode_count < 1) throw Error(ErrorCode::InvalidTrialConfig, "mode_count must be >= 1");
}

}  // namespace detail

/// Sum of independent Bose-Einstein counts, one geometric draw per mode.
template <class Rng>
std::int64_t sample_photocount_geometric(double mean, std::int64_t mode_count, Rng& rng) {
  detail::require_mean(mean, mode_count);
  if (mean == 0.0) return 0;
  std::geometric_distribution<std::int64_t> geo(1.0 / (1.0 + mean));
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < mode_count; ++i) total += geo(rng);
  return total;
}

/// Same law as sample_photocount_geometric through the Gamma-Poisson
/// mixture: the sum of n geometric(1/(1+mean)) variables is negative
/// binomial with n successes.
template <class Rng>
std::int64_t sample_photocount_negbin(double mean, std::int64_t mode_count, Rng& rng) {
  detail::require_mean(mean, mode_count);
  if (mean == 0.0) return 0;
  std::gamma_distribution<double> gamma(static_cast<double>(mode_count), mean);
  const double rate = gamma(rng);
  if (!(rate > 0.0)) return 0;
  std::poisson_distribution<std::int64_t> poisson(rate);
  return poisson(rng);
}

/// Pooled count of mode_count thermal modes of mean `mean` each.
template <class Rng>
std::int64_t sample_photocount(double mean, std::int64_t mode_count, Rng& rng) {
  if (mode_count <= kGeometricModeLimit) return sample_photocount_geometric(mean, mode_count, rng);
  return sample_photocount_negbin(mean, mode_count, rng);
}

enum class Hypothesis { Absent, Present, Both };

struct TrialConfig {
  std::uint64_t seed = 0;
  std::int64_t trials = 1;
  std::int64_t N = 1;
  int multiplicity = 4;
  Hypothesis hypothesis = Hypothesis::Both;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

inline constexpr double kWilsonZ = 1.959963984540054;

inline WilsonInterval wilson_interval(std::int64_t successes, std::int64_t n, double z = kWilsonZ) {
  if (n <= 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct TrialOutcome {
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  std::int64_t N = 0;
  int multiplicity = 1;
  std::int64_t mode_count = 0;
  double N_th = 0.0;
  std::int64_t false_alarms = 0;
  std::int64_t misses = 0;
  double empirical_pe = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  /// Half-width of the 95% Wilson interval in units of z.
  double wilson_sigma = 0.0;
  double mean_count_absent = 0.0;
  double var_count_absent = 0.0;
  double mean_count_present = 0.0;
  double var_count_present = 0.0;
  double analytic_pe = 0.5;
  /// True when mode_count * N_m >= 50 for both hypotheses, where the
  /// Gaussian p_e is expected to hold.
  bool in_validity_zone = false;
};

inline constexpr double kValidityZoneCount = 50.0;
inline constexpr std::int64_t kTrialBlock = 1024;

namespace detail {

struct RunningMoments {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const RunningMoments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
};

struct BlockTally {
  std::int64_t false_alarms = 0;
  std::int64_t misses = 0;
  RunningMoments absent;
  RunningMoments present;
};

inline constexpr std::uint64_t kAbsentTag = 0;
inline constexpr std::uint64_t kPresentTag = 1;

}  // namespace detail

/// Threshold test on simulated pooled photocounts. Each (trial, hypothesis)
/// pair draws from its own counter-based stream and trials are reduced in
/// fixed blocks in index order, so the outcome depends only on the seed.
inline TrialOutcome simulate_detection(const ReceiverReport& report, const TrialConfig& config,
                                       unsigned threads = 1) {
  if (!report.opa) {
    throw Error(ErrorCode::InvalidReport, "report has no photocount statistics");
  }
  if (config.trials < 1 || config.N < 1 || config.multiplicity < 1) {
    throw Error(ErrorCode::InvalidTrialConfig, "trials, N and multiplicity must be >= 1");
  }
  const OpaStatistics& st = *report.opa;
  TrialOutcome out;
  out.seed = config.seed;
  out.trials = config.trials;
  out.N = config.N;
  out.multiplicity = config.multiplicity;
  out.mode_count = config.N * config.multiplicity;
  out.N_th = decision_threshold(config.N, st.N0, st.N1, st.sigma0, st.sigma1, config.multiplicity);
  out.analytic_pe = error_probability_gaussian(st.R_exact, config.N, config.multiplicity).p_e;
  const double modes = static_cast<double>(out.mode_count);
  out.in_validity_zone = modes * std::min(st.N0, st.N1) >= kValidityZoneCount;

  const bool draw_absent = config.hypothesis != Hypothesis::Present;
  const bool draw_present = config.hypothesis != Hypothesis::Absent;
  const auto blocks = static_cast<std::size_t>((config.trials + kTrialBlock - 1) / kTrialBlock);
  std::vector<detail::BlockTally> tallies(blocks);

  parallel_for(blocks, threads, [&](std::size_t b) {
    detail::BlockTally t;
    const std::int64_t begin = static_cast<std::int64_t>(b) * kTrialBlock;
    const std::int64_t end = std::min(config.trials, begin + kTrialBlock);
    for (std::int64_t i = begin; i < end; ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      if (draw_absent) {
        CounterRng rng = make_stream(config.seed, idx, detail::kAbsentTag);
        const std::int64_t count = sample_photocount(st.N0, out.mode_count, rng);
        t.absent.add(static_cast<double>(count));
        if (static_cast<double>(count) > out.N_th) ++t.false_alarms;
      }
      if (draw_present) {
        CounterRng rng = make_stream(config.seed, idx, detail::kPresentTag);
        const std::int64_t count = sample_photocount(st.N1, out.mode_count, rng);
        t.present.add(static_cast<double>(count));
        if (!(static_cast<double>(count) > out.N_th)) ++t.misses;
      }
    }
    tallies[b] = t;
  });

  detail::RunningMoments absent;
  detail::RunningMoments present;
  for (const auto& t : tallies) {
    out.false_alarms += t.false_alarms;
    out.misses += t.misses;
    absent.merge(t.absent);
    present.merge(t.present);
  }
  out.mean_count_absent = absent.mean;
  out.var_count_absent = absent.variance();
  out.mean_count_present = present.mean;
  out.var_count_present = present.variance();

  const std::int64_t errors = out.false_alarms + out.misses;
  const std::int64_t draws = config.trials * ((draw_absent ? 1 : 0) + (draw_present ? 1 : 0));
  out.empirical_pe = static_cast<double>(errors) / static_cast<double>(draws);
  const WilsonInterval ci = wilson_interval(errors, draws);
  out.ci_low = ci.low;
  out.ci_high = ci.high;
  out.wilson_sigma = (ci.high - ci.low) / (2.0 * kWilsonZ);
  return out;
}

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_statistic(std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
  if (a.empty() || b.empty()) return 0.0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const std::int64_t x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

struct EquivalenceResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  bool passes = true;
};

/// KS comparison of the per-mode geometric sampler with the Gamma-Poisson
/// sampler at the 1% level, c(0.01) = 1.628.
inline EquivalenceResult negative_binomial_vs_geometric_equivalence(double mean,
                                                                    std::int64_t mode_count,
                                                                    std::int64_t draws,
                                                                    std::uint64_t seed) {
  if (mode_count > kGeometricModeLimit) {
    throw Error(ErrorCode::InvalidTrialConfig, "exact sampler limited to 32 modes");
  }
  if (draws < 1) throw Error(ErrorCode::InvalidTrialConfig, "draws must be >= 1");
  std::vector<std::int64_t> exact(static_cast<std::size_t>(draws));
  std::vector<std::int64_t> fast(static_cast<std::size_t>(draws));
  for (std::int64_t i = 0; i < draws; ++i) {
    CounterRng r1 = make_stream(seed, static_cast<std::uint64_t>(i), 0);
    CounterRng r2 = make_stream(seed, static_cast<std::uint64_t>(i), 1);
    exact[static_cast<std::size_t>(i)] = sample_photocount_geometric(mean, mode_count, r1);
    fast[static_cast<std::size_t>(i)] = sample_photocount_negbin(mean, mode_count, r2);
  }
  EquivalenceResult res;
  res.statistic = ks_statistic(std::move(exact), std::move(fast));
  const double n = static_cast<double>(draws);
  res.critical_value = 1.628 * std::sqrt(2.0 * n / (n * n));
  res.passes = res.statistic <= res.critical_value;
  return res;
}

}  // namespace qillum
