#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qillum/chernoff.hpp"
#include "qillum/probe_states.hpp"

namespace qillum {
namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected qillum::Error";
  return ErrorCode::NonFiniteInput;
}

// Direct evaluation of the same expression in long double without any
// log-space rewriting. Only trustworthy where 1 - Q is not tiny.
long double q_direct(std::int64_t M, std::int64_t d, long double kappa, long double nb, long double s) {
  const long double dd = static_cast<long double>(d * d);
  const long double c = nb / (dd * M);
  const long double u = dd * kappa * M / ((1.0L - kappa) * nb);
  return std::pow(1.0L - kappa, s) * (1.0L + c * (std::pow(1.0L + u, s) - 1.0L));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(QClosed, MatchesDirectLongDoubleEvaluation) {
  for (std::int64_t M : {1, 3, 10}) {
    for (std::int64_t d : {1, 2, 4}) {
      for (double kappa : {0.05, 0.3, 0.9}) {
        for (double s : {0.1, 0.37, 0.5, 0.8}) {
          const double nb = 0.05;
          const ChernoffPoint p = q_closed(M, d, kappa, nb, s);
          const long double q = q_direct(M, d, kappa, nb, s);
          EXPECT_LE(rel(p.q, static_cast<double>(q)), 1e-13);
          EXPECT_LE(rel(p.one_minus_q, static_cast<double>(1.0L - q)), 1e-10);
        }
      }
    }
  }
}

TEST(QClosed, EndpointsAndTrivialChannel) {
  const ChernoffPoint at0 = q_closed(10, 4, 1e-3, 1e-3, 0.0);
  EXPECT_EQ(at0.q, 1.0);
  EXPECT_EQ(at0.one_minus_q, 0.0);
  const ChernoffPoint at1 = q_closed(10, 4, 1e-3, 1e-3, 1.0);
  EXPECT_NEAR(at1.q, 1.0, 1e-15);
  EXPECT_NEAR(at1.one_minus_q, 0.0, 1e-15);
  const ChernoffPoint k0 = q_closed(10, 4, 0.0, 1e-3, 0.4);
  EXPECT_EQ(k0.q, 1.0);
  EXPECT_EQ(k0.one_minus_q, 0.0);
}

TEST(QClosed, KappaOneIsPowerOfC) {
  const double c = 1e-2 / (4.0 * 2.0);
  for (double s : {0.2, 0.5, 0.7}) {
    EXPECT_NEAR(q_closed(2, 2, 1.0, 1e-2, s).q, std::pow(c, 1.0 - s), 1e-15);
  }
}

TEST(QClosed, Errors) {
  EXPECT_EQ(code_of([] { q_closed(0, 1, 0.1, 1e-3, 0.5); }), ErrorCode::NonPositiveM);
  EXPECT_EQ(code_of([] { q_closed(1, 1, 1.5, 1e-3, 0.5); }), ErrorCode::InvalidReflectance);
  EXPECT_EQ(code_of([] { q_closed(1, 1, 0.1, -1e-3, 0.5); }), ErrorCode::NegativePhotonNumber);
  EXPECT_EQ(code_of([] { q_closed(1, 1, 0.1, 0.0, 0.5); }), ErrorCode::ZeroNoiseDegenerate);
  EXPECT_EQ(code_of([] { q_closed(10, 1, 0.1, 0.1, 0.5); }), ErrorCode::InvalidRegime);
  EXPECT_EQ(code_of([] { q_closed(1, 1, 0.1, 1e-3, 1.2); }), ErrorCode::InvalidExponent);
}

TEST(QClosed, BoundedAndLogConvexInS) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lk(-8.0, -0.5);
  std::uniform_real_distribution<double> ln(-4.0, -1.5);
  std::uniform_int_distribution<int> mi(1, 10);
  std::uniform_int_distribution<int> fi(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t M = mi(rng);
    const std::int64_t d = std::int64_t{1} << fi(rng);
    const double kappa = std::pow(10.0, lk(rng));
    const double nb = std::pow(10.0, ln(rng)) / static_cast<double>(M);
    const double h = 0.01;
    for (double s = 0.05; s <= 0.95; s += 0.05) {
      const ChernoffPoint p = q_closed(M, d, kappa, nb, s);
      ASSERT_GT(p.q, 0.0);
      ASSERT_LE(p.q, 1.0);
      ASSERT_GE(p.one_minus_q, 0.0);
      const double l0 = std::log(q_closed(M, d, kappa, nb, s - h).q);
      const double l1 = std::log(p.q);
      const double l2 = std::log(q_closed(M, d, kappa, nb, s + h).q);
      ASSERT_GE(l0 + l2 - 2.0 * l1, -1e-14) << "M=" << M << " d=" << d << " s=" << s;
    }
  }
}

TEST(QClosed, LogMidpointConvexOn99PointGrid) {
  for (std::int64_t d : {1, 2, 4}) {
    std::vector<double> logq;
    for (int i = 1; i <= 99; ++i) logq.push_back(std::log(q_closed(8, d, 1e-6, 1e-2, i / 100.0).q));
    for (std::size_t i = 1; i + 1 < logq.size(); ++i) {
      EXPECT_LE(logq[i], 0.5 * (logq[i - 1] + logq[i + 1]) + 1e-12);
    }
  }
}

TEST(SpectralChernoff, AgreesWithClosedForm) {
  for (std::int64_t M : {1, 2, 4}) {
    for (std::int64_t d : {1, 2, 4}) {
      for (auto [kappa, nb] : std::vector<std::pair<double, double>>{{1e-7, 1e-3}, {1e-2, 5e-2}}) {
        const HypothesisPair h = build_hypotheses(M, d, kappa, nb);
        const SpectralChernoff spectral(h.rho0, h.rho1);
        for (double s : {0.1, 0.5, 0.9}) {
          const ChernoffPoint a = spectral(s);
          const ChernoffPoint b = q_closed(M, d, kappa, nb, s);
          EXPECT_LE(rel(a.q, b.q), 1e-12);
          // The spectral complement carries absolute rounding of order 1e-16.
          EXPECT_NEAR(a.one_minus_q, b.one_minus_q, 1e-14)
              << "M=" << M << " d=" << d << " kappa=" << kappa << " s=" << s;
        }
      }
    }
  }
}

TEST(QNumeric, AgreesWithSpectralEvaluator) {
  const HypothesisPair h = build_hypotheses(3, 2, 0.05, 0.02);
  const SpectralChernoff spectral(h.rho0, h.rho1);
  for (double s : {0.1, 0.3, 0.5, 0.9}) {
    EXPECT_NEAR(q_numeric(h.rho0, h.rho1, s), spectral(s).q, 1e-12);
  }
}

TEST(QNumeric, KappaOneMatchesClosedForm) {
  const HypothesisPair h = build_hypotheses(2, 2, 1.0, 1e-2);
  for (double s : {0.2, 0.5, 0.8}) {
    EXPECT_LE(rel(q_numeric(h.rho0, h.rho1, s), q_closed(2, 2, 1.0, 1e-2, s).q), 1e-10);
    EXPECT_LE(rel(SpectralChernoff(h.rho0, h.rho1)(s).q, q_closed(2, 2, 1.0, 1e-2, s).q), 1e-10);
  }
}

TEST(QNumeric, IdenticalStatesGiveOne) {
  const HypothesisPair h = build_hypotheses(2, 4, 0.0, 1e-2);
  EXPECT_NEAR(q_numeric(h.rho0, h.rho1, 0.5), 1.0, 1e-13);
  EXPECT_NEAR(SpectralChernoff(h.rho0, h.rho1)(0.5).one_minus_q, 0.0, 1e-15);
}

TEST(QNumeric, ZeroNoiseStillEvaluates) {
  const HypothesisPair h = build_hypotheses(2, 2, 0.1, 0.0);
  const ChernoffPoint p = SpectralChernoff(h.rho0, h.rho1)(0.5);
  EXPECT_TRUE(std::isfinite(p.q));
  EXPECT_GE(p.one_minus_q, 0.0);
  EXPECT_NEAR(p.q, q_numeric(h.rho0, h.rho1, 0.5), 1e-12);
}

TEST(QNumeric, Errors) {
  const HypothesisPair h = build_hypotheses(1, 1, 0.1, 1e-2);
  EXPECT_EQ(code_of([&] { q_numeric(h.rho0, h.rho1, 0.0); }), ErrorCode::InvalidExponent);
  EXPECT_EQ(code_of([&] { q_numeric(h.rho0, h.rho1, 1.0); }), ErrorCode::InvalidExponent);
  const HypothesisPair other = build_hypotheses(1, 2, 0.1, 1e-2);
  EXPECT_EQ(code_of([&] { q_numeric(h.rho0, other.rho1, 0.5); }), ErrorCode::DimensionMismatch);
}

TEST(MinimizeQ, FindsInteriorMinimumOfKnownFunction) {
  // Q(s) = a^s b^(1-s) + a^(1-s) b^s is symmetric with its minimum at 1/2.
  const ChernoffResult r = minimize_q(
      [](double s) { return 0.5 * (std::pow(0.2, s) * std::pow(0.8, 1 - s) + std::pow(0.2, 1 - s) * std::pow(0.8, s)); });
  EXPECT_NEAR(r.s_star, 0.5, 1e-5);
  EXPECT_NEAR(r.q_star, 0.4, 1e-12);
}

TEST(MinimizeQ, ClampsToBracket) {
  const ChernoffResult r = minimize_q([](double s) { return 1.0 - 0.1 * s; });
  EXPECT_NEAR(r.s_star, kChernoffUpper, 1e-5);
}

TEST(MinimizeQ, RejectsNonFiniteObjective) {
  EXPECT_EQ(code_of([] { minimize_q([](double) { return std::nan(""); }); }),
            ErrorCode::NonFiniteObjective);
}

TEST(MinimizeQ, LowNoiseOptimumNearOneHalf) {
  for (std::int64_t d : {1, 2, 4}) {
    const ChernoffResult r =
        minimize_q([&](double s) { return q_closed(10, d, 1e-7, 1e-3, s); });
    EXPECT_NEAR(r.s_star, 0.5, 0.02);
    const double approx = static_cast<double>(d * d) * 1e-14 * 10.0 / (8.0 * 1e-3);
    EXPECT_LE(rel(r.one_minus_q, approx), 0.02) << "d=" << d;
  }
}

TEST(MinimizeQ, OptimumNeverExceedsAnyGridPoint) {
  const auto fn = [](double s) { return q_closed(4, 2, 0.05, 0.1, s); };
  const ChernoffResult r = minimize_q(fn);
  for (double s = kChernoffLower; s <= kChernoffUpper; s += 0.01) {
    EXPECT_LE(r.q_star, fn(s).q + 1e-15);
  }
}

TEST(ChernoffResult, NShotBound) {
  const ChernoffResult r{0.5, 1.0 - 1e-10, 1e-10};
  const long double direct = 0.5L * std::pow(1.0L - 1e-10L, 1000000.0L);
  EXPECT_LE(rel(r.n_shot_bound(1000000), static_cast<double>(direct)), 1e-12);
  const ChernoffResult big{0.5, 0.9, 0.1};
  EXPECT_LE(rel(big.n_shot_bound(500), static_cast<double>(0.5L * std::pow(0.9L, 500.0L))), 1e-12);
  EXPECT_NEAR(r.log_n_shot_bound(0), std::log(0.5), 1e-15);
}

TEST(ExponentCatalog, RatiosBetweenProtocols) {
  const ProbeParams probe = validate_probe({10, 0.01, 2, 1000});
  const ChannelParams channel = validate_channel(1e-3, 1e-3);
  const auto cat = exponent_catalog(probe, channel);
  ASSERT_EQ(cat.size(), 6u);
  auto get = [&](Protocol p) {
    for (const auto& e : cat)
      if (e.protocol == p) return e.exponent;
    return std::nan("");
  };
  EXPECT_DOUBLE_EQ(get(Protocol::HyperLowNoise) / get(Protocol::TmsvLowNoise), 16.0);
  EXPECT_DOUBLE_EQ(get(Protocol::HyperGeneralF), get(Protocol::HyperLowNoise));
  EXPECT_DOUBLE_EQ(get(Protocol::TmsvLowNoise) / get(Protocol::SinglePhoton), 10.0);
  EXPECT_DOUBLE_EQ(get(Protocol::CoherentState), 1e-5);
  EXPECT_DOUBLE_EQ(get(Protocol::TmsvHighNoise), 1e-3 * 1000 * 0.01 / 1e-3);
  for (const auto& e : cat) EXPECT_EQ(e.prefactor, 0.5);
}

TEST(ExponentCatalog, GeneralFScalesAsFourToTheF) {
  const ChannelParams channel = validate_channel(1e-3, 1e-3);
  double prev = 0.0;
  for (int f = 0; f <= 6; ++f) {
    const auto cat = exponent_catalog(validate_probe({5, 0.01, f, 100}), channel);
    const double e = cat.back().exponent;
    if (f > 0) EXPECT_DOUBLE_EQ(e / prev, 4.0);
    prev = e;
  }
}

TEST(ExponentCatalog, ZeroNoiseRejected) {
  EXPECT_EQ(code_of([] { exponent_catalog(validate_probe({1, 0.01, 2, 1}), validate_channel(0.1, 0.0)); }),
            ErrorCode::DivisionByZeroNoise);
}

}  // namespace
}  // namespace qillum
