#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qillum/correlations.hpp"
#include "qillum/erfc.hpp"
#include "qillum/error.hpp"
#include "qillum/params.hpp"

namespace qillum {

enum class ReceiverModel { HyperOpa, LoneOpa, CoherentHomodyne, LoneFfSfg, HyperFfSfg };

constexpr const char* to_string(ReceiverModel m) {
  switch (m) {
    case ReceiverModel::HyperOpa: return "HyperOpa";
    case ReceiverModel::LoneOpa: return "LoneOpa";
    case ReceiverModel::CoherentHomodyne: return "CoherentHomodyne";
    case ReceiverModel::LoneFfSfg: return "LoneFfSfg";
    case ReceiverModel::HyperFfSfg: return "HyperFfSfg";
  }
  return "";
}

enum class OpaVariant { Hyper, Lone };

/// Photocounter readings per transmitted iteration: one per amplifier.
constexpr int mode_multiplicity(OpaVariant v) { return v == OpaVariant::Hyper ? 4 : 1; }

struct OpaMeans {
  double N0 = 0.0;
  double N1 = 0.0;
};

/// Mean photon number at one OPA output, c = sqrt(G) a_stored + i sqrt(G-1) a_R^dagger.
///
/// Hyper: each of the four amplifiers sees N_S'/2 stored photons, N_B/4
/// thermal photons and the split correlation (1/2) sqrt(N_S'(N_S'+1)):
///   N0 = G N_S'/2 + (G-1)(N_B/4 + 1)
///   N1 = G N_S'/2 + (G-1)(N_B/4 + k N_S'/2 + 1) + sqrt(G(G-1) k N_S'(N_S'+1))
///
/// Lone: the same chain with full TMSV loads N_S, N_B and correlation
/// sqrt(N_S(N_S+1)), giving the cross term 2 sqrt(G(G-1) k N_S(N_S+1)).
inline OpaMeans opa_output_means(const ProbeParams& probe, const ChannelParams& channel,
                                 const OpaParams& opa, OpaVariant variant) {
  const double G = opa.G();
  const double eps2 = opa.epsilon_sq();
  const double k = channel.kappa;
  if (variant == OpaVariant::Hyper) {
    const double ns = probe.N_S_prime;
    const double stored = G * ns / 2.0;
    const double N0 = stored + eps2 * (channel.N_B / 4.0 + 1.0);
    const double N1 = stored + eps2 * (channel.N_B / 4.0 + k * ns / 2.0 + 1.0) +
                      std::sqrt(G * eps2 * k * ns * (ns + 1.0));
    return {N0, N1};
  }
  const double ns = probe.N_S;
  const double N0 = G * ns + eps2 * (channel.N_B + 1.0);
  const double N1 = G * ns + eps2 * (channel.N_B + k * ns + 1.0) +
                    2.0 * std::sqrt(G * eps2 * k * ns * (ns + 1.0));
  return {N0, N1};
}

/// Standard deviation of a thermal (Bose-Einstein) count with mean N_m.
inline double thermal_sigma(double N_m) { return std::sqrt(N_m * (N_m + 1.0)); }

/// R = (N1 - N0)^2 / (2 (sigma1 + sigma0)^2)
inline double snr(double N0, double N1, double sigma0, double sigma1) {
  const double s = sigma0 + sigma1;
  if (!(s > 0.0)) throw Error(ErrorCode::DegenerateVariance, "sigma0 + sigma1 must be positive");
  const double diff = N1 - N0;
  return diff * diff / (2.0 * s * s);
}

/// Large-noise, weak-signal limit of snr(): k N_S / (4 N_B) for the hyper
/// receiver, twice that for the lone OPA.
inline double snr_approx(const ProbeParams& probe, const ChannelParams& channel,
                         OpaVariant variant = OpaVariant::Hyper) {
  if (!(channel.N_B > 0.0)) {
    throw Error(ErrorCode::DivisionByZeroNoise, "approximate SNR needs N_B > 0");
  }
  const double r = channel.kappa * probe.N_S / (4.0 * channel.N_B);
  return variant == OpaVariant::Hyper ? r : 2.0 * r;
}

/// Threshold on the pooled count: equal standardized distance from both
/// hypothesis means, multiplicity * N * (s0 N1 + s1 N0) / (s0 + s1).
inline double decision_threshold(std::int64_t N, double N0, double N1, double sigma0,
                                 double sigma1, int multiplicity) {
  if (N < 1) throw Error(ErrorCode::NonPositiveIterations, "N must be >= 1");
  const double s = sigma0 + sigma1;
  if (!(s > 0.0)) throw Error(ErrorCode::DegenerateVariance, "sigma0 + sigma1 must be positive");
  return static_cast<double>(multiplicity) * static_cast<double>(N) *
         (sigma0 * N1 + sigma1 * N0) / s;
}

struct GaussianErrorProbability {
  double p_e = 0.5;
  /// exp(-z^2) / (2 z sqrt(pi)) with z^2 = multiplicity R N.
  double upper_bound = std::numeric_limits<double>::infinity();
};

/// p_e = (1/2) erfc(sqrt(multiplicity R N)); multiplicity 4 gives (1/2) erfc(2 sqrt(RN)).
inline GaussianErrorProbability error_probability_gaussian(double R, std::int64_t N,
                                                           int multiplicity) {
  if (N < 1) throw Error(ErrorCode::NonPositiveIterations, "N must be >= 1");
  if (!(R >= 0.0)) throw Error(ErrorCode::NonFiniteInput, "R must be >= 0");
  const double z2 = static_cast<double>(multiplicity) * R * static_cast<double>(N);
  const double z = std::sqrt(z2);
  GaussianErrorProbability out;
  out.p_e = 0.5 * erfc(z);
  if (z > 0.0) out.upper_bound = std::exp(-z2) / (2.0 * z * std::sqrt(std::numbers::pi));
  return out;
}

struct OpaStatistics {
  double N0 = 0.0;
  double N1 = 0.0;
  double sigma0 = 0.0;
  double sigma1 = 0.0;
  double R_exact = 0.0;
  double R_approx = 0.0;
  double N_th = 0.0;
  int multiplicity = 1;
};

struct ReceiverReport {
  ReceiverModel model = ReceiverModel::HyperOpa;
  std::int64_t N = 1;
  std::optional<OpaStatistics> opa;  // photocounting receivers only
  double p_e = 0.5;
  double p_e_bound = std::numeric_limits<double>::infinity();
  double exponent = 0.0;
  double exponent_approx = std::numeric_limits<double>::quiet_NaN();
};

/// Full OPA chain at probe.N iterations.
inline ReceiverReport opa_receiver(const ProbeParams& probe, const ChannelParams& channel,
                                   const OpaParams& opa, OpaVariant variant) {
  const OpaMeans means = opa_output_means(probe, channel, opa, variant);
  OpaStatistics st;
  st.N0 = means.N0;
  st.N1 = means.N1;
  st.sigma0 = thermal_sigma(means.N0);
  st.sigma1 = thermal_sigma(means.N1);
  st.R_exact = snr(st.N0, st.N1, st.sigma0, st.sigma1);
  st.R_approx = channel.N_B > 0.0 ? snr_approx(probe, channel, variant)
                                  : std::numeric_limits<double>::quiet_NaN();
  st.multiplicity = mode_multiplicity(variant);
  st.N_th = decision_threshold(probe.N, st.N0, st.N1, st.sigma0, st.sigma1, st.multiplicity);

  const GaussianErrorProbability pe = error_probability_gaussian(st.R_exact, probe.N, st.multiplicity);
  ReceiverReport r;
  r.model = variant == OpaVariant::Hyper ? ReceiverModel::HyperOpa : ReceiverModel::LoneOpa;
  r.N = probe.N;
  r.opa = st;
  r.p_e = pe.p_e;
  r.p_e_bound = pe.upper_bound;
  const double N = static_cast<double>(probe.N);
  r.exponent = st.multiplicity * st.R_exact * N;
  r.exponent_approx = st.multiplicity * st.R_approx * N;
  return r;
}

/// Coherent-state homodyne baseline, p_e = (1/2) erfc(sqrt(k N N_S / (2 (2 N_B + 1)))).
/// This is the standard Gaussian discrimination result for a coherent
/// probe against a thermal background.
inline ReceiverReport coherent_homodyne(const ProbeParams& probe, const ChannelParams& channel,
                                        std::int64_t N) {
  if (N < 1) throw Error(ErrorCode::NonPositiveIterations, "N must be >= 1");
  const double x = channel.kappa * static_cast<double>(N) * probe.N_S /
                   (2.0 * (2.0 * channel.N_B + 1.0));
  ReceiverReport r;
  r.model = ReceiverModel::CoherentHomodyne;
  r.N = N;
  r.exponent = x;
  if (channel.N_B > 0.0) {
    r.exponent_approx = channel.kappa * static_cast<double>(N) * probe.N_S / (4.0 * channel.N_B);
  }
  const double z = std::sqrt(x);
  r.p_e = 0.5 * erfc(z);
  if (z > 0.0) r.p_e_bound = std::exp(-x) / (2.0 * z * std::sqrt(std::numbers::pi));
  return r;
}

enum class FfSfgVariant { Lone, HyperPerReceiver, HyperTotal };

struct FfSfgExponent {
  double exact = 0.0;
  double approx = 0.0;
};

/// Aggregate SFG output photon number over many feed-forward cycles, which
/// is the error exponent of the receiver.
///
/// Lone: N |<a_R a_I>|^2 / (1 + N_B) with the TMSV value |<a_R a_I>|^2 =
/// k N_S (N_S + 1); approx k N N_S / N_B.
/// HyperPerReceiver: one of four receivers, with the split correlation and
/// N_B / 4 thermal photons; approx k N N_S / (2 N_B).
/// HyperTotal: product of four identical receiver bounds.
inline FfSfgExponent ffsfg_exponent(const ProbeParams& probe, const ChannelParams& channel,
                                    std::int64_t N, FfSfgVariant variant) {
  if (N < 1) throw Error(ErrorCode::NonPositiveIterations, "N must be >= 1");
  if (!(channel.N_B > 0.0)) {
    throw Error(ErrorCode::DivisionByZeroNoise, "FF-SFG exponents need N_B > 0");
  }
  const double n = static_cast<double>(N);
  const double k = channel.kappa;
  if (variant == FfSfgVariant::Lone) {
    const double corr_sq = k * probe.N_S * (probe.N_S + 1.0);
    return {n * corr_sq / (1.0 + channel.N_B), k * n * probe.N_S / channel.N_B};
  }
  const double corr = returned_correlation(probe.N_S_prime, k).magnitude;
  const FfSfgExponent one{n * corr * corr / (1.0 + channel.N_B / 4.0),
                          k * n * probe.N_S / (2.0 * channel.N_B)};
  if (variant == FfSfgVariant::HyperPerReceiver) return one;
  return {4.0 * one.exact, 4.0 * one.approx};
}

/// FF-SFG report with p_e = (1/2) exp(-exponent).
inline ReceiverReport ffsfg_receiver(const ProbeParams& probe, const ChannelParams& channel,
                                     std::int64_t N, bool hyper) {
  const FfSfgExponent e =
      ffsfg_exponent(probe, channel, N, hyper ? FfSfgVariant::HyperTotal : FfSfgVariant::Lone);
  ReceiverReport r;
  r.model = hyper ? ReceiverModel::HyperFfSfg : ReceiverModel::LoneFfSfg;
  r.N = N;
  r.exponent = e.exact;
  r.exponent_approx = e.approx;
  r.p_e = 0.5 * std::exp(-e.exact);
  r.p_e_bound = r.p_e;
  return r;
}

/// Chernoff bound for a TMSV probe at high noise, (1/2) exp(-k N N_S / N_B).
inline double tmsv_qcb_error(const ProbeParams& probe, const ChannelParams& channel,
                             std::int64_t N) {
  if (!(channel.N_B > 0.0)) {
    throw Error(ErrorCode::DivisionByZeroNoise, "TMSV bound needs N_B > 0");
  }
  return 0.5 * std::exp(-channel.kappa * static_cast<double>(N) * probe.N_S / channel.N_B);
}

/// R_exact as a function of gain, for choosing G by hand.
inline std::vector<std::pair<double, double>> gain_scan(const ProbeParams& probe,
                                                        const ChannelParams& channel,
                                                        OpaVariant variant,
                                                        std::span<const double> gains) {
  std::vector<std::pair<double, double>> out;
  out.reserve(gains.size());
  for (double g : gains) {
    const OpaMeans m = opa_output_means(probe, channel, OpaParams::from_gain(g), variant);
    out.emplace_back(g, snr(m.N0, m.N1, thermal_sigma(m.N0), thermal_sigma(m.N1)));
  }
  return out;
}

}  // namespace qillum
