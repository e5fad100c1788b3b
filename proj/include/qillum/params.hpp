#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qillum/error.hpp"

namespace qillum {

inline constexpr int kMaxDegreesOfFreedom = 16;

namespace detail {

inline void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFiniteInput, std::string(name) + " must be finite");
  }
}

}  // namespace detail

/// Transmitter description: M temporal modes, mean signal photon number N_S
/// per use, f binary hyperentangled degrees of freedom and N iterations.
/// Each of the two SPDC sources carries N_S' = N_S / 2.
struct ProbeParams {
  std::int64_t M = 1;
  double N_S = 0.0;
  double N_S_prime = 0.0;
  int f = 0;
  std::int64_t d = 1;
  std::int64_t N = 1;

  bool operator==(const ProbeParams&) const = default;
};

struct RawProbe {
  std::int64_t M = 1;
  double N_S = 0.0;
  int f = 0;
  std::int64_t N = 1;
};

inline ProbeParams validate_probe(const RawProbe& raw) {
  detail::require_finite(raw.N_S, "N_S");
  if (raw.M < 1) {
    throw Error(ErrorCode::NonPositiveM, "M = " + std::to_string(raw.M));
  }
  if (raw.N_S < 0.0) {
    throw Error(ErrorCode::NegativePhotonNumber, "N_S must be >= 0");
  }
  if (raw.f < 0 || raw.f > kMaxDegreesOfFreedom) {
    throw Error(ErrorCode::UnsupportedF, "f = " + std::to_string(raw.f) + " outside [0, 16]");
  }
  if (raw.N < 1) {
    throw Error(ErrorCode::NonPositiveIterations, "N = " + std::to_string(raw.N));
  }
  ProbeParams p;
  p.M = raw.M;
  p.N_S = raw.N_S;
  p.N_S_prime = raw.N_S / 2.0;
  p.f = raw.f;
  p.d = std::int64_t{1} << raw.f;
  p.N = raw.N;
  return p;
}

/// Internal dimension d = 2^f from a raw dimension, rejecting non powers of two.
inline int degrees_of_freedom_for(std::int64_t d) {
  if (d < 1 || (d & (d - 1)) != 0) {
    throw Error(ErrorCode::UnsupportedF, "d = " + std::to_string(d) + " is not a power of two");
  }
  int f = 0;
  while ((std::int64_t{1} << f) < d) ++f;
  if (f > kMaxDegreesOfFreedom) {
    throw Error(ErrorCode::UnsupportedF, "d = " + std::to_string(d) + " too large");
  }
  return f;
}

struct ChannelParams {
  double kappa = 0.0;
  double N_B = 0.0;

  bool operator==(const ChannelParams&) const = default;
};

inline ChannelParams validate_channel(double kappa, double N_B) {
  detail::require_finite(kappa, "kappa");
  detail::require_finite(N_B, "N_B");
  if (kappa < 0.0 || kappa > 1.0) {
    throw Error(ErrorCode::InvalidReflectance, "kappa must lie in [0, 1]");
  }
  if (N_B < 0.0) {
    throw Error(ErrorCode::NegativePhotonNumber, "N_B must be >= 0");
  }
  return ChannelParams{kappa, N_B};
}

/// OPA gain G = 1 + epsilon_sq. The excess gain is stored separately so
/// that G - 1 never has to be recovered by subtraction.
class OpaParams {
 public:
  static OpaParams from_epsilon_sq(double epsilon_sq) {
    detail::require_finite(epsilon_sq, "epsilon_sq");
    if (!(epsilon_sq > 0.0)) {
      throw Error(ErrorCode::InvalidGain, "gain must exceed 1");
    }
    return OpaParams(epsilon_sq);
  }

  static OpaParams from_gain(double G) {
    detail::require_finite(G, "G");
    if (!(G > 1.0)) {
      throw Error(ErrorCode::InvalidGain, "gain must exceed 1");
    }
    return OpaParams(G - 1.0);
  }

  double G() const { return 1.0 + epsilon_sq_; }
  double epsilon_sq() const { return epsilon_sq_; }

  bool operator==(const OpaParams&) const = default;

 private:
  explicit OpaParams(double epsilon_sq) : epsilon_sq_(epsilon_sq) {}
  double epsilon_sq_;
};

struct FfSfgParams {
  std::int64_t K = 1;
};

inline FfSfgParams validate_ffsfg(std::int64_t K) {
  if (K < 1) {
    throw Error(ErrorCode::InvalidCycleCount, "K must be >= 1");
  }
  return FfSfgParams{K};
}

enum class Regime { LowNoiseBad, HighNoise, Unclassified };

constexpr const char* to_string(Regime r) {
  switch (r) {
    case Regime::LowNoiseBad: return "LowNoiseBad";
    case Regime::HighNoise: return "HighNoise";
    case Regime::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

struct RegimeReport {
  Regime regime = Regime::Unclassified;
  std::vector<std::string> violations;
};

// "much less than" is read as one order of magnitude.
inline constexpr double kMuchLess = 0.1;
inline constexpr double kMuchGreater = 10.0;

/// Classify a parameter point. When neither regime holds, the violations of
/// the regime with fewer failed guards are listed (ties go to the low-noise
/// regime).
inline RegimeReport classify_regime(const ProbeParams& probe, const ChannelParams& channel) {
  const double M = static_cast<double>(probe.M);
  std::vector<std::string> low;
  if (!(M * channel.N_B < kMuchLess)) {
    low.push_back("M*N_B = " + std::to_string(M * channel.N_B) + " is not << 1");
  }
  if (!(channel.kappa < kMuchLess * channel.N_B / M)) {
    low.push_back("kappa = " + std::to_string(channel.kappa) + " is not << N_B/M = " +
                  std::to_string(channel.N_B / M));
  }
  std::vector<std::string> high;
  if (!(channel.N_B > kMuchGreater)) {
    high.push_back("N_B = " + std::to_string(channel.N_B) + " is not >> 1");
  }
  if (!(probe.N_S < kMuchLess)) {
    high.push_back("N_S = " + std::to_string(probe.N_S) + " is not << 1");
  }
  if (!(channel.kappa < kMuchLess)) {
    high.push_back("kappa = " + std::to_string(channel.kappa) + " is not << 1");
  }

  if (low.empty()) return {Regime::LowNoiseBad, {}};
  if (high.empty()) return {Regime::HighNoise, {}};
  return {Regime::Unclassified, high.size() < low.size() ? high : low};
}

}  // namespace qillum
