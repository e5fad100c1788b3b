#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qillum {

enum class ErrorCode {
  NonFiniteInput,
  NonPositiveM,
  NonPositiveIterations,
  NegativePhotonNumber,
  UnsupportedF,
  InvalidReflectance,
  InvalidGain,
  InvalidCycleCount,
  DimensionOverflow,
  DimensionMismatch,
  NotHermitian,
  InvalidDensity,
  ConvergenceFailure,
  NotPositiveSemidefinite,
  InvalidExponent,
  InvalidRegime,
  ZeroNoiseDegenerate,
  DivisionByZeroNoise,
  NonFiniteObjective,
  DegenerateVariance,
  NegativeMean,
  InvalidTrialConfig,
  InvalidReport,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::NonPositiveM: return "NonPositiveM";
    case ErrorCode::NonPositiveIterations: return "NonPositiveIterations";
    case ErrorCode::NegativePhotonNumber: return "NegativePhotonNumber";
    case ErrorCode::UnsupportedF: return "UnsupportedF";
    case ErrorCode::InvalidReflectance: return "InvalidReflectance";
    case ErrorCode::InvalidGain: return "InvalidGain";
    case ErrorCode::InvalidCycleCount: return "InvalidCycleCount";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::InvalidDensity: return "InvalidDensity";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::InvalidRegime: return "InvalidRegime";
    case ErrorCode::ZeroNoiseDegenerate: return "ZeroNoiseDegenerate";
    case ErrorCode::DivisionByZeroNoise: return "DivisionByZeroNoise";
    case ErrorCode::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::NegativeMean: return "NegativeMean";
    case ErrorCode::InvalidTrialConfig: return "InvalidTrialConfig";
    case ErrorCode::InvalidReport: return "InvalidReport";
  }
  return "Unknown";
}

/// Numeric failures, as opposed to bad inputs. The CLI maps these to a
/// distinct exit code.
constexpr bool is_numeric_failure(ErrorCode code) {
  return code == ErrorCode::ConvergenceFailure ||
         code == ErrorCode::NotPositiveSemidefinite ||
         code == ErrorCode::NonFiniteObjective ||
         code == ErrorCode::InvalidDensity;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qillum
