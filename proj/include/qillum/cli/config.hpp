#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qillum::cli {

using json = nlohmann::json;

/// Bad user input: unreadable, unknown key, wrong type, invalid value.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumeric = 3, kExitIo = 4 };

inline void reject_unknown_keys(const json& cfg, std::initializer_list<std::string_view> allowed) {
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : cfg.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown config key '" + key + "'");
  }
}

/// User values laid over defaults; the result is what gets hashed.
inline json resolve(const json& defaults, const json& user) {
  json out = defaults;
  for (const auto& [key, value] : user.items()) out[key] = value;
  return out;
}

inline double as_number(const json& node, const std::string& key) {
  if (!node.is_number()) throw ConfigError("'" + key + "' must be a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw ConfigError("'" + key + "' must be finite");
  return v;
}

inline std::int64_t as_integer(const json& node, const std::string& key) {
  const double v = as_number(node, key);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw ConfigError("'" + key + "' must be an integer");
  }
  return static_cast<std::int64_t>(v);
}

/// A grid is a number, an array of numbers, or
/// {"start": a, "stop": b, "points": n, "scale": "linear" | "log"}.
inline std::vector<double> parse_grid(const json& node, const std::string& key) {
  if (node.is_number()) return {as_number(node, key)};
  if (node.is_array()) {
    if (node.empty()) throw ConfigError("'" + key + "' grid is empty");
    std::vector<double> out;
    for (const auto& v : node) out.push_back(as_number(v, key));
    return out;
  }
  if (node.is_object()) {
    for (const auto& [k, _] : node.items()) {
      if (k != "start" && k != "stop" && k != "points" && k != "scale") {
        throw ConfigError("unknown range key '" + key + "." + k + "'");
      }
    }
    if (!node.contains("start") || !node.contains("stop") || !node.contains("points")) {
      throw ConfigError("'" + key + "' range needs start, stop and points");
    }
    const double start = as_number(node["start"], key + ".start");
    const double stop = as_number(node["stop"], key + ".stop");
    const std::int64_t points = as_integer(node["points"], key + ".points");
    const std::string scale = node.value("scale", std::string("linear"));
    if (points < 1) throw ConfigError("'" + key + ".points' must be >= 1");
    if (scale != "linear" && scale != "log") {
      throw ConfigError("'" + key + ".scale' must be linear or log");
    }
    if (scale == "log" && !(start > 0.0 && stop > 0.0)) {
      throw ConfigError("'" + key + "' log range needs positive endpoints");
    }
    std::vector<double> out;
    for (std::int64_t i = 0; i < points; ++i) {
      const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
      out.push_back(scale == "log" ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                                   : start + t * (stop - start));
    }
    return out;
  }
  throw ConfigError("'" + key + "' must be a number, array or range object");
}

/// Integer grid; range points are rounded to the nearest integer.
inline std::vector<std::int64_t> parse_int_grid(const json& node, const std::string& key) {
  const bool rounded = node.is_object();
  std::vector<std::int64_t> out;
  for (double v : parse_grid(node, key)) {
    if (rounded) {
      out.push_back(std::llround(v));
    } else if (v != std::floor(v)) {
      throw ConfigError("'" + key + "' entries must be integers");
    } else {
      out.push_back(static_cast<std::int64_t>(v));
    }
  }
  return out;
}

}  // namespace qillum::cli
