#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>

#include "qillum/cli/commands.hpp"
#include "qillum/cli/config.hpp"

namespace qillum::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a over the canonical dump. nlohmann::json objects keep keys sorted,
/// so the hash does not depend on key order in the input file.
inline std::uint64_t config_hash(std::string_view command, const json& config) {
  const std::string canonical = json{{"command", command}, {"config", config}}.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string make_run_id(std::uint64_t hash, std::chrono::system_clock::time_point when) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(when.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d%02d%02dT%02d%02d%02d.%03dZ-%016llx", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(ms % 1000), static_cast<unsigned long long>(hash));
  return buf;
}

struct RunArtifacts {
  std::string run_id;
  std::filesystem::path csv;
  std::filesystem::path manifest;
};

inline void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << body;
  if (!out) throw IoError("write to " + path.string() + " failed");
}

/// Writes `<command>.csv` and `<run_id>.manifest.json` into out_dir.
inline RunArtifacts write_outputs(const CommandOutput& result, const std::filesystem::path& out_dir,
                                  std::chrono::system_clock::time_point started, double duration_s) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  RunArtifacts art;
  art.run_id = make_run_id(config_hash(result.command, result.config), started);
  art.csv = out_dir / (result.command + ".csv");
  art.manifest = out_dir / (art.run_id + ".manifest.json");
  write_file(art.csv, result.table.str());

  json manifest{{"run_id", art.run_id},
                {"tool_version", kToolVersion},
                {"command", result.command},
                {"config", result.config},
                {"config_hash", config_hash(result.command, result.config)},
                {"seed", result.seed ? json(*result.seed) : json(nullptr)},
                {"duration_s", duration_s},
                {"outputs", json::array({art.csv.filename().string()})},
                {"warnings", result.warnings}};
  write_file(art.manifest, manifest.dump(2) + "\n");
  return art;
}

}  // namespace qillum::cli
