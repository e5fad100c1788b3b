#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "qillum/cli/commands.hpp"
#include "qillum/cli/config.hpp"
#include "qillum/cli/manifest.hpp"

namespace qillum::cli {

inline json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

/// --threads, then QILLUM_THREADS, then the hardware thread count.
inline unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("QILLUM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("QILLUM_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Hyperentangled quantum illumination: Chernoff bounds, receivers, Monte Carlo"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool want_schema = false;

  for (std::string_view name : kCommands) {
    CLI::App* sub = app.add_subcommand(std::string(name), "run the " + std::string(name) + " command");
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "base seed (overrides config)");
    sub->add_option("--threads", threads, "worker threads (default $QILLUM_THREADS or all cores)");
    sub->add_flag("--schema", want_schema, "print the CSV column schema and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (want_schema) {
      out << schema(command);
      return kExitOk;
    }
    const json user = config_path.empty() ? json::object() : load_config(config_path);
    RunOptions opts;
    opts.seed = seed;
    opts.threads = resolve_threads(threads);

    const auto started = std::chrono::system_clock::now();
    const auto t0 = std::chrono::steady_clock::now();
    CommandOutput result = run_command(command, user, opts);
    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& w : result.warnings) err << "warning: " << w << "\n";
    const RunArtifacts art = write_outputs(result, out_dir, started, duration);
    out << art.csv.string() << "\n" << art.manifest.string() << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << (is_numeric_failure(e.code()) ? "numeric error: " : "invalid parameters: ") << e.what()
        << "\n";
    return is_numeric_failure(e.code()) ? kExitNumeric : kExitConfig;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace qillum::cli
