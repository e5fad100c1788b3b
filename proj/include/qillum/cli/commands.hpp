#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qillum/chernoff.hpp"
#include "qillum/cli/config.hpp"
#include "qillum/cli/csv.hpp"
#include "qillum/correlations.hpp"
#include "qillum/montecarlo.hpp"
#include "qillum/parallel.hpp"
#include "qillum/params.hpp"
#include "qillum/probe_states.hpp"
#include "qillum/receivers.hpp"

namespace qillum::cli {

struct RunOptions {
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

struct CommandOutput {
  std::string command;
  json config;  // resolved: defaults plus user values and flag overrides
  CsvTable table;
  std::vector<std::string> warnings;
  std::optional<std::uint64_t> seed;
};

struct Column {
  const char* name;
  const char* doc;
};

// clang-format off
inline const std::vector<Column> kChernoffColumns = {
    {"M", "temporal modes"},
    {"d", "internal dimension 2^f"},
    {"kappa", "reflectance"},
    {"N_B", "thermal photons per temporal mode"},
    {"s_star", "minimizing Chernoff parameter"},
    {"Q", "Tr[rho1^s rho0^(1-s)] at s_star"},
    {"one_minus_Q", "1 - Q, computed without subtraction"},
    {"N", "iterations"},
    {"exponent_N", "N * (1 - Q)"},
    {"bound_N", "(1/2) Q^N"},
    {"gain_vs_d1", "(1 - Q) / (1 - Q at d = 1), same M, kappa, N_B"},
    {"method", "closed | numeric | both"},
    {"residual", "Q_closed - Q_numeric at s_star (method both)"},
};

inline const std::vector<Column> kFigure1Columns = {
    {"N", "iterations"},
    {"HyperOpa", "p_e, four-OPA hyperentangled receiver"},
    {"LoneOpa", "p_e, single OPA with TMSV probe"},
    {"CoherentHomodyne", "p_e, coherent state with homodyne detection"},
    {"TmsvQcb", "(1/2) exp(-kappa N N_S / N_B)"},
    {"LoneFfSfg", "(1/2) exp(-exact FF-SFG exponent)"},
    {"HyperFfSfg", "(1/2) exp(-exact exponent of four FF-SFG receivers)"},
    {"HyperOpa_exponent_approx", "4 N kappa N_S / (4 N_B)"},
    {"LoneFfSfg_exponent_approx", "kappa N N_S / N_B"},
};

inline const std::vector<Column> kMonteCarloColumns = {
    {"model", "HyperOpa | LoneOpa"},
    {"N", "iterations per trial"},
    {"trials", "trials per hypothesis"},
    {"seed", "base seed"},
    {"mode_count", "multiplicity * N thermal modes pooled per count"},
    {"N_th", "decision threshold"},
    {"false_alarms", "absent-hypothesis counts above N_th"},
    {"misses", "present-hypothesis counts at or below N_th"},
    {"empirical_pe", "errors / draws"},
    {"ci_low", "Wilson 95% lower"},
    {"ci_high", "Wilson 95% upper"},
    {"wilson_sigma", "Wilson half-width / 1.96"},
    {"mean_count_absent", "sample mean, object absent"},
    {"var_count_absent", "sample variance, object absent"},
    {"mean_count_present", "sample mean, object present"},
    {"var_count_present", "sample variance, object present"},
    {"analytic_pe", "(1/2) erfc(sqrt(multiplicity R N))"},
    {"in_validity_zone", "1 if mode_count * N_m >= 50 for both hypotheses"},
};

inline const std::vector<Column> kCorrelationColumns = {
    {"N_S_prime", "photons per SPDC source mode"},
    {"closed_form", "(1/2) sqrt(N'(N'+1))"},
    {"series", "truncated Fock sum"},
    {"tail_bound", "bound on the omitted tail"},
    {"abs_diff", "|closed_form - series|"},
};

inline const std::vector<Column> kOpaColumns = {
    {"model", "HyperOpa | LoneOpa | CoherentHomodyne | LoneFfSfg | HyperFfSfg"},
    {"G", "OPA gain"},
    {"N", "iterations"},
    {"N0", "mean output photons, object absent"},
    {"N1", "mean output photons, object present"},
    {"sigma0", "sqrt(N0 (N0 + 1))"},
    {"sigma1", "sqrt(N1 (N1 + 1))"},
    {"R_exact", "(N1 - N0)^2 / (2 (sigma0 + sigma1)^2)"},
    {"R_approx", "large-noise limit of R"},
    {"N_th", "decision threshold"},
    {"p_e", "error probability"},
    {"p_e_bound", "upper bound on p_e"},
    {"exponent", "error exponent"},
    {"exponent_approx", "approximate error exponent"},
};

inline const std::vector<Column> kFfSfgColumns = {
    {"N", "iterations"},
    {"K", "feed-forward cycles (bookkeeping)"},
    {"lone_exact", "N kappa N_S (N_S + 1) / (1 + N_B)"},
    {"lone_approx", "kappa N N_S / N_B"},
    {"hyper_per_receiver_exact", "kappa N N_S (N_S/2 + 1) / (8 (1 + N_B/4))"},
    {"hyper_per_receiver_approx", "kappa N N_S / (2 N_B)"},
    {"hyper_total_exact", "4 * per-receiver exact"},
    {"hyper_total_approx", "2 kappa N N_S / N_B"},
    {"p_e_lone", "(1/2) exp(-lone_exact)"},
    {"p_e_hyper", "(1/2) exp(-hyper_total_exact)"},
};
// clang-format on

inline const std::vector<std::string_view> kCommands = {"chernoff", "figure1",      "montecarlo",
                                                        "correlations", "opa", "ffsfg"};

inline const std::vector<Column>& columns_for(std::string_view command) {
  if (command == "chernoff") return kChernoffColumns;
  if (command == "figure1") return kFigure1Columns;
  if (command == "montecarlo") return kMonteCarloColumns;
  if (command == "correlations") return kCorrelationColumns;
  if (command == "opa") return kOpaColumns;
  if (command == "ffsfg") return kFfSfgColumns;
  throw ConfigError("unknown command '" + std::string(command) + "'");
}

inline std::string schema(std::string_view command) {
  std::string out = std::string(command) + ".csv columns:\n";
  for (const Column& c : columns_for(command)) {
    out += "  " + std::string(c.name) + "  " + c.doc + "\n";
  }
  return out;
}

namespace detail {

inline CsvTable make_table(std::string_view command) {
  std::vector<std::string> header;
  for (const Column& c : columns_for(command)) header.emplace_back(c.name);
  return CsvTable(std::move(header));
}

inline OpaParams gain_from(const json& cfg) {
  const bool has_g = !cfg["G"].is_null();
  const bool has_e = !cfg["epsilon_sq"].is_null();
  if (has_g && has_e) throw ConfigError("give either G or epsilon_sq, not both");
  if (has_g) return OpaParams::from_gain(as_number(cfg["G"], "G"));
  return OpaParams::from_epsilon_sq(as_number(cfg["epsilon_sq"], "epsilon_sq"));
}

inline ProbeParams probe_from(double N_S, std::int64_t N, std::int64_t M = 1, int f = 2) {
  return validate_probe(RawProbe{M, N_S, f, N});
}

/// Default high-noise point: N_S = kappa = 0.01, N_B = 20, G = 1.005.
inline json high_noise_defaults() {
  return json{{"N_S", 0.01}, {"kappa", 0.01}, {"N_B", 20.0}, {"G", nullptr}, {"epsilon_sq", 0.005}};
}

inline void note_regime(std::vector<std::string>& warnings, const ProbeParams& probe,
                        const ChannelParams& channel, Regime expected) {
  const RegimeReport r = classify_regime(probe, channel);
  if (r.regime == expected) return;
  std::string msg = std::string("point outside ") + to_string(expected) + " regime";
  for (const auto& v : r.violations) msg += "; " + v;
  warnings.push_back(std::move(msg));
}

inline void require_seed(json& cfg, const RunOptions& opts) {
  if (opts.seed) cfg["seed"] = *opts.seed;
  if (cfg["seed"].is_null()) throw ConfigError("montecarlo requires a seed (config 'seed' or --seed)");
  if (!cfg["seed"].is_number_unsigned() && !cfg["seed"].is_number_integer()) {
    throw ConfigError("'seed' must be a non-negative integer");
  }
  if (cfg["seed"].is_number_integer() && cfg["seed"].get<std::int64_t>() < 0) {
    throw ConfigError("'seed' must be a non-negative integer");
  }
}

}  // namespace detail

inline CommandOutput cmd_chernoff(const json& user, const RunOptions& opts) {
  reject_unknown_keys(user, {"M", "d", "f", "kappa", "N_B", "method", "N", "tol", "dim_cap"});
  if (user.contains("d") && user.contains("f")) throw ConfigError("give either d or f, not both");
  json defaults{{"M", json::array({10})}, {"kappa", json::array({1e-7})},
                {"N_B", json::array({1e-3})}, {"method", "closed"}, {"N", 1},
                {"tol", kChernoffTol}, {"dim_cap", kDefaultDimensionCap}};
  if (!user.contains("f")) defaults["d"] = json::array({4});
  json cfg = resolve(defaults, user);

  const auto Ms = parse_int_grid(cfg["M"], "M");
  std::vector<std::int64_t> ds;
  if (cfg.contains("f")) {
    for (std::int64_t f : parse_int_grid(cfg["f"], "f")) {
      if (f < 0 || f > kMaxDegreesOfFreedom) throw ConfigError("'f' must lie in [0, 16]");
      ds.push_back(std::int64_t{1} << f);
    }
  } else {
    ds = parse_int_grid(cfg["d"], "d");
  }
  const auto kappas = parse_grid(cfg["kappa"], "kappa");
  const auto nbs = parse_grid(cfg["N_B"], "N_B");
  if (!cfg["method"].is_string()) throw ConfigError("'method' must be a string");
  const std::string method = cfg["method"].get<std::string>();
  if (method != "closed" && method != "numeric" && method != "both") {
    throw ConfigError("'method' must be closed, numeric or both");
  }
  const std::int64_t N = as_integer(cfg["N"], "N");
  const double tol = as_number(cfg["tol"], "tol");
  const Index dim_cap = as_integer(cfg["dim_cap"], "dim_cap");
  if (N < 1) throw ConfigError("'N' must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("'tol' must be positive");

  struct Point {
    std::int64_t M, d;
    double kappa, N_B;
  };
  std::vector<Point> points;
  for (auto M : Ms)
    for (auto d : ds)
      for (double k : kappas)
        for (double nb : nbs) points.push_back({M, d, k, nb});

  std::vector<std::string> warnings;
  for (const Point& p : points) {
    const ProbeParams probe = validate_probe(RawProbe{p.M, 0.0, degrees_of_freedom_for(p.d), N});
    const ChannelParams channel = validate_channel(p.kappa, p.N_B);
    detail::note_regime(warnings, probe, channel, Regime::LowNoiseBad);
  }

  const bool closed = method != "numeric";
  auto minimize_at = [&](std::int64_t M, std::int64_t d, double k, double nb, bool use_closed) {
    if (use_closed) {
      return minimize_q([&](double s) { return q_closed(M, d, k, nb, s); }, tol);
    }
    const HypothesisPair h = build_hypotheses(M, d, k, nb, dim_cap);
    const SpectralChernoff numeric(h.rho0, h.rho1);
    return minimize_q([&](double s) { return numeric(s); }, tol);
  };

  std::vector<std::vector<CsvTable::Cell>> rows(points.size());
  parallel_for(points.size(), opts.threads, [&](std::size_t i) {
    const Point& p = points[i];
    const ChernoffResult res = minimize_at(p.M, p.d, p.kappa, p.N_B, closed);
    std::optional<double> residual;
    if (method == "both") {
      const HypothesisPair h = build_hypotheses(p.M, p.d, p.kappa, p.N_B, dim_cap);
      const SpectralChernoff numeric(h.rho0, h.rho1);
      residual = res.q_star - numeric(res.s_star).q;
    }
    const ChernoffResult base = p.d == 1 ? res : minimize_at(p.M, 1, p.kappa, p.N_B, closed);
    std::vector<CsvTable::Cell> row{
        CsvTable::integer(p.M),
        CsvTable::integer(p.d),
        CsvTable::num(p.kappa),
        CsvTable::num(p.N_B),
        CsvTable::num(res.s_star),
        CsvTable::num(res.q_star),
        CsvTable::num(res.one_minus_q),
        CsvTable::integer(N),
        CsvTable::num(static_cast<double>(N) * res.one_minus_q),
        CsvTable::num(res.n_shot_bound(N)),
        base.one_minus_q > 0.0 ? CsvTable::num(res.one_minus_q / base.one_minus_q) : CsvTable::empty(),
        CsvTable::text(method),
        residual ? CsvTable::num(*residual) : CsvTable::empty(),
    };
    rows[i] = std::move(row);
  });

  CsvTable table = detail::make_table("chernoff");
  for (auto& r : rows) table.add_row(std::move(r));
  return {"chernoff", cfg, std::move(table), std::move(warnings), std::nullopt};
}

/// Default N grid: 40 log-spaced points from 1e3 to 1e7.
inline json default_figure1_grid() {
  return json{{"start", 1e3}, {"stop", 1e7}, {"points", 40}, {"scale", "log"}};
}

inline CommandOutput cmd_figure1(const json& user, const RunOptions&) {
  reject_unknown_keys(user, {"N_S", "kappa", "N_B", "G", "epsilon_sq", "N"});
  json defaults = detail::high_noise_defaults();
  defaults["N"] = default_figure1_grid();
  if (user.contains("G")) defaults["epsilon_sq"] = nullptr;
  json cfg = resolve(defaults, user);

  const double N_S = as_number(cfg["N_S"], "N_S");
  const ChannelParams channel =
      validate_channel(as_number(cfg["kappa"], "kappa"), as_number(cfg["N_B"], "N_B"));
  const OpaParams opa = detail::gain_from(cfg);
  const auto Ns = parse_int_grid(cfg["N"], "N");

  std::vector<std::string> warnings;
  detail::note_regime(warnings, detail::probe_from(N_S, 1), channel, Regime::HighNoise);

  CsvTable table = detail::make_table("figure1");
  for (std::int64_t N : Ns) {
    const ProbeParams probe = detail::probe_from(N_S, N);
    const ReceiverReport hyper = opa_receiver(probe, channel, opa, OpaVariant::Hyper);
    const ReceiverReport lone = opa_receiver(probe, channel, opa, OpaVariant::Lone);
    const ReceiverReport homodyne = coherent_homodyne(probe, channel, N);
    const ReceiverReport ff_lone = ffsfg_receiver(probe, channel, N, false);
    const ReceiverReport ff_hyper = ffsfg_receiver(probe, channel, N, true);
    table.add_row({CsvTable::integer(N), CsvTable::num(hyper.p_e), CsvTable::num(lone.p_e),
                   CsvTable::num(homodyne.p_e), CsvTable::num(tmsv_qcb_error(probe, channel, N)),
                   CsvTable::num(ff_lone.p_e), CsvTable::num(ff_hyper.p_e),
                   CsvTable::num(hyper.exponent_approx), CsvTable::num(ff_lone.exponent_approx)});
  }
  return {"figure1", cfg, std::move(table), std::move(warnings), std::nullopt};
}

inline CommandOutput cmd_montecarlo(const json& user, const RunOptions& opts) {
  reject_unknown_keys(user, {"model", "N_S", "kappa", "N_B", "G", "epsilon_sq", "N", "trials",
                             "seed", "hypothesis"});
  json defaults = detail::high_noise_defaults();
  defaults["model"] = "HyperOpa";
  defaults["N"] = json::array({360000});
  defaults["trials"] = 100000;
  defaults["seed"] = nullptr;
  defaults["hypothesis"] = "both";
  if (user.contains("G")) defaults["epsilon_sq"] = nullptr;
  json cfg = resolve(defaults, user);
  detail::require_seed(cfg, opts);
  const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();

  if (!cfg["model"].is_string()) throw ConfigError("'model' must be a string");
  const std::string model = cfg["model"].get<std::string>();
  if (model != "HyperOpa" && model != "LoneOpa") {
    throw ConfigError("'model' must be HyperOpa or LoneOpa");
  }
  const OpaVariant variant = model == "HyperOpa" ? OpaVariant::Hyper : OpaVariant::Lone;
  if (!cfg["hypothesis"].is_string()) throw ConfigError("'hypothesis' must be a string");
  const std::string hyp = cfg["hypothesis"].get<std::string>();
  Hypothesis hypothesis = Hypothesis::Both;
  if (hyp == "absent") {
    hypothesis = Hypothesis::Absent;
  } else if (hyp == "present") {
    hypothesis = Hypothesis::Present;
  } else if (hyp != "both") {
    throw ConfigError("'hypothesis' must be absent, present or both");
  }
  const double N_S = as_number(cfg["N_S"], "N_S");
  const ChannelParams channel =
      validate_channel(as_number(cfg["kappa"], "kappa"), as_number(cfg["N_B"], "N_B"));
  const OpaParams opa = detail::gain_from(cfg);
  const std::int64_t trials = as_integer(cfg["trials"], "trials");
  if (trials < 1) throw ConfigError("'trials' must be >= 1");
  const auto Ns = parse_int_grid(cfg["N"], "N");

  std::vector<std::string> warnings;
  detail::note_regime(warnings, detail::probe_from(N_S, 1), channel, Regime::HighNoise);

  CsvTable table = detail::make_table("montecarlo");
  for (std::int64_t N : Ns) {
    const ProbeParams probe = detail::probe_from(N_S, N);
    const ReceiverReport report = opa_receiver(probe, channel, opa, variant);
    const TrialConfig tc{seed, trials, N, mode_multiplicity(variant), hypothesis};
    const TrialOutcome o = simulate_detection(report, tc, opts.threads);
    if (!o.in_validity_zone) {
      warnings.push_back("N = " + std::to_string(N) +
                         ": outside the Gaussian validity zone; analytic_pe is indicative only");
    }
    table.add_row({CsvTable::text(model), CsvTable::integer(N), CsvTable::integer(trials),
                   CsvTable::text(std::to_string(seed)), CsvTable::integer(o.mode_count),
                   CsvTable::num(o.N_th), CsvTable::integer(o.false_alarms),
                   CsvTable::integer(o.misses), CsvTable::num(o.empirical_pe),
                   CsvTable::num(o.ci_low), CsvTable::num(o.ci_high), CsvTable::num(o.wilson_sigma),
                   CsvTable::num(o.mean_count_absent), CsvTable::num(o.var_count_absent),
                   CsvTable::num(o.mean_count_present), CsvTable::num(o.var_count_present),
                   CsvTable::num(o.analytic_pe), CsvTable::integer(o.in_validity_zone ? 1 : 0)});
  }
  return {"montecarlo", cfg, std::move(table), std::move(warnings), seed};
}

inline CommandOutput cmd_correlations(const json& user, const RunOptions&) {
  reject_unknown_keys(user, {"N_S_prime", "n_max"});
  json cfg = resolve(json{{"N_S_prime", json::array({1e-4, 5e-3, 0.5})}, {"n_max", 500}}, user);
  const auto grid = parse_grid(cfg["N_S_prime"], "N_S_prime");
  const std::int64_t n_max = as_integer(cfg["n_max"], "n_max");
  if (n_max < 1 || n_max > 100000000) throw ConfigError("'n_max' must lie in [1, 1e8]");

  CsvTable table = detail::make_table("correlations");
  for (double n : grid) {
    const double closed = phase_sensitive_correlation(n).magnitude;
    const SeriesEstimate series = correlation_series_oracle(n, static_cast<int>(n_max));
    table.add_row({CsvTable::num(n), CsvTable::num(closed), CsvTable::num(series.value),
                   CsvTable::num(series.tail_bound), CsvTable::num(std::abs(closed - series.value))});
  }
  return {"correlations", cfg, std::move(table), {}, std::nullopt};
}

inline CommandOutput cmd_opa(const json& user, const RunOptions&) {
  reject_unknown_keys(user, {"N_S", "kappa", "N_B", "G", "epsilon_sq", "N", "models"});
  json defaults = detail::high_noise_defaults();
  defaults["N"] = json::array({1000000});
  defaults["models"] = json::array({"HyperOpa", "LoneOpa", "CoherentHomodyne", "LoneFfSfg", "HyperFfSfg"});
  if (user.contains("G")) defaults["epsilon_sq"] = nullptr;
  json cfg = resolve(defaults, user);
  if (!cfg["G"].is_null() && !cfg["epsilon_sq"].is_null()) {
    throw ConfigError("give either G or epsilon_sq, not both");
  }

  std::vector<OpaParams> gains;
  if (!cfg["G"].is_null()) {
    for (double g : parse_grid(cfg["G"], "G")) gains.push_back(OpaParams::from_gain(g));
  } else {
    for (double e : parse_grid(cfg["epsilon_sq"], "epsilon_sq")) {
      gains.push_back(OpaParams::from_epsilon_sq(e));
    }
  }
  const double N_S = as_number(cfg["N_S"], "N_S");
  const ChannelParams channel =
      validate_channel(as_number(cfg["kappa"], "kappa"), as_number(cfg["N_B"], "N_B"));
  const auto Ns = parse_int_grid(cfg["N"], "N");
  if (!cfg["models"].is_array()) throw ConfigError("'models' must be an array");
  std::vector<ReceiverModel> models;
  for (const auto& m : cfg["models"]) {
    const std::string name = m.is_string() ? m.get<std::string>() : "";
    bool found = false;
    for (ReceiverModel rm : {ReceiverModel::HyperOpa, ReceiverModel::LoneOpa,
                             ReceiverModel::CoherentHomodyne, ReceiverModel::LoneFfSfg,
                             ReceiverModel::HyperFfSfg}) {
      if (name == to_string(rm)) {
        models.push_back(rm);
        found = true;
      }
    }
    if (!found) throw ConfigError("unknown model '" + name + "'");
  }

  std::vector<std::string> warnings;
  detail::note_regime(warnings, detail::probe_from(N_S, 1), channel, Regime::HighNoise);

  CsvTable table = detail::make_table("opa");
  for (const OpaParams& opa : gains) {
    for (std::int64_t N : Ns) {
      const ProbeParams probe = detail::probe_from(N_S, N);
      for (ReceiverModel m : models) {
        ReceiverReport r;
        switch (m) {
          case ReceiverModel::HyperOpa: r = opa_receiver(probe, channel, opa, OpaVariant::Hyper); break;
          case ReceiverModel::LoneOpa: r = opa_receiver(probe, channel, opa, OpaVariant::Lone); break;
          case ReceiverModel::CoherentHomodyne: r = coherent_homodyne(probe, channel, N); break;
          case ReceiverModel::LoneFfSfg: r = ffsfg_receiver(probe, channel, N, false); break;
          case ReceiverModel::HyperFfSfg: r = ffsfg_receiver(probe, channel, N, true); break;
        }
        auto opt = [&](double OpaStatistics::*field) {
          return r.opa ? CsvTable::num((*r.opa).*field) : CsvTable::empty();
        };
        table.add_row({CsvTable::text(to_string(m)), CsvTable::num(opa.G()), CsvTable::integer(N),
                       opt(&OpaStatistics::N0), opt(&OpaStatistics::N1),
                       opt(&OpaStatistics::sigma0), opt(&OpaStatistics::sigma1),
                       opt(&OpaStatistics::R_exact), opt(&OpaStatistics::R_approx),
                       opt(&OpaStatistics::N_th), CsvTable::num(r.p_e), CsvTable::num(r.p_e_bound),
                       CsvTable::num(r.exponent), CsvTable::num(r.exponent_approx)});
      }
    }
  }
  return {"opa", cfg, std::move(table), std::move(warnings), std::nullopt};
}

inline CommandOutput cmd_ffsfg(const json& user, const RunOptions&) {
  reject_unknown_keys(user, {"N_S", "kappa", "N_B", "N", "K"});
  json cfg = resolve(json{{"N_S", 0.01}, {"kappa", 0.01}, {"N_B", 20.0}, {"N", default_figure1_grid()},
                          {"K", 100}},
                     user);
  const double N_S = as_number(cfg["N_S"], "N_S");
  const ChannelParams channel =
      validate_channel(as_number(cfg["kappa"], "kappa"), as_number(cfg["N_B"], "N_B"));
  const FfSfgParams ff = validate_ffsfg(as_integer(cfg["K"], "K"));
  const auto Ns = parse_int_grid(cfg["N"], "N");

  std::vector<std::string> warnings;
  detail::note_regime(warnings, detail::probe_from(N_S, 1), channel, Regime::HighNoise);

  CsvTable table = detail::make_table("ffsfg");
  for (std::int64_t N : Ns) {
    const ProbeParams probe = detail::probe_from(N_S, N);
    const FfSfgExponent lone = ffsfg_exponent(probe, channel, N, FfSfgVariant::Lone);
    const FfSfgExponent one = ffsfg_exponent(probe, channel, N, FfSfgVariant::HyperPerReceiver);
    const FfSfgExponent total = ffsfg_exponent(probe, channel, N, FfSfgVariant::HyperTotal);
    table.add_row({CsvTable::integer(N), CsvTable::integer(ff.K), CsvTable::num(lone.exact),
                   CsvTable::num(lone.approx), CsvTable::num(one.exact), CsvTable::num(one.approx),
                   CsvTable::num(total.exact), CsvTable::num(total.approx),
                   CsvTable::num(0.5 * std::exp(-lone.exact)),
                   CsvTable::num(0.5 * std::exp(-total.exact))});
  }
  return {"ffsfg", cfg, std::move(table), std::move(warnings), std::nullopt};
}

inline CommandOutput run_command(std::string_view command, const json& user, const RunOptions& opts) {
  if (command == "chernoff") return cmd_chernoff(user, opts);
  if (command == "figure1") return cmd_figure1(user, opts);
  if (command == "montecarlo") return cmd_montecarlo(user, opts);
  if (command == "correlations") return cmd_correlations(user, opts);
  if (command == "opa") return cmd_opa(user, opts);
  if (command == "ffsfg") return cmd_ffsfg(user, opts);
  throw ConfigError("unknown command '" + std::string(command) + "'");
}

}  // namespace qillum::cli
