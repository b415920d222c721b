// Command-line front end: subcommand parsing with a flat key=value config
// file, per-scenario domain validation, dispatch into the experiment runners
// and CSV/JSON table writers.
//
// Exit codes: 0 success, 1 runtime or invariant failure, 2 usage error.
#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qsthermo/experiments.hpp"

namespace qsthermo {

enum class Scenario { theorem1, case1_fixed, case1_varying, case2_fixed, case2_varying, sweep };
enum class OutputFormat { csv, json };

inline const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::theorem1: return "theorem1";
    case Scenario::case1_fixed: return "case1-fixed";
    case Scenario::case1_varying: return "case1-varying";
    case Scenario::case2_fixed: return "case2-fixed";
    case Scenario::case2_varying: return "case2-varying";
    case Scenario::sweep: return "sweep";
  }
  return "?";
}

// Built-in defaults are the standard scenario settings: p = q = 0.8, gamma = 1,
// r on the 51-point grid 0.5 .. 1.0, 11 lambda steps, 200 samples, seed 42.
struct RunConfig {
  Scenario scenario = Scenario::theorem1;
  std::optional<double> p, q, gamma;  // unset means scenario default (q defaults to p)
  double r_min = 0.5;
  double r_max = 1.0;
  int steps = 51;
  int lambda_steps = 11;
  int samples = 200;
  std::uint64_t seed = 42;
  std::string out;  // empty -> "<scenario>.<format>"
  OutputFormat format = OutputFormat::csv;

  bool operator==(const RunConfig&) const = default;

  double resolved_p() const { return p.value_or(0.8); }
  double resolved_q() const { return q.value_or(resolved_p()); }
  double resolved_gamma() const { return gamma.value_or(1.0); }
  std::string resolved_out() const {
    if (!out.empty()) return out;
    return std::string(scenario_name(scenario)) + (format == OutputFormat::csv ? ".csv" : ".json");
  }
};

struct ParseResult {
  int exit_code = 0;
  bool should_run = false;
  RunConfig config{};
  std::string message;  // usage, help or error text; empty when should_run
};

// Default grids for the general sweep (collapsed to a single value when the
// matching flag is given).
inline const std::vector<double> kSweepPGrid = {0.55, 0.65, 0.75, 0.85, 0.95};
inline const std::vector<double> kSweepQGrid = {0.0, 0.25, 0.5, 0.75, 1.0};
inline const std::vector<double> kSweepGammaGrid = {0.0, 0.5, 1.0};

inline std::string usage_text() {
  return
      "usage: qsthermo <scenario> [flags]\n"
      "\n"
      "scenarios:\n"
      "  theorem1       trace distance of causally separable outputs to tau_p\n"
      "  case1-fixed    |+> controller, work against the fixed bath at T_p\n"
      "  case1-varying  |+> controller, work against the input-state bath T_r\n"
      "  case2-fixed    thermal controller, fixed bath at T_p\n"
      "  case2-varying  thermal controller, input-state bath T_r\n"
      "  sweep          brute-force engine sweep over (p, q, gamma, r)\n"
      "\n"
      "flags (command line overrides --config file overrides defaults):\n"
      "  --p X              GAD equilibrium parameter (default 0.8)\n"
      "  --q X              PF keep probability (default: equal to p)\n"
      "  --gamma X          GAD annihilation parameter (default 1.0)\n"
      "  --r-min X          input-state grid start (default 0.5)\n"
      "  --r-max X          input-state grid end (default 1.0)\n"
      "  --steps N          points in the r grid (default 51)\n"
      "  --lambda-steps N   points in the lambda grid, theorem1 only (default 11)\n"
      "  --samples N        random input states, theorem1 only (default 200)\n"
      "  --seed N           64-bit RNG seed (default 42)\n"
      "  --out PATH         output file (default <scenario>.<format>)\n"
      "  --format csv|json  output format (default csv)\n"
      "  --config FILE      flat key=value file, keys named like the long flags\n"
      "  --help             print this text\n";
}

namespace detail {

inline ParseResult usage_error(const std::string& msg) {
  ParseResult r;
  r.exit_code = 2;
  r.message = "error: " + msg + "\n\n" + usage_text();
  return r;
}

inline bool parse_double(const std::string& s, double& out) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE || !std::isfinite(v)) return false;
  out = v;
  return true;
}

inline bool parse_int(const std::string& s, long long& out) {
  char* end = nullptr;
  errno = 0;
  out = std::strtoll(s.c_str(), &end, 10);
  return end == s.c_str() + s.size() && !s.empty() && errno != ERANGE;
}

inline bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty() || s[0] == '-') return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtoull(s.c_str(), &end, 10);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

}  // namespace detail

// args excludes the program name. Flags may be "--flag value" or
// "--flag=value"; later occurrences win.
inline ParseResult parse_args(const std::vector<std::string>& args) {
  using detail::usage_error;

  if (args.empty()) return usage_error("missing scenario");
  if (args[0] == "--help" || args[0] == "-h") {
    ParseResult r;
    r.exit_code = 0;
    r.message = usage_text();
    return r;
  }

  RunConfig cfg;
  if (args[0] == "theorem1") cfg.scenario = Scenario::theorem1;
  else if (args[0] == "case1-fixed") cfg.scenario = Scenario::case1_fixed;
  else if (args[0] == "case1-varying") cfg.scenario = Scenario::case1_varying;
  else if (args[0] == "case2-fixed") cfg.scenario = Scenario::case2_fixed;
  else if (args[0] == "case2-varying") cfg.scenario = Scenario::case2_varying;
  else if (args[0] == "sweep") cfg.scenario = Scenario::sweep;
  else return usage_error("unknown scenario '" + args[0] + "'");

  static const std::vector<std::string> known = {"p",       "q",          "gamma",   "r-min",
                                                 "r-max",   "steps",      "lambda-steps",
                                                 "samples", "seed",       "out",     "format",
                                                 "config"};

  // First pass: collect raw values, command line after config file.
  std::map<std::string, std::string> raw;
  std::vector<std::pair<std::string, std::string>> cli_pairs;
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string tok = args[i];
    if (tok == "--help" || tok == "-h") {
      ParseResult r;
      r.exit_code = 0;
      r.message = usage_text();
      return r;
    }
    if (tok.rfind("--", 0) != 0) return usage_error("unexpected argument '" + tok + "'");
    tok = tok.substr(2);
    std::string value;
    if (const auto eq = tok.find('='); eq != std::string::npos) {
      value = tok.substr(eq + 1);
      tok = tok.substr(0, eq);
    } else {
      if (i + 1 >= args.size()) return usage_error("--" + tok + ": missing value");
      value = args[++i];
    }
    if (std::find(known.begin(), known.end(), tok) == known.end())
      return usage_error("unknown flag --" + tok);
    cli_pairs.emplace_back(tok, value);
  }

  for (const auto& [k, v] : cli_pairs)
    if (k == "config") raw["config"] = v;
  if (raw.count("config")) {
    std::ifstream in(raw["config"]);
    if (!in) return usage_error("--config: cannot open '" + raw["config"] + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r");
      line = line.substr(first, last - first + 1);
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        return usage_error("--config: line " + std::to_string(lineno) + " is not key=value");
      std::string k = line.substr(0, eq);
      std::string v = line.substr(eq + 1);
      while (!k.empty() && (k.back() == ' ' || k.back() == '\t')) k.pop_back();
      while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.erase(v.begin());
      if (std::find(known.begin(), known.end(), k) == known.end() || k == "config")
        return usage_error("--config: unknown key '" + k + "'");
      raw[k] = v;
    }
  }
  for (const auto& [k, v] : cli_pairs)
    if (k != "config") raw[k] = v;  // command line wins over config file

  const bool is_case = cfg.scenario != Scenario::theorem1 && cfg.scenario != Scenario::sweep;
  const bool varying =
      cfg.scenario == Scenario::case1_varying || cfg.scenario == Scenario::case2_varying;

  // Second pass: typed conversion and per-scenario domain checks.
  for (const auto& [key, value] : raw) {
    if (key == "config") continue;
    if (key == "p" || key == "q" || key == "gamma" || key == "r-min" || key == "r-max") {
      double v = 0.0;
      if (!detail::parse_double(value, v))
        return usage_error("--" + key + ": '" + value + "' is not a number");
      if (key == "p") {
        if (cfg.scenario == Scenario::theorem1) {
          if (!(v >= 0.0 && v <= 1.0))
            return usage_error("--p: value " + value + " outside valid range [0, 1] for theorem1");
        } else if (!(v > 0.5 && v < 1.0)) {
          return usage_error("--p: value " + value + " outside valid range (0.5, 1) for " +
                             scenario_name(cfg.scenario));
        }
        cfg.p = v;
      } else if (key == "q") {
        if (is_case)
          return usage_error("--q: not applicable to " + std::string(scenario_name(cfg.scenario)) +
                             " (q = p there)");
        if (!(v >= 0.0 && v <= 1.0))
          return usage_error("--q: value " + value + " outside valid range [0, 1]");
        cfg.q = v;
      } else if (key == "gamma") {
        if (!(v >= 0.0 && v <= 1.0))
          return usage_error("--gamma: value " + value + " outside valid range [0, 1]");
        if (is_case && v != 1.0)
          return usage_error("--gamma: " + std::string(scenario_name(cfg.scenario)) +
                             " requires gamma = 1");
        cfg.gamma = v;
      } else {
        const char* range = varying ? "(0.5, 1)" : "[0.5, 1]";
        if (cfg.scenario != Scenario::theorem1 && !(v >= 0.5 && v <= 1.0))
          return usage_error("--" + key + ": value " + value + " outside valid range " + range +
                             " for " + scenario_name(cfg.scenario));
        (key == "r-min" ? cfg.r_min : cfg.r_max) = v;
      }
    } else if (key == "steps" || key == "lambda-steps" || key == "samples") {
      long long v = 0;
      if (!detail::parse_int(value, v))
        return usage_error("--" + key + ": '" + value + "' is not an integer");
      if (key == "steps") {
        if (v < 2 || v > 1000000)
          return usage_error("--steps: value " + value + " outside valid range [2, 1000000]");
        cfg.steps = static_cast<int>(v);
      } else if (key == "lambda-steps") {
        if (v < 1 || v > 100000)
          return usage_error("--lambda-steps: value " + value + " outside valid range [1, 100000]");
        cfg.lambda_steps = static_cast<int>(v);
      } else {
        if (v < 1 || v > 10000000)
          return usage_error("--samples: value " + value + " outside valid range [1, 10000000]");
        cfg.samples = static_cast<int>(v);
      }
    } else if (key == "seed") {
      std::uint64_t v = 0;
      if (!detail::parse_u64(value, v))
        return usage_error("--seed: '" + value + "' is not a 64-bit unsigned integer");
      cfg.seed = v;
    } else if (key == "out") {
      if (value.empty()) return usage_error("--out: path must not be empty");
      cfg.out = value;
    } else if (key == "format") {
      if (value == "csv") cfg.format = OutputFormat::csv;
      else if (value == "json") cfg.format = OutputFormat::json;
      else return usage_error("--format: '" + value + "' is not one of csv, json");
    }
  }

  if (cfg.r_min > cfg.r_max)
    return usage_error("--r-min: value exceeds --r-max");

  ParseResult r;
  r.should_run = true;
  r.config = cfg;
  return r;
}

// Flag rendering that parse_args maps back to the identical RunConfig.
inline std::vector<std::string> render_flags(const RunConfig& cfg) {
  std::vector<std::string> v{scenario_name(cfg.scenario)};
  auto push = [&v](const std::string& flag, const std::string& val) {
    v.push_back(flag);
    v.push_back(val);
  };
  if (cfg.p) push("--p", format_double(*cfg.p));
  if (cfg.q) push("--q", format_double(*cfg.q));
  if (cfg.gamma) push("--gamma", format_double(*cfg.gamma));
  push("--r-min", format_double(cfg.r_min));
  push("--r-max", format_double(cfg.r_max));
  push("--steps", std::to_string(cfg.steps));
  push("--lambda-steps", std::to_string(cfg.lambda_steps));
  push("--samples", std::to_string(cfg.samples));
  push("--seed", std::to_string(cfg.seed));
  if (!cfg.out.empty()) push("--out", cfg.out);
  push("--format", cfg.format == OutputFormat::csv ? "csv" : "json");
  return v;
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    os << (c ? "," : "") << detail::csv_escape(t.columns[c]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << detail::csv_escape(row[c]);
    os << "\n";
  }
}

// Array of flat records mirroring the CSV columns; numeric cells are written
// verbatim so both formats carry the same digits.
inline void write_json(const Table& t, std::ostream& os) {
  os << "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << "  {";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      os << (c ? "," : "") << "\"" << detail::json_escape(t.columns[c]) << "\":";
      if (t.text_column[c]) os << "\"" << detail::json_escape(t.rows[r][c]) << "\"";
      else os << t.rows[r][c];
    }
    os << "}" << (r + 1 < t.rows.size() ? "," : "") << "\n";
  }
  os << "]\n";
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

namespace detail {

inline bool all_finite(const std::vector<SweepRecord>& recs) {
  for (const auto& r : recs) {
    for (double v : {r.r, r.p, r.q, r.gamma, r.lam, r.pop0, r.pop1, r.f_switch, r.f_separable,
                     r.w_switch, r.w_separable, r.w_pf_then_gad, r.w_gad_then_pf, r.w_mix_half,
                     r.ctrl_offdiag})
      if (!std::isfinite(v)) return false;
  }
  return true;
}

inline bool write_table(const Table& t, const RunConfig& cfg, std::ostream& log) {
  std::ofstream f(cfg.resolved_out(), std::ios::binary);
  if (!f) {
    log << "error: cannot open output file '" << cfg.resolved_out() << "'\n";
    return false;
  }
  if (cfg.format == OutputFormat::csv) write_csv(t, f);
  else write_json(t, f);
  if (!f.good()) {
    log << "error: failed while writing '" << cfg.resolved_out() << "'\n";
    return false;
  }
  return true;
}

}  // namespace detail

// Runs the configured scenario, writes the table and prints a one-line
// summary. Returns 0 on success, 1 on I/O failure or any enforced invariant
// violation (Theorem 1 distance, closed-form/engine agreement, marginal
// pinning, work dominance, finiteness).
inline int run(const RunConfig& cfg, std::ostream& log) {
  const double p = cfg.resolved_p();

  if (cfg.scenario == Scenario::theorem1) {
    const auto grid = linspace(0.0, 1.0, static_cast<std::size_t>(cfg.lambda_steps));
    const auto rep = run_theorem1(p, cfg.resolved_q(), cfg.resolved_gamma(), grid,
                                  static_cast<std::size_t>(cfg.samples), cfg.seed);
    if (!detail::write_table(to_table(rep), cfg, log)) return 1;
    log << "theorem1: " << rep.lambda_grid.size() << " lambdas x " << rep.samples
        << " samples, max distance " << format_double(rep.max_distance) << " ("
        << (rep.theorem_applies ? (rep.pass ? "pass" : "FAIL") : "informational, gamma != 1")
        << ") -> " << cfg.resolved_out() << "\n";
    return rep.theorem_applies && !rep.pass ? 1 : 0;
  }

  RunDiagnostics diag;
  std::vector<SweepRecord> recs;
  const auto r_grid = linspace(cfg.r_min, cfg.r_max, static_cast<std::size_t>(cfg.steps));
  bool enforce_dominance = true;
  switch (cfg.scenario) {
    case Scenario::case1_fixed: recs = run_case1_fixed_bath(p, r_grid, &diag); break;
    case Scenario::case1_varying: recs = run_case1_varying_bath(p, r_grid, &diag); break;
    case Scenario::case2_fixed: recs = run_case2(p, r_grid, BathScenario::fixed, &diag); break;
    case Scenario::case2_varying: recs = run_case2(p, r_grid, BathScenario::varying, &diag); break;
    case Scenario::sweep: {
      enforce_dominance = false;  // no tau_p pinning away from gamma = 1
      const auto p_grid = cfg.p ? std::vector<double>{*cfg.p} : kSweepPGrid;
      const auto q_grid = cfg.q ? std::vector<double>{*cfg.q} : kSweepQGrid;
      const auto g_grid = cfg.gamma ? std::vector<double>{*cfg.gamma} : kSweepGammaGrid;
      recs = run_general_sweep(p_grid, q_grid, g_grid, r_grid, computational_assignment(),
                               hadamard_basis(), DensityMatrix<2>(plus_projector()), &diag);
      break;
    }
    default: break;
  }

  if (!detail::write_table(to_table(recs), cfg, log)) return 1;

  bool ok = detail::all_finite(recs);
  double max_dev = std::max({diag.max_closed_engine_dev, diag.max_marginal_pinning, diag.max_prob_sum_dev});
  if (cfg.scenario != Scenario::sweep) {
    ok = ok && diag.max_closed_engine_dev <= 1e-12 && diag.max_marginal_pinning <= 1e-12;
  }
  ok = ok && diag.max_prob_sum_dev <= 1e-12;
  if (enforce_dominance && diag.min_dominance_slack < -1e-12) ok = false;

  log << scenario_name(cfg.scenario) << ": " << recs.size() << " rows, max invariant deviation "
      << format_double(max_dev) << (ok ? "" : " (FAIL)") << " -> " << cfg.resolved_out() << "\n";
  return ok ? 0 : 1;
}

}  // namespace qsthermo
