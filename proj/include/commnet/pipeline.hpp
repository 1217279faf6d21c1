#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "commnet/csv.hpp"
#include "commnet/graph_export.hpp"
#include "commnet/report_io.hpp"
#include "commnet/synth.hpp"
#include "commnet/temporal.hpp"

namespace commnet {

/// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseFailure = 1;  // strict-mode ingest failure
inline constexpr int kExitConfigError = 2;

struct RunConfig {
  std::vector<std::string> inputs;
  std::string window_mode = "calendar-month";  // or "duration:<days>"
  RoleThresholds thresholds;
  std::optional<std::string> seed_user;
  std::uint64_t louvain_seed = 0;
  std::string out_dir = ".";
  bool gexf = false;
  bool dot = false;
  bool strict = false;
  unsigned jobs = 1;
  std::string bridge_mode = "same-tweet";  // or "engager-retweets-bridge"
};

namespace detail {

inline std::string trim_copy(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

inline std::optional<bool> parse_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  return std::nullopt;
}

template <typename T>
inline std::optional<T> parse_number(const std::string& v) {
  std::istringstream in(v);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) return std::nullopt;
  return out;
}

}  // namespace detail

/// Reads a key-value file: one `key = value` pair per line, `#` comments,
/// blank lines ignored. Order is preserved so later keys win.
inline std::optional<std::vector<std::pair<std::string, std::string>>>
parse_kv_file(const std::string& path, std::string* error = nullptr) {
  std::ifstream in(path);
  if (!in) {
    if (error) *error = "cannot open '" + path + "'";
    return std::nullopt;
  }
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = detail::trim_copy(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      if (error)
        *error = path + ":" + std::to_string(lineno) + ": expected key = value";
      return std::nullopt;
    }
    out.emplace_back(detail::trim_copy(s.substr(0, eq)),
                     detail::trim_copy(s.substr(eq + 1)));
  }
  return out;
}

/// Applies one configuration key to a RunConfig. Returns an error message
/// for unknown keys or malformed values. The `thresholds` key loads another
/// key-value file in place.
inline std::optional<std::string> apply_config_entry(RunConfig& cfg,
                                                     const std::string& key,
                                                     const std::string& value) {
  auto bad = [&](const char* what) {
    return std::optional<std::string>("bad value for '" + key + "': " + what);
  };
  if (key == "input") {
    cfg.inputs.push_back(value);
    return std::nullopt;
  }
  if (key == "window") {
    cfg.window_mode = value;
    return std::nullopt;
  }
  if (key == "seed-user") {
    cfg.seed_user = value;
    return std::nullopt;
  }
  if (key == "out") {
    cfg.out_dir = value;
    return std::nullopt;
  }
  if (key == "bridge-mode") {
    if (value != "same-tweet" && value != "engager-retweets-bridge")
      return bad("expected same-tweet or engager-retweets-bridge");
    cfg.bridge_mode = value;
    return std::nullopt;
  }
  if (key == "louvain-seed") {
    auto n = detail::parse_number<std::uint64_t>(value);
    if (!n) return bad("expected an unsigned integer");
    cfg.louvain_seed = *n;
    return std::nullopt;
  }
  if (key == "jobs") {
    auto n = detail::parse_number<unsigned>(value);
    if (!n || *n < 1) return bad("expected a positive integer");
    cfg.jobs = *n;
    return std::nullopt;
  }
  if (key == "gexf" || key == "dot" || key == "strict") {
    auto b = detail::parse_bool(value);
    if (!b) return bad("expected true or false");
    (key == "gexf" ? cfg.gexf : key == "dot" ? cfg.dot : cfg.strict) = *b;
    return std::nullopt;
  }
  if (key == "top-k" || key == "top_k") {
    auto n = detail::parse_number<std::size_t>(value);
    if (!n || *n < 1) return bad("expected a positive integer");
    cfg.thresholds.top_k = *n;
    return std::nullopt;
  }
  if (key == "sink_out_max" || key == "engager_in_max" ||
      key == "builder_degree_max" || key == "min_influencers_linked") {
    auto n = detail::parse_number<std::uint32_t>(value);
    if (!n) return bad("expected an unsigned integer");
    if (key == "sink_out_max") cfg.thresholds.sink_out_max = *n;
    else if (key == "engager_in_max") cfg.thresholds.engager_in_max = *n;
    else if (key == "builder_degree_max") cfg.thresholds.builder_degree_max = *n;
    else cfg.thresholds.min_influencers_linked = *n;
    return std::nullopt;
  }
  if (key == "sink_in_min_quantile") {
    auto n = detail::parse_number<double>(value);
    if (!n || !(*n > 0.0 && *n <= 1.0)) return bad("expected a real in (0,1]");
    cfg.thresholds.sink_in_min_quantile = *n;
    return std::nullopt;
  }
  if (key == "thresholds") {
    std::string err;
    auto entries = parse_kv_file(value, &err);
    if (!entries) return err;
    for (const auto& [k, v] : *entries)
      if (auto e = apply_config_entry(cfg, k, v)) return e;
    return std::nullopt;
  }
  return "unknown configuration key '" + key + "'";
}

namespace detail {

inline bool write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

struct LoadedInput {
  TemporalGraph graph;
  int exit_code = kExitOk;
};

inline LoadedInput load_inputs(const RunConfig& cfg, std::ostream& err) {
  LoadedInput res;
  if (cfg.inputs.empty()) {
    err << "error: no input files given\n";
    res.exit_code = kExitConfigError;
    return res;
  }
  std::vector<Interaction> rows;
  for (const std::string& path : cfg.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      err << "error: cannot open input '" << path << "'\n";
      res.exit_code = kExitConfigError;
      return res;
    }
    CsvOptions opt;
    opt.lenient = !cfg.strict;
    ParseResult parsed = parse_csv(in, opt);
    for (const Diagnostic& d : parsed.diagnostics)
      err << path << ":" << d.line << ": " << d.message << "\n";
    for (const Diagnostic& d : parsed.warnings)
      err << path << ":" << d.line << ": warning: " << d.message << "\n";
    if (!parsed.ok) {
      err << "error: parse failed for '" << path << "'\n";
      res.exit_code = kExitParseFailure;
      return res;
    }
    const auto& got = parsed.graph.interactions();
    rows.insert(rows.end(), got.begin(), got.end());
  }
  res.graph = TemporalGraph::from_interactions(std::move(rows));
  return res;
}

inline std::optional<std::vector<Interval>> build_windows(
    const TemporalGraph& g, const std::string& mode, std::ostream& err) {
  auto span = g.span();
  if (!span) return std::vector<Interval>{};
  if (mode == "calendar-month")
    return month_windows(span->start, span->end);
  const std::string prefix = "duration:";
  if (mode.rfind(prefix, 0) == 0) {
    auto days = parse_number<std::int64_t>(mode.substr(prefix.size()));
    if (!days || *days < 1) {
      err << "error: bad window mode '" << mode << "'\n";
      return std::nullopt;
    }
    return duration_windows(span->start, span->end, *days * 86400);
  }
  err << "error: unknown window mode '" << mode << "'\n";
  return std::nullopt;
}

inline std::optional<AnalyzeOptions> make_analyze_options(
    const RunConfig& cfg, std::ostream& err) {
  AnalyzeOptions opt;
  opt.thresholds = cfg.thresholds;
  opt.louvain_seed = cfg.louvain_seed;
  opt.jobs = cfg.jobs;
  opt.bridge_hop = cfg.bridge_mode == "engager-retweets-bridge"
                       ? BridgeHop::kEngagerRetweetsBridge
                       : BridgeHop::kSameTweet;
  if (auto e = validate_thresholds(cfg.thresholds)) {
    err << "error: " << *e << "\n";
    return std::nullopt;
  }
  if (cfg.seed_user) {
    auto u = UserId::parse(*cfg.seed_user);
    if (!u) {
      err << "error: empty seed user\n";
      return std::nullopt;
    }
    opt.seed_user = *u;
  }
  return opt;
}

}  // namespace detail

/// Ingest, window, analyze, and write artifacts: reports.json plus one
/// topk_<interval>.csv per window, with optional GEXF/DOT graph dumps.
/// Returns 0 on success, 1 on a strict-mode parse failure, 2 on
/// configuration errors.
inline int cmd_analyze(const RunConfig& cfg, std::ostream& err) {
  detail::LoadedInput input = detail::load_inputs(cfg, err);
  if (input.exit_code != kExitOk) return input.exit_code;
  auto opt = detail::make_analyze_options(cfg, err);
  if (!opt) return kExitConfigError;
  auto windows = detail::build_windows(input.graph, cfg.window_mode, err);
  if (!windows) return kExitConfigError;

  std::vector<std::string> warnings;
  std::vector<WindowReport> reports;
  try {
    reports = analyze_windows(input.graph, *windows, *opt, &warnings);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  for (const std::string& w : warnings) err << "warning: " << w << "\n";

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  std::filesystem::path dir(cfg.out_dir);
  if (!std::filesystem::is_directory(dir)) {
    err << "error: cannot create output directory '" << cfg.out_dir << "'\n";
    return kExitConfigError;
  }

  if (!detail::write_file(dir / "reports.json", write_report_json(reports))) {
    err << "error: cannot write reports.json\n";
    return kExitConfigError;
  }
  for (const WindowReport& r : reports) {
    std::string label = interval_label(r.interval);
    if (!detail::write_file(dir / ("topk_" + label + ".csv"),
                            write_topk_csv(r))) {
      err << "error: cannot write topk_" << label << ".csv\n";
      return kExitConfigError;
    }
    if (cfg.gexf || cfg.dot) {
      SimpleDigraph d = project(input.graph.window(r.interval));
      if (cfg.gexf &&
          !detail::write_file(dir / ("graph_" + label + ".gexf"),
                              export_gexf(d, r.metrics, r.roles))) {
        err << "error: cannot write graph_" << label << ".gexf\n";
        return kExitConfigError;
      }
      if (cfg.dot && !detail::write_file(dir / ("graph_" + label + ".dot"),
                                         export_dot(d, r.roles))) {
        err << "error: cannot write graph_" << label << ".dot\n";
        return kExitConfigError;
      }
    }
  }
  return kExitOk;
}

/// Recomputes the analysis and writes trajectory_<user>.csv for one user.
/// Unknown users produce a header-only file and a warning.
inline int cmd_trajectory(const RunConfig& cfg, const std::string& user,
                          std::ostream& err) {
  auto uid = UserId::parse(user);
  if (!uid) {
    err << "error: empty user\n";
    return kExitConfigError;
  }
  detail::LoadedInput input = detail::load_inputs(cfg, err);
  if (input.exit_code != kExitOk) return input.exit_code;
  auto opt = detail::make_analyze_options(cfg, err);
  if (!opt) return kExitConfigError;
  auto windows = detail::build_windows(input.graph, cfg.window_mode, err);
  if (!windows) return kExitConfigError;

  std::vector<WindowReport> reports;
  try {
    reports = analyze_windows(input.graph, *windows, *opt);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (!input.graph.contains(*uid))
    err << "warning: user '" << uid->str() << "' does not appear in the input\n";

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  std::filesystem::path path =
      std::filesystem::path(cfg.out_dir) / ("trajectory_" + uid->str() + ".csv");
  if (!detail::write_file(path, write_trajectory_csv(
                                    trajectory(*uid, reports)))) {
    err << "error: cannot write " << path.string() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}

/// Generates a planted stream and writes synth.csv plus synth_labels.json
/// (user to role, sorted by user) into the output directory.
inline int cmd_synth(const PlantSpec& spec, const std::string& out_dir,
                     std::ostream& err) {
  SynthResult res;
  try {
    res = generate(spec);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  std::filesystem::path dir(out_dir);
  if (!std::filesystem::is_directory(dir)) {
    err << "error: cannot create output directory '" << out_dir << "'\n";
    return kExitConfigError;
  }
  if (!detail::write_file(dir / "synth.csv", serialize_csv(res.graph))) {
    err << "error: cannot write synth.csv\n";
    return kExitConfigError;
  }
  std::string labels = "{";
  bool first = true;
  for (const auto& [user, role] : res.ground_truth) {
    if (!first) labels += ",";
    first = false;
    labels += "\n  " + detail::json_escape(user.str()) + ": " +
              detail::json_escape(to_string(role));
  }
  labels += first ? "}\n" : "\n}\n";
  if (!detail::write_file(dir / "synth_labels.json", labels)) {
    err << "error: cannot write synth_labels.json\n";
    return kExitConfigError;
  }
  return kExitOk;
}

}  // namespace commnet
