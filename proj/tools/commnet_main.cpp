// Command-line front end: analyze / trajectory / synth subcommands over the
// interaction-network toolkit.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commnet/pipeline.hpp"

namespace {

// Shared flags for analyze and trajectory. Values from --config override the
// command line, mirroring the documented precedence.
void add_run_flags(CLI::App* cmd, commnet::RunConfig& cfg,
                   std::string& config_path, std::string& thresholds_path) {
  cmd->add_option("--input", cfg.inputs, "interaction CSV file (repeatable)");
  cmd->add_option("--window", cfg.window_mode,
                  "calendar-month or duration:<days>");
  cmd->add_option("--top-k", cfg.thresholds.top_k,
                  "central users ranked per window");
  cmd->add_option("--seed-user", cfg.seed_user,
                  "designated conversation starter");
  cmd->add_option("--thresholds", thresholds_path,
                  "key-value file of role thresholds");
  cmd->add_option("--louvain-seed", cfg.louvain_seed,
                  "seed for community detection");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--jobs", cfg.jobs, "parallel window workers");
  cmd->add_option("--bridge-mode", cfg.bridge_mode,
                  "same-tweet or engager-retweets-bridge");
  cmd->add_flag("--gexf", cfg.gexf, "write per-window GEXF graphs");
  cmd->add_flag("--dot", cfg.dot, "write per-window DOT graphs");
  cmd->add_flag("--strict", cfg.strict, "fail on the first bad input row");
  cmd->add_option("--config", config_path,
                  "key-value run configuration, overrides flags");
}

// Applies --thresholds then --config on top of parsed flags. Returns an
// error message on failure.
std::optional<std::string> finish_config(commnet::RunConfig& cfg,
                                         const std::string& config_path,
                                         const std::string& thresholds_path) {
  if (!thresholds_path.empty())
    if (auto err = commnet::apply_config_entry(cfg, "thresholds",
                                               thresholds_path))
      return err;
  if (!config_path.empty()) {
    std::string err;
    auto entries = commnet::parse_kv_file(config_path, &err);
    if (!entries) return err;
    for (const auto& [k, v] : *entries)
      if (auto e = commnet::apply_config_entry(cfg, k, v)) return e;
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal interaction-network analytics"};
  app.require_subcommand(1);

  commnet::RunConfig cfg;
  std::string config_path;
  std::string thresholds_path;
  std::string trajectory_user;

  CLI::App* analyze =
      app.add_subcommand("analyze", "windowed metrics, roles, and reports");
  add_run_flags(analyze, cfg, config_path, thresholds_path);

  CLI::App* traj =
      app.add_subcommand("trajectory", "per-window rank history for one user");
  add_run_flags(traj, cfg, config_path, thresholds_path);
  traj->add_option("--user", trajectory_user, "user handle to follow")
      ->required();

  commnet::PlantSpec spec;
  std::string synth_out = ".";
  std::int64_t dropout = -1;
  CLI::App* synth =
      app.add_subcommand("synth", "generate a planted-role stream");
  synth->add_option("--isolates", spec.n_isolates, "isolate users per month");
  synth->add_option("--influencers", spec.n_influencers, "planted influencers");
  synth->add_option("--engager-out", spec.engager_out,
                    "engager outgoing mentions per month");
  synth->add_option("--builder-links", spec.builder_links,
                    "hubs the builder mentions");
  synth->add_flag("--bridge,!--no-bridge", spec.plant_bridge,
                  "plant the information-bridge motif");
  synth->add_option("--months", spec.months, "number of months");
  synth->add_option("--seed", spec.seed, "generator seed");
  synth->add_option("--dropout-month", dropout,
                    "starter vanishes from this 0-based month on");
  synth->add_option("--out", synth_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed() || traj->parsed()) {
    if (auto err = finish_config(cfg, config_path, thresholds_path)) {
      std::cerr << "error: " << *err << "\n";
      return commnet::kExitConfigError;
    }
    if (analyze->parsed()) return commnet::cmd_analyze(cfg, std::cerr);
    return commnet::cmd_trajectory(cfg, trajectory_user, std::cerr);
  }
  if (dropout >= 0) spec.starter_dropout_month = static_cast<std::size_t>(dropout);
  return commnet::cmd_synth(spec, synth_out, std::cerr);
}
