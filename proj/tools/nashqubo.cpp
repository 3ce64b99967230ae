// Copyright 2026 The nashqubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// nashqubo: compile bimatrix games to QUBOs, sample them and certify the
// decoded strategy profiles against a brute-force pure Nash oracle.
//
// Exit status: 0 success, 1 error (JSON error document on stderr),
// 2 no pure strategy Nash equilibrium certified.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nashqubo.hpp"

namespace fs = std::filesystem;
using namespace nashqubo;

namespace {

constexpr int kExitError = 1;
constexpr int kExitNoEquilibrium = 2;
constexpr const char* kNoEquilibrium = "no pure strategy Nash equilibrium certified";

struct Flags {
  std::string game;
  std::string manifest;
  std::string sampler = "auto";
  std::size_t reads = 5000;
  std::uint64_t seed = kDefaultSeed;
  std::string theta1, theta2, lambda, phi;
  std::string slack_mode = "per-row";
  std::optional<unsigned> bits_alpha, bits_beta, bits_slack;
  std::optional<double> t_start, t_end;
  std::optional<std::size_t> sweeps;
  std::string external;
  std::uint64_t min_occurrences = 0;
  unsigned threads = 0;
  std::string out = "nashqubo-out";
  std::string emit_qubo;
  bool json = false;
};

void add_game_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--game", f.game, "Game file (JSON: name, m, n, optional penalties)");
}

void add_compile_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--theta1", f.theta1, "Weight of the player-1 simplex penalty");
  cmd->add_option("--theta2", f.theta2, "Weight of the player-2 simplex penalty");
  cmd->add_option("--lambda", f.lambda, "Player-1 row weights: one value or a comma-separated list");
  cmd->add_option("--phi", f.phi, "Player-2 row weights: one value or a comma-separated list");
  cmd->add_option("--slack-mode", f.slack_mode, "per-row or paper-compat (one shared slack per player)")
      ->check(CLI::IsMember({"per-row", "paper-compat"}));
  cmd->add_option("--bits-alpha", f.bits_alpha, "Bit width of alpha (default: derived from payoff range)");
  cmd->add_option("--bits-beta", f.bits_beta, "Bit width of beta (default: derived from payoff range)");
  cmd->add_option("--bits-slack", f.bits_slack, "Bit width of every slack (default: derived per row)");
  cmd->add_option("--emit-qubo", f.emit_qubo, "Write the compiled QUBO model as JSON to this path");
}

RunConfig config_from_flags(const Flags& f) {
  RunConfig c;
  if (!f.theta1.empty()) c.penalties.theta1 = parse_rational(f.theta1);
  if (!f.theta2.empty()) c.penalties.theta2 = parse_rational(f.theta2);
  if (!f.lambda.empty()) c.penalties.lambda = parse_weight_list(f.lambda);
  if (!f.phi.empty()) c.penalties.phi = parse_weight_list(f.phi);
  c.slack_mode = slack_mode_from_string(f.slack_mode);
  c.bits = {f.bits_alpha, f.bits_beta, f.bits_slack};
  c.sampler = sampler_from_string(f.sampler);
  c.reads = f.reads;
  c.seed = f.seed;
  c.t_start = f.t_start;
  c.t_end = f.t_end;
  c.sweeps = f.sweeps;
  c.external_command = f.external;
  if (!f.external.empty() && c.sampler == SamplerKind::automatic) c.sampler = SamplerKind::external;
  c.capacity = default_capacity();
  c.threads = f.threads;
  c.min_occurrences = f.min_occurrences;
  return c;
}

GameFile require_game(const Flags& f) {
  if (f.game.empty()) throw ParameterError("--game is required");
  return load_game_file(f.game);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ParameterError("failed writing '" + path.string() + "'");
}

int cmd_oracle(const Flags& f) {
  const GameFile file = require_game(f);
  const auto& game = file.game;
  const auto profiles = pure_nash_enumerate(game);
  if (f.json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& p : profiles) {
      const auto pay = payoff(game, p);
      list.push_back({{"profile", to_string(p)},
                      {"row", p.row + 1},
                      {"col", p.col + 1},
                      {"pi1", to_display_string(pay.pi1)},
                      {"pi2", to_display_string(pay.pi2)}});
    }
    std::cout << nlohmann::json{{"game", game.name()}, {"count", profiles.size()}, {"equilibria", list}}.dump(2)
              << "\n";
  } else {
    std::cout << game.name() << ": " << profiles.size() << " pure strategy Nash equilibri"
              << (profiles.size() == 1 ? "um" : "a") << "\n";
    for (const auto& p : profiles) {
      const auto pay = payoff(game, p);
      std::cout << "  " << to_string(p) << "  payoffs (" << to_display_string(pay.pi1) << ", "
                << to_display_string(pay.pi2) << ")\n";
    }
  }
  if (profiles.empty()) {
    std::cerr << kNoEquilibrium << "\n";
    return kExitNoEquilibrium;
  }
  return 0;
}

int cmd_compile(const Flags& f) {
  const GameFile file = require_game(f);
  const RunConfig config = config_from_flags(f);
  const Compilation comp = compile_game(file.game, config.compile_options(file));
  const std::string model = to_json(comp.model).dump() + "\n";
  const std::string summary = compile_summary(comp);
  if (f.emit_qubo.empty()) {
    std::cout << model;
    std::cerr << summary;
  } else {
    write_file(f.emit_qubo, model);
    std::cout << summary;
  }
  return 0;
}

int cmd_solve(const Flags& f) {
  GameFile file = [&] {
    if (!f.manifest.empty()) return game_file_from_json(read_json_file(f.manifest).at("game"));
    return require_game(f);
  }();
  RunConfig config = config_from_flags(f);
  if (!f.manifest.empty()) {
    const auto doc = read_json_file(f.manifest);
    if (!doc.contains("config")) throw ParseError("manifest has no \"config\"");
    config = run_config_from_json(doc["config"]);
    config.threads = f.threads;
  }

  const RunResult result = run_solve(file, config);
  const fs::path dir(f.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ParameterError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const std::string csv = to_csv(result.report);
  write_file(dir / "report.csv", csv);
  write_file(dir / "report.json", to_json(result.report).dump(2) + "\n");
  write_file(dir / "manifest.json", result.manifest.dump(2) + "\n");
  if (!f.emit_qubo.empty()) write_file(f.emit_qubo, to_json(result.compilation.model).dump() + "\n");

  if (f.json) {
    std::cout << to_json(result.report).dump(2) << "\n";
  } else {
    std::cout << "sampler: " << result.manifest["resolved"]["sampler"].get<std::string>()
              << ", variables: " << result.compilation.model.n_vars() << ", samples: " << result.report.total
              << "\n"
              << csv;
  }
  if (result.exit_status() != 0) {
    std::cerr << kNoEquilibrium << "\n";
    return kExitNoEquilibrium;
  }
  return 0;
}

int report_error(std::string_view kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile bimatrix games to QUBOs, sample them and certify pure Nash equilibria"};
  app.require_subcommand(1);
  Flags f;

  auto* oracle = app.add_subcommand("oracle", "List every pure strategy Nash equilibrium with payoffs");
  add_game_flags(oracle, f);
  oracle->add_flag("--json", f.json, "Machine-readable output");

  auto* compile = app.add_subcommand("compile", "Print the compiled QUBO model and a summary");
  add_game_flags(compile, f);
  add_compile_flags(compile, f);

  auto* solve = app.add_subcommand("solve", "Compile, sample, decode and certify; writes reports to --out");
  add_game_flags(solve, f);
  add_compile_flags(solve, f);
  solve->add_option("--manifest", f.manifest, "Replay the game and configuration recorded in a manifest");
  solve->add_option("--sampler", f.sampler, "auto (exhaustive if it fits, else sa), exhaustive, sa or external")
      ->check(CLI::IsMember({"auto", "exhaustive", "sa", "external"}));
  solve->add_option("--reads", f.reads, "Annealing reads / samples requested")->check(CLI::PositiveNumber);
  solve->add_option("--seed", f.seed, "Base seed");
  solve->add_option("--sweeps", f.sweeps, "Metropolis sweeps per read");
  solve->add_option("--t-start", f.t_start, "Initial temperature (default: largest coefficient)");
  solve->add_option("--t-end", f.t_end, "Final temperature");
  solve->add_option("--external", f.external, "Shell command of an external sampler");
  solve->add_option("--min-occurrences", f.min_occurrences, "Drop report rows seen fewer times than this");
  solve->add_option("--threads", f.threads, "Worker threads for annealing (0: hardware concurrency)");
  solve->add_option("--out", f.out, "Output directory for report.csv, report.json, manifest.json");
  solve->add_flag("--json", f.json, "Print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("usage", e.what());
  }

  try {
    if (*oracle) return cmd_oracle(f);
    if (*compile) return cmd_compile(f);
    return cmd_solve(f);
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return report_error("parse", e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
}
