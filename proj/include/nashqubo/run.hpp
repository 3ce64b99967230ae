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

#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "nashqubo/analysis.hpp"
#include "nashqubo/anneal.hpp"
#include "nashqubo/exhaustive.hpp"
#include "nashqubo/external.hpp"
#include "nashqubo/game_file.hpp"

namespace nashqubo {

enum class SamplerKind { automatic, exhaustive, sa, external };

inline std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::automatic: return "auto";
    case SamplerKind::exhaustive: return "exhaustive";
    case SamplerKind::sa: return "sa";
    case SamplerKind::external: return "external";
  }
  return "unknown";
}

inline SamplerKind sampler_from_string(const std::string& text) {
  for (auto k : {SamplerKind::automatic, SamplerKind::exhaustive, SamplerKind::sa, SamplerKind::external})
    if (to_string(k) == text) return k;
  throw ParameterError("unknown sampler '" + text + "'");
}

inline SlackMode slack_mode_from_string(const std::string& text) {
  for (auto m : {SlackMode::per_row, SlackMode::paper_compat})
    if (to_string(m) == text) return m;
  throw ParameterError("unknown slack mode '" + text + "'");
}

inline constexpr std::uint64_t kDefaultSeed = 20220530;

struct RunConfig {
  PenaltyOverrides penalties;
  SlackMode slack_mode = SlackMode::per_row;
  BitOverrides bits;
  SamplerKind sampler = SamplerKind::automatic;
  std::size_t reads = 5000;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> t_start;
  std::optional<double> t_end;
  std::optional<std::size_t> sweeps;
  std::string external_command;
  std::size_t capacity = 24;
  unsigned threads = 0;  // 0: one per hardware thread; never changes results
  std::uint64_t min_occurrences = 0;

  CompileOptions compile_options(const GameFile& file) const {
    CompileOptions opts;
    opts.slack_mode = slack_mode;
    opts.bits = bits;
    opts.penalties = penalties.layered_over(file.penalties).resolve(file.game.rows(), file.game.cols());
    return opts;
  }

  AnnealSchedule schedule_for(const QuboModel& model) const {
    AnnealSchedule s = AnnealSchedule::defaults_for(model);
    if (t_start) s.t_start = *t_start;
    if (t_end) s.t_end = *t_end;
    if (sweeps) s.sweeps = *sweeps;
    if (!t_start && s.t_start < s.t_end) s.t_start = s.t_end;
    return s;
  }
};

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json bits = nlohmann::json::object();
  if (c.bits.alpha) bits["alpha"] = *c.bits.alpha;
  if (c.bits.beta) bits["beta"] = *c.bits.beta;
  if (c.bits.slack) bits["slack"] = *c.bits.slack;
  nlohmann::json j = {{"penalties", to_json(c.penalties)},
                      {"slack_mode", to_string(c.slack_mode)},
                      {"bits", bits},
                      {"sampler", to_string(c.sampler)},
                      {"reads", c.reads},
                      {"seed", c.seed},
                      {"external_command", c.external_command},
                      {"capacity", c.capacity},
                      {"min_occurrences", c.min_occurrences}};
  if (c.t_start) j["t_start"] = *c.t_start;
  if (c.t_end) j["t_end"] = *c.t_end;
  if (c.sweeps) j["sweeps"] = *c.sweeps;
  return j;
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  try {
    RunConfig c;
    if (j.contains("penalties")) c.penalties = penalty_overrides_from_json(j["penalties"]);
    c.slack_mode = slack_mode_from_string(j.value("slack_mode", std::string("per-row")));
    if (j.contains("bits")) {
      const auto& b = j["bits"];
      if (b.contains("alpha")) c.bits.alpha = b["alpha"].get<unsigned>();
      if (b.contains("beta")) c.bits.beta = b["beta"].get<unsigned>();
      if (b.contains("slack")) c.bits.slack = b["slack"].get<unsigned>();
    }
    c.sampler = sampler_from_string(j.value("sampler", std::string("auto")));
    c.reads = j.value("reads", c.reads);
    c.seed = j.value("seed", c.seed);
    c.external_command = j.value("external_command", std::string());
    c.capacity = j.value("capacity", c.capacity);
    c.min_occurrences = j.value("min_occurrences", c.min_occurrences);
    if (j.contains("t_start")) c.t_start = j["t_start"].get<double>();
    if (j.contains("t_end")) c.t_end = j["t_end"].get<double>();
    if (j.contains("sweeps")) c.sweeps = j["sweeps"].get<std::size_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed run configuration: ") + e.what());
  }
}

inline nlohmann::json to_json(const PenaltyConfig& p) {
  auto list = [](const std::vector<Rational>& w) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : w) a.push_back(to_fraction_string(x));
    return a;
  };
  return {{"theta1", to_fraction_string(p.theta1)},
          {"theta2", to_fraction_string(p.theta2)},
          {"lambda", list(p.lambda)},
          {"phi", list(p.phi)}};
}

inline nlohmann::json to_json(const ScaleReport& s) {
  auto list = [](const std::vector<Rational>& w) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : w) a.push_back(to_display_string(x));
    return a;
  };
  return {{"objective", to_display_string(s.objective)},
          {"player1_rows", list(s.player1_rows)},
          {"player2_rows", list(s.player2_rows)}};
}

/// Human-readable description of a compilation: sizes, scale factors,
/// penalty weights and bit widths.
inline std::string compile_summary(const Compilation& comp) {
  std::ostringstream out;
  const auto& model = comp.model;
  std::size_t counts[5] = {0, 0, 0, 0, 0};
  for (const auto& v : model.varmap) ++counts[static_cast<int>(v.role)];
  out << "game: " << comp.game.name() << " (" << comp.game.rows() << "x" << comp.game.cols() << ")\n";
  out << "variables: " << model.n_vars() << " (p " << counts[0] << ", q " << counts[1] << ", alpha " << counts[2]
      << ", beta " << counts[3] << ", slack " << counts[4] << ")\n";
  out << "quadratic terms: " << model.quadratic.size() << "\n";
  out << "slack mode: " << to_string(comp.slacked.mode) << "\n";
  out << "objective scale factor: " << to_display_string(comp.scale.objective) << "\n";
  const auto& qp = comp.slacked.program;
  auto rows = [&](const std::vector<ConstraintRow>& list, const char* who, char var, const char* scalar) {
    for (std::size_t r = 0; r < list.size(); ++r) {
      if (list[r].factor == 1) continue;
      out << who << " row " << r + 1 << " scale factor " << to_display_string(list[r].factor) << ": "
          << format_row(list[r], var, scalar) << "\n";
    }
  };
  rows(qp.player1_rows, "player-1", 'q', "alpha");
  rows(qp.player2_rows, "player-2", 'p', "beta");
  auto weight = [&](const char* name, const Rational& w) {
    out << name << " = " << to_display_string(w);
    if (w > 0 && is_integer(w)) {
      BigInt root = boost::multiprecision::sqrt(numerator(w));
      if (root * root == numerator(w) && root != 1)
        out << " (simplex penalty inner factor " << root.str() << ")";
    }
    out << "\n";
  };
  weight("theta1", comp.penalties.theta1);
  weight("theta2", comp.penalties.theta2);
  auto list = [&](const char* name, const std::vector<Rational>& w) {
    out << name << " =";
    for (const auto& x : w) out << " " << to_display_string(x);
    out << "\n";
  };
  list("lambda", comp.penalties.lambda);
  list("phi", comp.penalties.phi);
  for (const auto& e : comp.encodings)
    out << "encoding " << e.name << ": [" << to_display_string(e.step * Rational(e.lower)) << ", "
        << to_display_string(e.step * Rational(e.lower + e.span)) << "] step " << to_display_string(e.step) << ", "
        << e.bits << " bit" << (e.bits == 1 ? "" : "s") << "\n";
  return out.str();
}

struct RunResult {
  Compilation compilation;
  SampleSet samples;
  FrequencyReport report;
  nlohmann::json manifest;

  /// 0 when at least one sampled profile is a certified equilibrium, else 2.
  int exit_status() const { return report.certified_profiles().empty() ? 2 : 0; }
};

inline SampleSet run_sampler(const QuboModel& model, const RunConfig& config, SamplerKind& chosen) {
  chosen = config.sampler;
  if (chosen == SamplerKind::automatic)
    chosen = fits_exhaustive(model, config.capacity) ? SamplerKind::exhaustive : SamplerKind::sa;
  switch (chosen) {
    case SamplerKind::exhaustive:
      return solve_exhaustive(model, {.max_vars = config.capacity});
    case SamplerKind::sa:
      return sample_sa(model, config.reads, config.schedule_for(model), config.seed, config.threads);
    case SamplerKind::external:
      if (config.external_command.empty()) throw ParameterError("external sampler needs a command");
      return sample_external(model, ExternalCommand::shell(config.external_command), config.reads, config.seed);
    case SamplerKind::automatic:
      break;
  }
  throw ParameterError("no sampler selected");
}

/// Compile, sample, decode and certify. The manifest records the game and the
/// configuration, so feeding it back through run_solve reproduces the report.
inline RunResult run_solve(const GameFile& file, const RunConfig& config) {
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::time_point a, clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };
  const auto t0 = clock::now();
  Compilation comp = compile_game(file.game, config.compile_options(file));
  const auto t1 = clock::now();
  SamplerKind chosen = config.sampler;
  SampleSet samples = run_sampler(comp.model, config, chosen);
  const auto t2 = clock::now();
  FrequencyReport report = histogram(comp, samples);
  if (config.min_occurrences > 0) report = truncate(std::move(report), config.min_occurrences);
  const auto t3 = clock::now();

  nlohmann::json encodings = nlohmann::json::array();
  for (const auto& e : comp.encodings) encodings.push_back(to_json(e));
  nlohmann::json certified = nlohmann::json::array();
  for (const auto& p : report.certified_profiles()) certified.push_back(to_string(p));
  nlohmann::json resolved = {{"sampler", to_string(chosen)},
                             {"penalties", to_json(comp.penalties)},
                             {"slack_mode", to_string(comp.slacked.mode)},
                             {"n_vars", comp.model.n_vars()},
                             {"quadratic_terms", comp.model.quadratic.size()},
                             {"encodings", std::move(encodings)},
                             {"scale", to_json(comp.scale)}};
  if (chosen == SamplerKind::sa) {
    const AnnealSchedule s = config.schedule_for(comp.model);
    resolved["schedule"] = {{"t_start", s.t_start}, {"t_end", s.t_end}, {"sweeps", s.sweeps}, {"shape", "geometric"}};
  }
  nlohmann::json manifest = {
      {"tool", "nashqubo"},
      {"format", 1},
      {"game", to_json(file)},
      {"config", to_json(config)},
      {"resolved", std::move(resolved)},
      {"results",
       {{"records", samples.records.size()},
        {"total_occurrences", report.total},
        {"infeasible_occurrences", report.infeasible},
        {"certified", std::move(certified)}}},
      {"timings_seconds", {{"compile", seconds(t0, t1)}, {"sample", seconds(t1, t2)}, {"analyze", seconds(t2, t3)}}}};
  return {std::move(comp), std::move(samples), std::move(report), std::move(manifest)};
}

}  // namespace nashqubo
