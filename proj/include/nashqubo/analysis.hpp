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

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "nashqubo/compile.hpp"
#include "nashqubo/sample_set.hpp"

namespace nashqubo {

/// An assignment split back into strategies and scalar values.
struct DecodedSolution {
  Assignment p_bits;
  Assignment q_bits;
  Rational alpha = 0;
  Rational beta = 0;
  std::vector<Rational> slacks;
  bool feasible = false;
  std::string reason;  // empty when feasible
  Rational energy = 0;

  /// The pure profile when both p and q are one-hot.
  std::optional<PureProfile> profile() const {
    auto hot = [](const Assignment& v) -> std::optional<std::size_t> {
      if (std::count(v.begin(), v.end(), 1) != 1) return std::nullopt;
      return static_cast<std::size_t>(std::find(v.begin(), v.end(), 1) - v.begin());
    };
    auto r = hot(p_bits);
    auto c = hot(q_bits);
    if (!r || !c) return std::nullopt;
    return PureProfile{*r, *c};
  }
};

inline DecodedSolution decode(const Compilation& comp, std::span<const std::uint8_t> x) {
  const QuboModel& model = comp.model;
  if (x.size() != model.varmap.size())
    throw DimensionError("assignment has " + std::to_string(x.size()) + " bits, varmap has " +
                         std::to_string(model.varmap.size()));
  DecodedSolution d;
  d.p_bits.assign(comp.game.rows(), 0);
  d.q_bits.assign(comp.game.cols(), 0);
  std::vector<std::uint64_t> codes(model.scalars.size(), 0);
  auto scalar_slot = [&](const VarInfo& v) {
    for (std::size_t e = 0; e < model.scalars.size(); ++e) {
      const auto& enc = model.scalars[e];
      if ((v.role == VarRole::alpha && enc.role == ScalarRole::alpha) ||
          (v.role == VarRole::beta && enc.role == ScalarRole::beta) ||
          (v.role == VarRole::slack && enc.role == ScalarRole::slack && enc.slack == v.index))
        return e;
    }
    throw DimensionError("varmap refers to a scalar the model does not describe");
  };
  for (std::size_t i = 0; i < x.size(); ++i) {
    const VarInfo& v = model.varmap[i];
    if (v.role == VarRole::p) d.p_bits.at(v.index) = x[i];
    else if (v.role == VarRole::q) d.q_bits.at(v.index) = x[i];
    else if (x[i]) codes[scalar_slot(v)] |= std::uint64_t{1} << v.bit;
  }
  d.slacks.assign(comp.slacked.slacks.size(), Rational(0));
  for (std::size_t e = 0; e < model.scalars.size(); ++e) {
    const auto& enc = model.scalars[e];
    Rational value = enc.value(codes[e]);
    if (enc.role == ScalarRole::alpha) d.alpha = value;
    else if (enc.role == ScalarRole::beta) d.beta = value;
    else d.slacks.at(enc.slack) = value;
  }
  d.energy = energy(model, x);

  auto count = [](const Assignment& v) { return std::count(v.begin(), v.end(), 1); };
  const auto& qp = comp.slacked.program;
  if (count(d.p_bits) != 1) {
    d.reason = "p not one-hot";
  } else if (count(d.q_bits) != 1) {
    d.reason = "q not one-hot";
  } else {
    for (std::size_t i = 0; i < qp.player1_rows.size() && d.reason.empty(); ++i)
      if (row_value(qp.player1_rows[i], d.q_bits, d.alpha) + d.slacks[comp.slacked.player1_slack[i]] != 0)
        d.reason = "player-1 row " + std::to_string(i + 1) + " violated";
    for (std::size_t j = 0; j < qp.player2_rows.size() && d.reason.empty(); ++j)
      if (row_value(qp.player2_rows[j], d.p_bits, d.beta) + d.slacks[comp.slacked.player2_slack[j]] != 0)
        d.reason = "player-2 row " + std::to_string(j + 1) + " violated";
  }
  d.feasible = d.reason.empty();
  return d;
}

struct NashCertificate {
  PureProfile profile;
  bool is_nash = false;
  Rational residual;        // integerized objective at the decoded point
  Rational residual_scale;  // objective factor; residual / scale is in payoff units
  PayoffPair payoffs;
};

/// Best-response check of a feasible decoded profile plus the objective
/// residual, which is zero exactly when alpha and beta equal the payoffs of an
/// equilibrium.
inline NashCertificate certify(const Compilation& comp, const DecodedSolution& decoded) {
  if (!decoded.feasible) throw CertificationError("cannot certify an infeasible solution: " + decoded.reason);
  const PureProfile profile = *decoded.profile();
  NashCertificate cert;
  cert.profile = profile;
  cert.is_nash = is_pure_nash(comp.game, profile);
  cert.residual = objective_value(comp.slacked.program, decoded.p_bits, decoded.q_bits, decoded.alpha, decoded.beta);
  cert.residual_scale = comp.scale.objective;
  cert.payoffs = payoff(comp.game, profile);
  return cert;
}

struct FrequencyRow {
  std::optional<PureProfile> profile;  // nullopt for the infeasible bucket
  std::uint64_t occurrences = 0;
  Rational best_energy;
  bool is_nash = false;

  std::string label() const { return profile ? to_string(*profile) : "infeasible"; }
};

/// Decoded sample counts per profile. Infeasible samples are pooled into a
/// single row, never dropped.
struct FrequencyReport {
  std::vector<FrequencyRow> rows;
  std::uint64_t total = 0;
  std::uint64_t infeasible = 0;

  std::vector<PureProfile> certified_profiles() const {
    std::vector<PureProfile> out;
    for (const auto& r : rows)
      if (r.is_nash) out.push_back(*r.profile);
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline FrequencyReport histogram(const Compilation& comp, const SampleSet& samples) {
  std::map<PureProfile, FrequencyRow> by_profile;
  std::optional<FrequencyRow> infeasible;
  FrequencyReport report;
  for (const auto& rec : samples.records) {
    report.total += rec.occurrences;
    DecodedSolution d = decode(comp, rec.assignment);
    FrequencyRow* row = nullptr;
    if (d.feasible) {
      const PureProfile profile = *d.profile();
      auto [it, fresh] = by_profile.try_emplace(profile);
      row = &it->second;
      if (fresh) {
        row->profile = profile;
        row->best_energy = rec.energy;
        row->is_nash = certify(comp, d).is_nash;
      }
    } else {
      if (!infeasible) infeasible = FrequencyRow{std::nullopt, 0, rec.energy, false};
      row = &*infeasible;
      report.infeasible += rec.occurrences;
    }
    row->occurrences += rec.occurrences;
    row->best_energy = std::min(row->best_energy, rec.energy);
  }
  for (auto& [profile, row] : by_profile) report.rows.push_back(std::move(row));
  if (infeasible) report.rows.push_back(std::move(*infeasible));
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const FrequencyRow& a, const FrequencyRow& b) {
    if (a.occurrences != b.occurrences) return a.occurrences > b.occurrences;
    if (a.best_energy != b.best_energy) return a.best_energy < b.best_energy;
    return a.profile.has_value() && !b.profile.has_value();
  });
  return report;
}

/// Keeps rows with at least `min_occurrences`; totals still describe the full
/// sample set.
inline FrequencyReport truncate(FrequencyReport report, std::uint64_t min_occurrences) {
  std::erase_if(report.rows, [&](const FrequencyRow& r) { return r.occurrences < min_occurrences; });
  return report;
}

inline std::string to_csv(const FrequencyReport& report) {
  std::ostringstream out;
  out << "profile,occurrences,best_energy,is_nash\n";
  for (const auto& r : report.rows)
    out << '"' << r.label() << "\"," << r.occurrences << ',' << to_display_string(r.best_energy) << ','
        << (r.is_nash ? "true" : "false") << '\n';
  return out.str();
}

inline nlohmann::json to_json(const FrequencyReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row = {{"profile", r.label()},
                          {"occurrences", r.occurrences},
                          {"best_energy", to_fraction_string(r.best_energy)},
                          {"is_nash", r.is_nash}};
    if (r.profile) {
      row["row"] = r.profile->row + 1;
      row["col"] = r.profile->col + 1;
    }
    rows.push_back(std::move(row));
  }
  return {{"rows", std::move(rows)}, {"total", report.total}, {"infeasible", report.infeasible}};
}

}  // namespace nashqubo
