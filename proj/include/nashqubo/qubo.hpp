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

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nashqubo/encoding.hpp"

namespace nashqubo {

enum class VarRole { p, q, alpha, beta, slack };

inline std::string_view to_string(VarRole role) {
  switch (role) {
    case VarRole::p: return "p";
    case VarRole::q: return "q";
    case VarRole::alpha: return "alpha";
    case VarRole::beta: return "beta";
    case VarRole::slack: return "slack";
  }
  return "unknown";
}

/// What a flattened binary variable stands for. `index` is the strategy index
/// for p/q and the slack index for slack bits; `bit` is the binary digit of a
/// scalar.
struct VarInfo {
  VarRole role = VarRole::p;
  std::size_t index = 0;
  unsigned bit = 0;

  friend bool operator==(const VarInfo&, const VarInfo&) = default;
};

using Assignment = std::vector<std::uint8_t>;
using QuadraticTerms = std::map<std::pair<std::size_t, std::size_t>, Rational>;

/// energy(x) = offset + sum_i linear[i] x_i + sum_{i<j} quadratic[i,j] x_i x_j
///
/// Quadratic keys are strictly upper triangular and never hold zero. varmap
/// and scalars are empty for models that did not come from a game.
struct QuboModel {
  std::vector<Rational> linear;
  QuadraticTerms quadratic;
  Rational offset = 0;
  std::vector<VarInfo> varmap;
  std::vector<ScalarEncoding> scalars;

  std::size_t n_vars() const { return linear.size(); }

  friend bool operator==(const QuboModel&, const QuboModel&) = default;
};

inline Rational energy(const QuboModel& model, std::span<const std::uint8_t> x) {
  if (x.size() != model.n_vars())
    throw DimensionError("assignment has " + std::to_string(x.size()) + " bits, model has " +
                         std::to_string(model.n_vars()) + " variables");
  Rational e = model.offset;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) e += model.linear[i];
  for (const auto& [key, b] : model.quadratic)
    if (x[key.first] && x[key.second]) e += b;
  return e;
}

/// Spin form: H(s) = offset + sum h_i s_i + sum_{i<j} J_ij s_i s_j, s in {-1,+1}.
struct IsingModel {
  std::vector<Rational> h;
  QuadraticTerms j;
  Rational offset = 0;

  friend bool operator==(const IsingModel&, const IsingModel&) = default;
};

inline Rational energy(const IsingModel& model, std::span<const std::int8_t> s) {
  if (s.size() != model.h.size())
    throw DimensionError("spin vector has " + std::to_string(s.size()) + " entries, model has " +
                         std::to_string(model.h.size()));
  Rational e = model.offset;
  for (std::size_t i = 0; i < s.size(); ++i) e += model.h[i] * s[i];
  for (const auto& [key, coupling] : model.j) e += coupling * (s[key.first] * s[key.second]);
  return e;
}

/// Substitutes x = (s + 1) / 2.
inline IsingModel qubo_to_ising(const QuboModel& model) {
  IsingModel out;
  out.h.assign(model.n_vars(), Rational(0));
  out.offset = model.offset;
  for (std::size_t i = 0; i < model.n_vars(); ++i) {
    out.h[i] += model.linear[i] / 2;
    out.offset += model.linear[i] / 2;
  }
  for (const auto& [key, b] : model.quadratic) {
    Rational quarter = b / 4;
    out.j[key] += quarter;
    out.h[key.first] += quarter;
    out.h[key.second] += quarter;
    out.offset += quarter;
  }
  return out;
}

/// Substitutes s = 2x - 1. The result carries no varmap.
inline QuboModel ising_to_qubo(const IsingModel& model) {
  QuboModel out;
  out.linear.assign(model.h.size(), Rational(0));
  out.offset = model.offset;
  for (std::size_t i = 0; i < model.h.size(); ++i) {
    out.linear[i] += 2 * model.h[i];
    out.offset -= model.h[i];
  }
  for (const auto& [key, coupling] : model.j) {
    if (coupling == 0) continue;
    out.quadratic[key] += 4 * coupling;
    out.linear[key.first] -= 2 * coupling;
    out.linear[key.second] -= 2 * coupling;
    out.offset += coupling;
  }
  return out;
}

/// Accumulates a quadratic pseudo-boolean polynomial, folding x^2 = x and
/// keeping quadratic keys ordered (i < j).
class QuboBuilder {
 public:
  explicit QuboBuilder(std::size_t n_vars) : linear_(n_vars, Rational(0)) {}

  using LinearForm = std::vector<std::pair<std::size_t, Rational>>;

  void add_offset(const Rational& c) { offset_ += c; }
  void add_linear(std::size_t i, const Rational& c) { linear_.at(i) += c; }
  void add_quadratic(std::size_t i, std::size_t j, const Rational& c) {
    if (i == j) {
      add_linear(i, c);
      return;
    }
    if (i > j) std::swap(i, j);
    if (j >= linear_.size()) throw DimensionError("quadratic term outside model");
    quadratic_[{i, j}] += c;
  }

  /// Adds weight * (constant + sum c_k x_k)^2.
  void add_square(LinearForm terms, const Rational& constant, const Rational& weight) {
    if (weight == 0) return;
    std::map<std::size_t, Rational> merged;
    for (auto& [i, c] : terms) merged[i] += c;
    std::vector<std::pair<std::size_t, Rational>> flat;
    for (auto& [i, c] : merged)
      if (c != 0) flat.emplace_back(i, c);
    add_offset(weight * constant * constant);
    for (std::size_t a = 0; a < flat.size(); ++a) {
      const auto& [i, ci] = flat[a];
      add_linear(i, weight * (ci * ci + 2 * constant * ci));
      for (std::size_t b = a + 1; b < flat.size(); ++b)
        add_quadratic(i, flat[b].first, 2 * weight * ci * flat[b].second);
    }
  }

  QuboModel build() && {
    QuboModel out;
    out.linear = std::move(linear_);
    for (auto& [key, c] : quadratic_)
      if (c != 0) out.quadratic.emplace(key, std::move(c));
    out.offset = offset_;
    return out;
  }

 private:
  std::vector<Rational> linear_;
  QuadraticTerms quadratic_;
  Rational offset_ = 0;
};

// JSON wire format. Rationals travel as "num/den" strings so no precision is
// lost between processes.

inline nlohmann::json to_json(const ScalarEncoding& e) {
  return {{"name", e.name},   {"role", to_string(e.role)}, {"slack", e.slack},
          {"lower", e.lower}, {"span", e.span},            {"bits", e.bits},
          {"step", to_fraction_string(e.step)}};
}

inline nlohmann::json to_json(const QuboModel& model) {
  nlohmann::json linear = nlohmann::json::array();
  for (std::size_t i = 0; i < model.n_vars(); ++i)
    if (model.linear[i] != 0) linear.push_back({i, to_fraction_string(model.linear[i])});
  nlohmann::json quadratic = nlohmann::json::array();
  for (const auto& [key, b] : model.quadratic)
    quadratic.push_back({key.first, key.second, to_fraction_string(b)});
  nlohmann::json varmap = nlohmann::json::array();
  for (const auto& v : model.varmap) {
    nlohmann::json entry = {{"role", to_string(v.role)}};
    if (v.role == VarRole::p || v.role == VarRole::q || v.role == VarRole::slack) entry["index"] = v.index;
    if (v.role == VarRole::alpha || v.role == VarRole::beta || v.role == VarRole::slack) entry["bit"] = v.bit;
    varmap.push_back(std::move(entry));
  }
  nlohmann::json scalars = nlohmann::json::array();
  for (const auto& s : model.scalars) scalars.push_back(to_json(s));
  return {{"n_vars", model.n_vars()},
          {"offset", to_fraction_string(model.offset)},
          {"linear", std::move(linear)},
          {"quadratic", std::move(quadratic)},
          {"varmap", std::move(varmap)},
          {"scalars", std::move(scalars)}};
}

/// Reads a rational written either as a JSON number or as a string.
inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) return parse_rational(j.dump());  // shortest round-trip decimal
  throw ParseError("expected a number or \"num/den\" string, got " + j.dump());
}

namespace detail {

template <class Enum, std::size_t N>
Enum enum_from_string(const std::string& text, const std::array<Enum, N>& values, const char* what) {
  for (Enum v : values)
    if (to_string(v) == text) return v;
  throw ParseError(std::string("unknown ") + what + " '" + text + "'");
}

}  // namespace detail

inline QuboModel qubo_from_json(const nlohmann::json& doc) {
  try {
    QuboModel model;
    const std::size_t n = doc.at("n_vars").get<std::size_t>();
    model.linear.assign(n, Rational(0));
    model.offset = rational_from_json(doc.value("offset", nlohmann::json("0")));
    for (const auto& term : doc.at("linear")) {
      std::size_t i = term.at(0).get<std::size_t>();
      if (i >= n) throw ParseError("linear index " + std::to_string(i) + " out of range");
      model.linear[i] += rational_from_json(term.at(1));
    }
    for (const auto& term : doc.at("quadratic")) {
      std::size_t i = term.at(0).get<std::size_t>();
      std::size_t j = term.at(1).get<std::size_t>();
      if (i >= j || j >= n) throw ParseError("quadratic key (" + std::to_string(i) + "," +
                                             std::to_string(j) + ") is not upper triangular in range");
      Rational b = rational_from_json(term.at(2));
      if (b != 0) model.quadratic[{i, j}] += b;
    }
    if (doc.contains("varmap")) {
      static constexpr std::array roles{VarRole::p, VarRole::q, VarRole::alpha, VarRole::beta,
                                        VarRole::slack};
      for (const auto& entry : doc.at("varmap")) {
        VarInfo v;
        v.role = detail::enum_from_string(entry.at("role").get<std::string>(), roles, "variable role");
        v.index = entry.value("index", std::size_t{0});
        v.bit = entry.value("bit", 0u);
        model.varmap.push_back(v);
      }
      if (!model.varmap.empty() && model.varmap.size() != n)
        throw ParseError("varmap has " + std::to_string(model.varmap.size()) + " entries for " +
                         std::to_string(n) + " variables");
    }
    if (doc.contains("scalars")) {
      static constexpr std::array roles{ScalarRole::alpha, ScalarRole::beta, ScalarRole::slack};
      for (const auto& entry : doc.at("scalars")) {
        ScalarEncoding e;
        e.name = entry.at("name").get<std::string>();
        e.role = detail::enum_from_string(entry.at("role").get<std::string>(), roles, "scalar role");
        e.slack = entry.value("slack", std::size_t{0});
        e.lower = entry.at("lower").get<std::int64_t>();
        e.span = entry.value("span", std::int64_t{0});
        e.bits = entry.at("bits").get<unsigned>();
        e.step = rational_from_json(entry.at("step"));
        model.scalars.push_back(std::move(e));
      }
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed QUBO document: ") + e.what());
  }
}

}  // namespace nashqubo
