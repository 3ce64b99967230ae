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

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nashqubo/compile.hpp"

namespace nashqubo {

/// Penalty settings that may be partially specified; unset fields fall back
/// to the next layer (built-in weight 1 < game file < command line).
/// A one-element lambda or phi applies to every row.
struct PenaltyOverrides {
  std::optional<Rational> theta1;
  std::optional<Rational> theta2;
  std::optional<std::vector<Rational>> lambda;
  std::optional<std::vector<Rational>> phi;

  PenaltyOverrides layered_over(const PenaltyOverrides& base) const {
    return {theta1 ? theta1 : base.theta1, theta2 ? theta2 : base.theta2, lambda ? lambda : base.lambda,
            phi ? phi : base.phi};
  }

  PenaltyConfig resolve(std::size_t rows, std::size_t cols) const {
    PenaltyConfig out = PenaltyConfig::uniform(rows, cols);
    if (theta1) out.theta1 = *theta1;
    if (theta2) out.theta2 = *theta2;
    auto spread = [](const std::vector<Rational>& w, std::size_t n, const char* what) {
      if (w.size() == 1) return std::vector<Rational>(n, w.front());
      if (w.size() != n)
        throw ParameterError(std::string(what) + " needs 1 or " + std::to_string(n) + " weights, got " +
                             std::to_string(w.size()));
      return w;
    };
    if (lambda) out.lambda = spread(*lambda, rows, "lambda");
    if (phi) out.phi = spread(*phi, cols, "phi");
    out.validate(rows, cols);
    return out;
  }

  bool empty() const { return !theta1 && !theta2 && !lambda && !phi; }
};

/// Parses "2", "1/2" or a comma-separated list "1,2,1/2".
inline std::vector<Rational> parse_weight_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw ParseError("empty weight list");
  return out;
}

inline nlohmann::json to_json(const PenaltyOverrides& p) {
  nlohmann::json out = nlohmann::json::object();
  auto list = [](const std::vector<Rational>& w) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : w) a.push_back(to_fraction_string(x));
    return a;
  };
  if (p.theta1) out["theta1"] = to_fraction_string(*p.theta1);
  if (p.theta2) out["theta2"] = to_fraction_string(*p.theta2);
  if (p.lambda) out["lambda"] = list(*p.lambda);
  if (p.phi) out["phi"] = list(*p.phi);
  return out;
}

inline PenaltyOverrides penalty_overrides_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("\"penalties\" must be an object");
  PenaltyOverrides p;
  auto weights = [](const nlohmann::json& v) {
    std::vector<Rational> out;
    if (v.is_array()) {
      for (const auto& x : v) out.push_back(rational_from_json(x));
    } else {
      out.push_back(rational_from_json(v));
    }
    return out;
  };
  if (j.contains("theta1")) p.theta1 = rational_from_json(j["theta1"]);
  if (j.contains("theta2")) p.theta2 = rational_from_json(j["theta2"]);
  if (j.contains("lambda")) p.lambda = weights(j["lambda"]);
  if (j.contains("phi")) p.phi = weights(j["phi"]);
  return p;
}

/// A game document: {"name", "m", "n"} with entries as numbers or "num/den"
/// strings, plus optional recommended "penalties".
struct GameFile {
  BimatrixGame game;
  PenaltyOverrides penalties;
};

inline RationalMatrix matrix_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string("\"") + what + "\" must be a non-empty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty())
      throw ParseError(std::string("\"") + what + "\" rows must be non-empty arrays");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    rows.push_back(std::move(r));
  }
  try {
    return RationalMatrix::from_rows(rows);
  } catch (const DimensionError& e) {
    throw ParseError(std::string("\"") + what + "\": " + e.what());
  }
}

inline nlohmann::json to_json(const RationalMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_fraction_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline GameFile game_file_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("game document must be a JSON object");
  if (!doc.contains("m") || !doc.contains("n")) throw ParseError("game document needs \"m\" and \"n\"");
  std::string name = doc.value("name", std::string("unnamed"));
  RationalMatrix m = matrix_from_json(doc["m"], "m");
  RationalMatrix n = matrix_from_json(doc["n"], "n");
  try {
    GameFile out{BimatrixGame(std::move(name), std::move(m), std::move(n)), {}};
    if (doc.contains("penalties")) out.penalties = penalty_overrides_from_json(doc["penalties"]);
    return out;
  } catch (const DimensionError& e) {
    throw ParseError(std::string("invalid game: ") + e.what());
  }
}

inline nlohmann::json to_json(const GameFile& file) {
  nlohmann::json doc = {{"name", file.game.name()}, {"m", to_json(file.game.m())}, {"n", to_json(file.game.n())}};
  if (!file.penalties.empty()) doc["penalties"] = to_json(file.penalties);
  return doc;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline GameFile load_game_file(const std::string& path) { return game_file_from_json(read_json_file(path)); }

}  // namespace nashqubo
