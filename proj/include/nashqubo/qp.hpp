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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nashqubo/game.hpp"

namespace nashqubo {

enum class Player { one, two };

/// One linear constraint over a strategy vector and a single payoff scalar:
///   sum_k coeffs[k] * x_k + scalar_coeff * scalar + constant  (<= or =) 0
/// For player-1 rows x is q and the scalar is alpha; for player-2 rows x is p
/// and the scalar is beta. `factor` records the multiplier integerize applied.
struct ConstraintRow {
  std::vector<Rational> coeffs;
  Rational scalar_coeff = 0;
  Rational constant = 0;
  Rational factor = 1;

  friend bool operator==(const ConstraintRow&, const ConstraintRow&) = default;
};

/// The bilinear program whose optimum value 0 is attained exactly at Nash
/// profiles:
///   maximize  p^T (M+N) q - alpha - beta
///   s.t.      M q - alpha <= 0,  N^T p - beta <= 0,  sum p = 1,  sum q = 1.
///
/// alpha_unit and beta_unit are the grids the payoff scalars live on: the
/// reciprocal of the least common denominator of the entries of M (resp. N).
/// At a pure equilibrium alpha equals an entry of M, so it is always a
/// multiple of alpha_unit.
struct QuadraticProgram {
  std::size_t rows = 0;  // pure strategies of player 1 (length of p)
  std::size_t cols = 0;  // pure strategies of player 2 (length of q)
  RationalMatrix objective_quadratic;  // coefficient of p_i q_j
  Rational alpha_coeff = -1;
  Rational beta_coeff = -1;
  Rational objective_factor = 1;
  std::vector<ConstraintRow> player1_rows;  // over q, one per row of M
  std::vector<ConstraintRow> player2_rows;  // over p, one per column of N
  ConstraintRow simplex_p;
  ConstraintRow simplex_q;
  Rational alpha_unit = 1;
  Rational beta_unit = 1;

  std::size_t inequality_count() const { return player1_rows.size() + player2_rows.size(); }

  friend bool operator==(const QuadraticProgram&, const QuadraticProgram&) = default;
};

inline QuadraticProgram build_qp(const BimatrixGame& game) {
  const auto& m = game.m();
  const auto& n = game.n();
  QuadraticProgram qp;
  qp.rows = game.rows();
  qp.cols = game.cols();
  qp.objective_quadratic = RationalMatrix(qp.rows, qp.cols);
  for (std::size_t i = 0; i < qp.rows; ++i)
    for (std::size_t j = 0; j < qp.cols; ++j) qp.objective_quadratic(i, j) = m(i, j) + n(i, j);

  for (std::size_t i = 0; i < qp.rows; ++i) {
    ConstraintRow row;
    row.scalar_coeff = -1;
    for (std::size_t j = 0; j < qp.cols; ++j) row.coeffs.push_back(m(i, j));
    qp.player1_rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < qp.cols; ++j) {
    ConstraintRow row;
    row.scalar_coeff = -1;
    for (std::size_t i = 0; i < qp.rows; ++i) row.coeffs.push_back(n(i, j));
    qp.player2_rows.push_back(std::move(row));
  }
  qp.simplex_p = {std::vector<Rational>(qp.rows, Rational(1)), 0, -1, 1};
  qp.simplex_q = {std::vector<Rational>(qp.cols, Rational(1)), 0, -1, 1};
  qp.alpha_unit = Rational(1, denominator_lcm(m.data()));
  qp.beta_unit = Rational(1, denominator_lcm(n.data()));
  return qp;
}

/// Multipliers applied by integerize, one per row plus the objective.
struct ScaleReport {
  Rational objective = 1;
  std::vector<Rational> player1_rows;
  std::vector<Rational> player2_rows;

  friend bool operator==(const ScaleReport&, const ScaleReport&) = default;
};

namespace detail {

/// Smallest positive integer making every strategy coefficient, the constant,
/// and the scalar coefficient per grid step integral.
inline BigInt row_multiplier(const ConstraintRow& row, const Rational& unit) {
  BigInt d = denominator_lcm(row.coeffs);
  d = lcm(d, denominator(row.constant));
  d = lcm(d, denominator(Rational(row.scalar_coeff * unit)));
  return d;
}

inline void scale_row(ConstraintRow& row, const Rational& k) {
  for (auto& c : row.coeffs) c *= k;
  row.scalar_coeff *= k;
  row.constant *= k;
  row.factor *= k;
}

}  // namespace detail

/// Scales every inequality row independently to integer coefficients (the
/// scalar's coefficient is measured per step of its grid, so rows stay
/// integral once alpha and beta are binary encoded). The objective is scaled
/// by the least common denominator of its own coefficients. Scaling by a
/// positive constant leaves every feasible set unchanged.
inline std::pair<QuadraticProgram, ScaleReport> integerize(const QuadraticProgram& qp) {
  QuadraticProgram out = qp;
  ScaleReport report;

  std::vector<Rational> objective_terms = qp.objective_quadratic.data();
  objective_terms.push_back(qp.alpha_coeff);
  objective_terms.push_back(qp.beta_coeff);
  Rational k(denominator_lcm(objective_terms));
  for (std::size_t i = 0; i < out.rows; ++i)
    for (std::size_t j = 0; j < out.cols; ++j) out.objective_quadratic(i, j) *= k;
  out.alpha_coeff *= k;
  out.beta_coeff *= k;
  out.objective_factor *= k;
  report.objective = out.objective_factor;

  for (auto& row : out.player1_rows) {
    detail::scale_row(row, Rational(detail::row_multiplier(row, out.alpha_unit)));
    report.player1_rows.push_back(row.factor);
  }
  for (auto& row : out.player2_rows) {
    detail::scale_row(row, Rational(detail::row_multiplier(row, out.beta_unit)));
    report.player2_rows.push_back(row.factor);
  }
  return {std::move(out), std::move(report)};
}

enum class SlackMode { per_row, paper_compat };

inline std::string_view to_string(SlackMode mode) {
  return mode == SlackMode::per_row ? "per-row" : "paper-compat";
}

struct SlackVariable {
  std::string name;
  Player owner = Player::one;
  std::vector<std::size_t> rows;  // indices into the owner's row list

  friend bool operator==(const SlackVariable&, const SlackVariable&) = default;
};

/// Inequalities turned into equalities `row + slack = 0` with slack >= 0.
/// Simplex equalities are carried over from `program` unchanged.
struct SlackedProgram {
  QuadraticProgram program;
  SlackMode mode = SlackMode::per_row;
  std::vector<SlackVariable> slacks;
  std::vector<std::size_t> player1_slack;  // slack index for each player-1 row
  std::vector<std::size_t> player2_slack;
};

inline SlackedProgram add_slacks(const QuadraticProgram& qp, SlackMode mode = SlackMode::per_row) {
  SlackedProgram sp{qp, mode, {}, {}, {}};
  auto attach = [&](Player owner, std::size_t count, const char* base,
                    std::vector<std::size_t>& index) {
    if (count == 0) return;
    if (mode == SlackMode::per_row) {
      for (std::size_t r = 0; r < count; ++r) {
        index.push_back(sp.slacks.size());
        sp.slacks.push_back({base + std::to_string(r + 1), owner, {r}});
      }
    } else {
      SlackVariable shared{base, owner, {}};
      for (std::size_t r = 0; r < count; ++r) {
        shared.rows.push_back(r);
        index.push_back(sp.slacks.size());
      }
      sp.slacks.push_back(std::move(shared));
    }
  };
  attach(Player::one, qp.player1_rows.size(), "zeta", sp.player1_slack);
  attach(Player::two, qp.player2_rows.size(), "eta", sp.player2_slack);
  return sp;
}

/// Renders a row the way it is written by hand, e.g. "2q1 - q2 - alpha <= 0".
/// `slack` appends "+ name" and switches the relation to "=".
inline std::string format_row(const ConstraintRow& row, char var, const std::string& scalar,
                              const std::string& slack = {}) {
  std::string out;
  auto term = [&](const Rational& c, const std::string& symbol) {
    if (c == 0) return;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (mag != 1 || symbol.empty()) out += to_display_string(mag);
    out += symbol;
  };
  for (std::size_t k = 0; k < row.coeffs.size(); ++k)
    term(row.coeffs[k], std::string(1, var) + std::to_string(k + 1));
  if (!scalar.empty()) term(row.scalar_coeff, scalar);
  term(row.constant, "");
  if (!slack.empty()) term(Rational(1), slack);
  if (out.empty()) out = "0";
  return out + (slack.empty() && row.constant == 0 ? " <= 0" : " = 0");
}

}  // namespace nashqubo
