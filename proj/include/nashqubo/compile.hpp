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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nashqubo/qubo.hpp"

namespace nashqubo {

/// Flattened variable order: p1, q1 .. q_cols, p2 .. p_rows (the order in
/// which the variables first appear when the objective is expanded row by
/// row), then the bits of each scalar encoding, least significant first.
struct VariableLayout {
  std::vector<std::size_t> p;
  std::vector<std::size_t> q;
  std::vector<std::vector<std::size_t>> scalar_bits;  // parallel to the encodings
  std::size_t n_vars = 0;
};

inline VariableLayout make_layout(std::size_t rows, std::size_t cols,
                                  const std::vector<ScalarEncoding>& encodings) {
  VariableLayout layout;
  layout.p.resize(rows);
  layout.q.resize(cols);
  std::size_t next = 0;
  layout.p[0] = next++;
  for (std::size_t j = 0; j < cols; ++j) layout.q[j] = next++;
  for (std::size_t i = 1; i < rows; ++i) layout.p[i] = next++;
  for (const auto& enc : encodings) {
    std::vector<std::size_t> bits;
    for (unsigned k = 0; k < enc.bits; ++k) bits.push_back(next++);
    layout.scalar_bits.push_back(std::move(bits));
  }
  layout.n_vars = next;
  return layout;
}

namespace detail {

inline std::size_t find_encoding(const std::vector<ScalarEncoding>& encodings, ScalarRole role,
                                 std::size_t slack = 0) {
  for (std::size_t e = 0; e < encodings.size(); ++e)
    if (encodings[e].role == role && (role != ScalarRole::slack || encodings[e].slack == slack))
      return e;
  throw CompileError("no encoding for " + std::string(to_string(role)) +
                     (role == ScalarRole::slack ? " " + std::to_string(slack) : std::string()));
}

/// Appends coeff * scalar to `terms`; returns the constant part.
inline Rational add_scalar(QuboBuilder::LinearForm& terms, const ScalarEncoding& enc,
                           const std::vector<std::size_t>& bits, const Rational& coeff) {
  for (unsigned k = 0; k < enc.bits; ++k) terms.emplace_back(bits[k], coeff * enc.weight(k));
  return coeff * enc.lowest();
}

}  // namespace detail

/// Builds the minimization target
///
///   -(objective) + theta1 (sum p - 1)^2 + theta2 (sum q - 1)^2
///                + sum_i lambda_i (row_i + slack)^2 + sum_j phi_j (row_j + slack)^2
///
/// with every scalar replaced by its binary expansion. The squared terms are
/// added with positive sign so that violations raise the energy. The result is
/// exact: energy(model, x) equals the expression above at the decoded values
/// for every assignment x.
inline QuboModel compile_qubo(const SlackedProgram& sp, const std::vector<ScalarEncoding>& encodings,
                              const PenaltyConfig& penalties) {
  const auto& qp = sp.program;
  penalties.validate(qp.rows, qp.cols);
  const std::size_t alpha = detail::find_encoding(encodings, ScalarRole::alpha);
  const std::size_t beta = detail::find_encoding(encodings, ScalarRole::beta);
  std::vector<std::size_t> slack_enc;
  for (std::size_t s = 0; s < sp.slacks.size(); ++s)
    slack_enc.push_back(detail::find_encoding(encodings, ScalarRole::slack, s));
  for (const auto& enc : encodings)
    if (enc.bits > 62) throw CompileError("encoding of " + enc.name + " exceeds 62 bits");

  const VariableLayout layout = make_layout(qp.rows, qp.cols, encodings);
  QuboBuilder builder(layout.n_vars);

  for (std::size_t i = 0; i < qp.rows; ++i)
    for (std::size_t j = 0; j < qp.cols; ++j)
      if (qp.objective_quadratic(i, j) != 0)
        builder.add_quadratic(layout.p[i], layout.q[j], -qp.objective_quadratic(i, j));
  {
    QuboBuilder::LinearForm terms;
    Rational constant = detail::add_scalar(terms, encodings[alpha], layout.scalar_bits[alpha], -qp.alpha_coeff);
    constant += detail::add_scalar(terms, encodings[beta], layout.scalar_bits[beta], -qp.beta_coeff);
    for (auto& [i, c] : terms) builder.add_linear(i, c);
    builder.add_offset(constant);
  }

  auto simplex = [&](const ConstraintRow& row, const std::vector<std::size_t>& vars, const Rational& w) {
    QuboBuilder::LinearForm terms;
    for (std::size_t k = 0; k < vars.size(); ++k) terms.emplace_back(vars[k], row.coeffs[k]);
    builder.add_square(std::move(terms), row.constant, w);
  };
  simplex(qp.simplex_p, layout.p, penalties.theta1);
  simplex(qp.simplex_q, layout.q, penalties.theta2);

  auto inequality = [&](const ConstraintRow& row, const std::vector<std::size_t>& vars,
                        std::size_t scalar, std::size_t slack, const Rational& w) {
    QuboBuilder::LinearForm terms;
    for (std::size_t k = 0; k < vars.size(); ++k) terms.emplace_back(vars[k], row.coeffs[k]);
    Rational constant = row.constant;
    constant += detail::add_scalar(terms, encodings[scalar], layout.scalar_bits[scalar], row.scalar_coeff);
    constant += detail::add_scalar(terms, encodings[slack], layout.scalar_bits[slack], Rational(1));
    builder.add_square(std::move(terms), constant, w);
  };
  for (std::size_t i = 0; i < qp.player1_rows.size(); ++i)
    inequality(qp.player1_rows[i], layout.q, alpha, slack_enc[sp.player1_slack[i]], penalties.lambda[i]);
  for (std::size_t j = 0; j < qp.player2_rows.size(); ++j)
    inequality(qp.player2_rows[j], layout.p, beta, slack_enc[sp.player2_slack[j]], penalties.phi[j]);

  QuboModel model = std::move(builder).build();
  model.varmap.resize(layout.n_vars);
  for (std::size_t i = 0; i < qp.rows; ++i) model.varmap[layout.p[i]] = {VarRole::p, i, 0};
  for (std::size_t j = 0; j < qp.cols; ++j) model.varmap[layout.q[j]] = {VarRole::q, j, 0};
  for (std::size_t e = 0; e < encodings.size(); ++e) {
    const auto& enc = encodings[e];
    VarRole role = enc.role == ScalarRole::alpha  ? VarRole::alpha
                   : enc.role == ScalarRole::beta ? VarRole::beta
                                                  : VarRole::slack;
    for (unsigned k = 0; k < enc.bits; ++k)
      model.varmap[layout.scalar_bits[e][k]] = {role, enc.role == ScalarRole::slack ? enc.slack : 0, k};
  }
  model.scalars = encodings;
  return model;
}

/// Value of a constraint row (without slack) at strategy vector x and scalar s.
inline Rational row_value(const ConstraintRow& row, std::span<const std::uint8_t> x, const Rational& s) {
  Rational v = row.constant + row.scalar_coeff * s;
  for (std::size_t k = 0; k < row.coeffs.size(); ++k)
    if (x[k]) v += row.coeffs[k];
  return v;
}

/// Objective of the (possibly integerized) program: p^T Q q + alpha_coeff
/// alpha + beta_coeff beta. Zero at an equilibrium with alpha, beta equal to
/// the payoffs.
inline Rational objective_value(const QuadraticProgram& qp, std::span<const std::uint8_t> p,
                                std::span<const std::uint8_t> q, const Rational& alpha,
                                const Rational& beta) {
  Rational v = qp.alpha_coeff * alpha + qp.beta_coeff * beta;
  for (std::size_t i = 0; i < qp.rows; ++i)
    for (std::size_t j = 0; j < qp.cols; ++j)
      if (p[i] && q[j]) v += qp.objective_quadratic(i, j);
  return v;
}

inline std::vector<std::uint8_t> one_hot(std::size_t size, std::size_t index) {
  std::vector<std::uint8_t> v(size, 0);
  v.at(index) = 1;
  return v;
}

/// Slack values that make every equality hold at the given point, or nullopt
/// if none exist (a negative slack is required, or a shared slack would need
/// different values on different rows).
inline std::optional<std::vector<Rational>> constructive_slacks(const SlackedProgram& sp,
                                                                std::span<const std::uint8_t> p,
                                                                std::span<const std::uint8_t> q,
                                                                const Rational& alpha,
                                                                const Rational& beta) {
  const auto& qp = sp.program;
  std::vector<std::optional<Rational>> values(sp.slacks.size());
  auto place = [&](std::size_t slack, const Rational& v) {
    if (v < 0) return false;
    if (values[slack] && *values[slack] != v) return false;
    values[slack] = v;
    return true;
  };
  for (std::size_t i = 0; i < qp.player1_rows.size(); ++i)
    if (!place(sp.player1_slack[i], -row_value(qp.player1_rows[i], q, alpha))) return std::nullopt;
  for (std::size_t j = 0; j < qp.player2_rows.size(); ++j)
    if (!place(sp.player2_slack[j], -row_value(qp.player2_rows[j], p, beta))) return std::nullopt;
  std::vector<Rational> out;
  for (auto& v : values) out.push_back(v.value_or(Rational(0)));
  return out;
}

/// Inverse of decoding: sets p and q bits and writes each scalar value (one
/// per model.scalars entry, same order) in binary. Throws ParameterError if a
/// value is off its grid or out of range.
inline Assignment encode_assignment(const QuboModel& model, std::span<const std::uint8_t> p,
                                    std::span<const std::uint8_t> q,
                                    const std::vector<Rational>& scalar_values) {
  if (scalar_values.size() != model.scalars.size())
    throw DimensionError("expected " + std::to_string(model.scalars.size()) + " scalar values");
  std::vector<std::uint64_t> codes;
  for (std::size_t e = 0; e < model.scalars.size(); ++e) {
    auto code = model.scalars[e].code_of(scalar_values[e]);
    if (!code)
      throw ParameterError(model.scalars[e].name + " = " + to_display_string(scalar_values[e]) +
                           " is not representable");
    codes.push_back(*code);
  }
  Assignment x(model.n_vars(), 0);
  for (std::size_t v = 0; v < model.varmap.size(); ++v) {
    const auto& info = model.varmap[v];
    switch (info.role) {
      case VarRole::p: x[v] = p[info.index]; break;
      case VarRole::q: x[v] = q[info.index]; break;
      case VarRole::alpha:
      case VarRole::beta:
      case VarRole::slack: {
        for (std::size_t e = 0; e < model.scalars.size(); ++e) {
          const auto& enc = model.scalars[e];
          bool match = (info.role == VarRole::alpha && enc.role == ScalarRole::alpha) ||
                       (info.role == VarRole::beta && enc.role == ScalarRole::beta) ||
                       (info.role == VarRole::slack && enc.role == ScalarRole::slack &&
                        enc.slack == info.index);
          if (match) x[v] = static_cast<std::uint8_t>((codes[e] >> info.bit) & 1u);
        }
        break;
      }
    }
  }
  return x;
}

struct CompileOptions {
  SlackMode slack_mode = SlackMode::per_row;
  std::optional<PenaltyConfig> penalties;  // uniform weight 1 when unset
  BitOverrides bits;
};

/// Every intermediate product of compiling one game, kept together so that
/// decoding and certification can refer back to the program they came from.
struct Compilation {
  BimatrixGame game;
  QuadraticProgram program;  // as built, before integerize
  ScaleReport scale;
  SlackedProgram slacked;    // integerized, with slacks
  std::vector<ScalarEncoding> encodings;
  PenaltyConfig penalties;
  QuboModel model;
};

inline Compilation compile_game(const BimatrixGame& game, const CompileOptions& options = {}) {
  QuadraticProgram program = build_qp(game);
  auto [integral, scale] = integerize(program);
  SlackedProgram slacked = add_slacks(integral, options.slack_mode);
  std::vector<ScalarEncoding> encodings = derive_bounds(slacked, options.bits);
  PenaltyConfig penalties = options.penalties.value_or(PenaltyConfig::uniform(game.rows(), game.cols()));
  QuboModel model = compile_qubo(slacked, encodings, penalties);
  return {game,
          std::move(program),
          std::move(scale),
          std::move(slacked),
          std::move(encodings),
          std::move(penalties),
          std::move(model)};
}

/// Assignment of the compiled model at a pure profile with alpha, beta set to
/// the given values and the slacks set constructively. nullopt if no such
/// slacks exist or a value is not representable.
inline std::optional<Assignment> encode_profile(const Compilation& comp, const PureProfile& profile,
                                                const Rational& alpha, const Rational& beta) {
  comp.game.check(profile);
  auto p = one_hot(comp.game.rows(), profile.row);
  auto q = one_hot(comp.game.cols(), profile.col);
  auto slacks = constructive_slacks(comp.slacked, p, q, alpha, beta);
  if (!slacks) return std::nullopt;
  std::vector<Rational> values;
  for (const auto& enc : comp.model.scalars) {
    if (enc.role == ScalarRole::alpha) values.push_back(alpha);
    else if (enc.role == ScalarRole::beta) values.push_back(beta);
    else values.push_back((*slacks)[enc.slack]);
  }
  try {
    return encode_assignment(comp.model, p, q, values);
  } catch (const ParameterError&) {
    return std::nullopt;
  }
}

}  // namespace nashqubo
