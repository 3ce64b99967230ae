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
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nashqubo/qp.hpp"

namespace nashqubo {

enum class ScalarRole { alpha, beta, slack };

inline std::string_view to_string(ScalarRole role) {
  switch (role) {
    case ScalarRole::alpha: return "alpha";
    case ScalarRole::beta: return "beta";
    case ScalarRole::slack: return "slack";
  }
  return "unknown";
}

/// Binary expansion of a bounded scalar on a grid:
///   value = step * (lower + sum_k 2^k bit_k),  k < bits.
/// With bits == 0 the scalar is the constant step * lower.
struct ScalarEncoding {
  std::string name;
  ScalarRole role = ScalarRole::alpha;
  std::size_t slack = 0;    // slack index when role == slack
  std::int64_t lower = 0;   // in grid steps
  std::int64_t span = 0;    // analytic range width in grid steps
  unsigned bits = 0;
  Rational step = 1;

  std::uint64_t max_code() const { return bits == 0 ? 0 : (std::uint64_t{1} << bits) - 1; }
  Rational weight(unsigned k) const { return step * Rational(BigInt(1) << k); }
  Rational value(std::uint64_t code) const { return step * Rational(lower + static_cast<std::int64_t>(code)); }
  Rational lowest() const { return value(0); }
  Rational highest() const { return value(max_code()); }
  /// Top of the analytic range; codes above it exist only as bit headroom.
  Rational analytic_highest() const { return step * Rational(lower + span); }

  /// Code whose value equals `v`, if `v` lies on the representable grid.
  std::optional<std::uint64_t> code_of(const Rational& v) const {
    Rational units = v / step - Rational(lower);
    if (!is_integer(units) || units < 0 || units > Rational(max_code())) return std::nullopt;
    return numerator(units).convert_to<std::uint64_t>();
  }

  friend bool operator==(const ScalarEncoding&, const ScalarEncoding&) = default;
};

/// Smallest bit count whose codes 0 .. 2^bits - 1 cover `span` steps; at
/// least one bit.
inline unsigned bits_for_span(std::int64_t span) {
  if (span <= 0) return 1;
  return static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(span)));
}

struct BitOverrides {
  std::optional<unsigned> alpha;
  std::optional<unsigned> beta;
  std::optional<unsigned> slack;
};

/// Penalty multipliers of the squared constraint terms. lambda weighs the
/// player-1 rows, phi the player-2 rows.
struct PenaltyConfig {
  Rational theta1 = 1;
  Rational theta2 = 1;
  std::vector<Rational> lambda;
  std::vector<Rational> phi;

  static PenaltyConfig uniform(std::size_t rows, std::size_t cols, const Rational& weight = 1) {
    return {weight, weight, std::vector<Rational>(rows, weight), std::vector<Rational>(cols, weight)};
  }

  void validate(std::size_t rows, std::size_t cols) const {
    if (lambda.size() != rows)
      throw ParameterError("lambda needs " + std::to_string(rows) + " weights, got " +
                           std::to_string(lambda.size()));
    if (phi.size() != cols)
      throw ParameterError("phi needs " + std::to_string(cols) + " weights, got " +
                           std::to_string(phi.size()));
    auto negative = [](const Rational& w) { return w < 0; };
    if (theta1 < 0 || theta2 < 0 || std::any_of(lambda.begin(), lambda.end(), negative) ||
        std::any_of(phi.begin(), phi.end(), negative))
      throw ParameterError("penalty weights must be non-negative");
  }

  friend bool operator==(const PenaltyConfig&, const PenaltyConfig&) = default;
};

namespace detail {

inline std::int64_t steps(const Rational& v, const Rational& step, bool round_up) {
  Rational units = v / step;
  return to_int64(numerator(round_up ? ceil(units) : floor(units)), "scalar bound");
}

/// Range of a row's scalar over one-hot strategies: scalar values that make
/// the row tight, i.e. coeff_k / -scalar_coeff.
inline std::pair<Rational, Rational> tight_values(const std::vector<ConstraintRow>& rows) {
  std::optional<Rational> lo, hi;
  for (const auto& row : rows) {
    if (row.scalar_coeff == 0) continue;
    for (const auto& c : row.coeffs) {
      Rational v = (c + row.constant) / -row.scalar_coeff;
      lo = lo ? std::min(*lo, v) : v;
      hi = hi ? std::max(*hi, v) : v;
    }
  }
  return {lo.value_or(0), hi.value_or(0)};
}

inline ScalarEncoding scalar_encoding(std::string name, ScalarRole role,
                                      const std::vector<ConstraintRow>& rows, const Rational& unit,
                                      std::optional<unsigned> bits) {
  auto [lo, hi] = tight_values(rows);
  ScalarEncoding enc;
  enc.name = std::move(name);
  enc.role = role;
  enc.step = unit;
  enc.lower = steps(lo, unit, false);
  enc.span = steps(hi, unit, true) - enc.lower;
  enc.bits = bits.value_or(bits_for_span(enc.span));
  return enc;
}

}  // namespace detail

/// Encodings for alpha, beta and every slack, in that order.
///
/// alpha spans the entries of M (its value at any one-hot q and tight row),
/// beta the entries of N. A slack spans [0, max over its rows of the largest
/// row deficit], reached at alpha_max against the smallest row coefficient.
/// Slack steps follow the row coefficients, so integerized rows give integer
/// slacks.
inline std::vector<ScalarEncoding> derive_bounds(const SlackedProgram& sp,
                                                 const BitOverrides& overrides = {}) {
  const auto& qp = sp.program;
  std::vector<ScalarEncoding> out;
  out.push_back(detail::scalar_encoding("alpha", ScalarRole::alpha, qp.player1_rows, qp.alpha_unit,
                                        overrides.alpha));
  out.push_back(detail::scalar_encoding("beta", ScalarRole::beta, qp.player2_rows, qp.beta_unit,
                                        overrides.beta));
  const Rational alpha_max = out[0].analytic_highest();
  const Rational beta_max = out[1].analytic_highest();
  const Rational alpha_min = out[0].lowest();
  const Rational beta_min = out[1].lowest();

  for (std::size_t s = 0; s < sp.slacks.size(); ++s) {
    const auto& slack = sp.slacks[s];
    const bool p1 = slack.owner == Player::one;
    const auto& rows = p1 ? qp.player1_rows : qp.player2_rows;
    const Rational& unit = p1 ? qp.alpha_unit : qp.beta_unit;
    BigInt grid = 1;
    Rational deficit = 0;
    for (std::size_t r : slack.rows) {
      const auto& row = rows[r];
      grid = lcm(grid, detail::row_multiplier(row, unit));
      Rational smallest = *std::min_element(row.coeffs.begin(), row.coeffs.end());
      Rational scalar_term = std::min(row.scalar_coeff * (p1 ? alpha_max : beta_max),
                                      row.scalar_coeff * (p1 ? alpha_min : beta_min));
      deficit = std::max(deficit, Rational(-(smallest + scalar_term + row.constant)));
    }
    ScalarEncoding enc;
    enc.name = slack.name;
    enc.role = ScalarRole::slack;
    enc.slack = s;
    enc.step = Rational(1, grid);
    enc.lower = 0;
    enc.span = detail::steps(deficit, enc.step, true);
    enc.bits = overrides.slack.value_or(bits_for_span(enc.span));
    out.push_back(std::move(enc));
  }
  return out;
}

}  // namespace nashqubo
