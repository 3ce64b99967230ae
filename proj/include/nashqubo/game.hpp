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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nashqubo/rational.hpp"

namespace nashqubo {

/// Dense row-major matrix. Only the game and program types use it, so it
/// stays minimal.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds from nested rows; throws DimensionError on ragged input.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix out(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != out.cols_)
        throw DimensionError("ragged matrix: row " + std::to_string(r + 1) + " has " +
                             std::to_string(rows[r].size()) + " entries, expected " +
                             std::to_string(out.cols_));
      std::copy(rows[r].begin(), rows[r].end(), out.data_.begin() + r * out.cols_);
    }
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<T>& data() const noexcept { return data_; }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

/// A pure strategy pair. Indices are 0-based; reports print them 1-based.
struct PureProfile {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const PureProfile&, const PureProfile&) = default;
};

inline std::string to_string(const PureProfile& profile) {
  return "(" + std::to_string(profile.row + 1) + "," + std::to_string(profile.col + 1) + ")";
}

struct PayoffPair {
  Rational pi1;
  Rational pi2;

  friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

/// Two-player game with exact payoffs: m pays player 1 (row chooser), n pays
/// player 2 (column chooser). Immutable once built.
class BimatrixGame {
 public:
  BimatrixGame(std::string name, RationalMatrix m, RationalMatrix n)
      : name_(std::move(name)), m_(std::move(m)), n_(std::move(n)) {
    if (m_.empty() || n_.empty()) throw DimensionError("payoff matrices must be non-empty");
    if (m_.rows() != n_.rows() || m_.cols() != n_.cols())
      throw DimensionError("payoff matrices differ in shape: " + std::to_string(m_.rows()) + "x" +
                           std::to_string(m_.cols()) + " vs " + std::to_string(n_.rows()) + "x" +
                           std::to_string(n_.cols()));
  }

  const std::string& name() const noexcept { return name_; }
  const RationalMatrix& m() const noexcept { return m_; }
  const RationalMatrix& n() const noexcept { return n_; }
  std::size_t rows() const noexcept { return m_.rows(); }
  std::size_t cols() const noexcept { return m_.cols(); }

  void check(const PureProfile& profile) const {
    if (profile.row >= rows() || profile.col >= cols())
      throw DimensionError("profile " + to_string(profile) + " outside " + std::to_string(rows()) +
                           "x" + std::to_string(cols()) + " game");
  }

  friend bool operator==(const BimatrixGame&, const BimatrixGame&) = default;

 private:
  std::string name_;
  RationalMatrix m_;
  RationalMatrix n_;
};

inline PayoffPair payoff(const BimatrixGame& game, const PureProfile& profile) {
  game.check(profile);
  return {game.m()(profile.row, profile.col), game.n()(profile.row, profile.col)};
}

/// Weak best-response test: neither player can strictly gain by deviating.
inline bool is_pure_nash(const BimatrixGame& game, const PureProfile& profile) {
  game.check(profile);
  const auto& m = game.m();
  const auto& n = game.n();
  for (std::size_t r = 0; r < game.rows(); ++r)
    if (m(r, profile.col) > m(profile.row, profile.col)) return false;
  for (std::size_t c = 0; c < game.cols(); ++c)
    if (n(profile.row, c) > n(profile.row, profile.col)) return false;
  return true;
}

/// All pure Nash profiles in row-major order. Column maxima of m and row
/// maxima of n are computed once, so this is O(rows * cols).
inline std::vector<PureProfile> pure_nash_enumerate(const BimatrixGame& game) {
  const auto& m = game.m();
  const auto& n = game.n();
  std::vector<Rational> col_best(game.cols());
  std::vector<Rational> row_best(game.rows());
  for (std::size_t c = 0; c < game.cols(); ++c) {
    col_best[c] = m(0, c);
    for (std::size_t r = 1; r < game.rows(); ++r) col_best[c] = std::max(col_best[c], m(r, c));
  }
  for (std::size_t r = 0; r < game.rows(); ++r) {
    row_best[r] = n(r, 0);
    for (std::size_t c = 1; c < game.cols(); ++c) row_best[r] = std::max(row_best[r], n(r, c));
  }
  std::vector<PureProfile> out;
  for (std::size_t r = 0; r < game.rows(); ++r)
    for (std::size_t c = 0; c < game.cols(); ++c)
      if (m(r, c) == col_best[c] && n(r, c) == row_best[r]) out.push_back({r, c});
  return out;
}

inline BimatrixGame scale_payoffs(const BimatrixGame& game, const Rational& c1, const Rational& c2) {
  if (c1 <= 0 || c2 <= 0)
    throw ParameterError("scale factors must be positive, got " + to_display_string(c1) + " and " +
                         to_display_string(c2));
  RationalMatrix m = game.m();
  RationalMatrix n = game.n();
  for (std::size_t r = 0; r < game.rows(); ++r)
    for (std::size_t c = 0; c < game.cols(); ++c) {
      m(r, c) *= c1;
      n(r, c) *= c2;
    }
  return BimatrixGame(game.name(), std::move(m), std::move(n));
}

inline BimatrixGame shift_payoffs(const BimatrixGame& game, const Rational& d1, const Rational& d2) {
  RationalMatrix m = game.m();
  RationalMatrix n = game.n();
  for (std::size_t r = 0; r < game.rows(); ++r)
    for (std::size_t c = 0; c < game.cols(); ++c) {
      m(r, c) += d1;
      n(r, c) += d2;
    }
  return BimatrixGame(game.name(), std::move(m), std::move(n));
}

}  // namespace nashqubo
