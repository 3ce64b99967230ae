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

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace nashqubo {
namespace {

using testing::at;
using testing::profiles;
using testing::R;

// Oracle written the obvious way: try every unilateral deviation.
bool no_profitable_deviation(const BimatrixGame& g, const PureProfile& p) {
  for (std::size_t r = 0; r < g.rows(); ++r)
    if (g.m()(r, p.col) > g.m()(p.row, p.col)) return false;
  for (std::size_t c = 0; c < g.cols(); ++c)
    if (g.n()(p.row, c) > g.n()(p.row, p.col)) return false;
  return true;
}

TEST(Game, PayoffBattleOfTheSexes) {
  const auto g = testing::battle_of_the_sexes();
  EXPECT_EQ(payoff(g, at(1, 1)).pi1, 2);
  EXPECT_EQ(payoff(g, at(1, 1)).pi2, 1);
  EXPECT_EQ(payoff(g, at(2, 1)).pi1, -1);
  EXPECT_EQ(payoff(g, at(2, 1)).pi2, -1);
}

TEST(Game, PayoffZeroGame) {
  const auto g = testing::zero_game();
  for (std::size_t r = 1; r <= 2; ++r)
    for (std::size_t c = 1; c <= 2; ++c) {
      EXPECT_EQ(payoff(g, at(r, c)).pi1, 0);
      EXPECT_EQ(payoff(g, at(r, c)).pi2, 0);
    }
}

TEST(Game, PayoffOutOfRangeIsDimensionError) {
  const auto g = testing::battle_of_the_sexes();
  EXPECT_THROW(payoff(g, at(3, 1)), DimensionError);
  EXPECT_THROW(payoff(g, at(1, 3)), DimensionError);
}

TEST(Game, RejectsMismatchedOrEmptyMatrices) {
  EXPECT_THROW(BimatrixGame("x", testing::matrix({{"1", "2"}}), testing::matrix({{"1"}, {"2"}})), DimensionError);
  EXPECT_THROW(BimatrixGame("x", RationalMatrix(0, 0), RationalMatrix(0, 0)), DimensionError);
  EXPECT_THROW(RationalMatrix::from_rows({{Rational(1), Rational(2)}, {Rational(3)}}), DimensionError);
}

TEST(Game, PayoffsStayExact) {
  const auto g = testing::eight_strategy_game();
  EXPECT_EQ(g.m()(3, 4), R("2/3"));
  EXPECT_EQ(g.m()(1, 4), R("3/2"));
  EXPECT_EQ(payoff(g, at(5, 2)).pi1, R("-1/2"));
}

TEST(Oracle, BattleOfTheSexes) {
  EXPECT_EQ(pure_nash_enumerate(testing::battle_of_the_sexes()), profiles({{1, 1}, {2, 2}}));
}

TEST(Oracle, BirdGame) {
  EXPECT_EQ(pure_nash_enumerate(testing::bird_game()), profiles({{1, 2}, {2, 1}, {3, 3}}));
}

TEST(Oracle, MatchingPenniesHasNone) { EXPECT_TRUE(pure_nash_enumerate(testing::matching_pennies()).empty()); }

TEST(Oracle, ZeroGameEverythingIsEquilibrium) {
  EXPECT_EQ(pure_nash_enumerate(testing::zero_game()), profiles({{1, 1}, {1, 2}, {2, 1}, {2, 2}}));
}

TEST(Oracle, EightStrategyGameHas22) {
  const auto found = pure_nash_enumerate(testing::eight_strategy_game());
  const auto expected = profiles({{2, 2}, {3, 3}, {3, 4}, {3, 6}, {3, 7}, {4, 3}, {4, 4}, {4, 6},
                                  {4, 7}, {5, 5}, {5, 6}, {5, 7}, {6, 3}, {6, 4}, {6, 5}, {6, 6},
                                  {6, 7}, {7, 3}, {7, 4}, {7, 5}, {7, 6}, {7, 7}});
  EXPECT_EQ(found.size(), 22u);
  EXPECT_EQ(found, expected);
}

TEST(Oracle, EightStrategyGameIsSymmetric) {
  const auto g = testing::eight_strategy_game();
  EXPECT_EQ(g.n(), g.m().transposed());
}

TEST(Oracle, RowMajorOrder) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto found = pure_nash_enumerate(testing::random_integer_game(rng, 4, 3, -2, 2));
    EXPECT_TRUE(std::is_sorted(found.begin(), found.end()));
  }
}

TEST(Oracle, AgreesWithDeviationCheck) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    const auto g = testing::random_integer_game(rng, rows, cols, -3, 3);
    const auto found = pure_nash_enumerate(g);
    std::vector<PureProfile> expected;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const bool nash = no_profitable_deviation(g, {r, c});
        EXPECT_EQ(is_pure_nash(g, {r, c}), nash);
        if (nash) expected.push_back({r, c});
      }
    EXPECT_EQ(found, expected);
  }
}

TEST(Scale, DoublesBirdGame) {
  const auto g = scale_payoffs(testing::bird_game(), 2, 2);
  EXPECT_EQ(g.m(), testing::matrix({{"-10", "20", "5"}, {"0", "4", "2"}, {"-5", "12", "10"}}));
  EXPECT_EQ(g.n(), g.m().transposed());
}

TEST(Scale, IdentityLeavesGameUnchanged) {
  const auto g = testing::eight_strategy_game();
  const auto s = scale_payoffs(g, 1, 1);
  EXPECT_EQ(s.m(), g.m());
  EXPECT_EQ(s.n(), g.n());
}

TEST(Scale, ThreeClearsTheThirds) {
  const auto s = scale_payoffs(testing::eight_strategy_game(), 3, 3);
  EXPECT_EQ(s.m()(3, 4), 2);
}

TEST(Scale, RejectsNonPositiveFactors) {
  const auto g = testing::battle_of_the_sexes();
  EXPECT_THROW(scale_payoffs(g, 0, 1), ParameterError);
  EXPECT_THROW(scale_payoffs(g, 1, R("-1/2")), ParameterError);
}

TEST(Scale, OracleIsInvariantUnderPositiveScalingAndShifts) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(1, 9), shift(-7, 7);
  for (int t = 0; t < 200; ++t) {
    const auto g = testing::random_integer_game(rng, 1 + rng() % 4, 1 + rng() % 4, -3, 3);
    const auto base = pure_nash_enumerate(g);
    EXPECT_EQ(pure_nash_enumerate(scale_payoffs(g, Rational(num(rng), num(rng)), Rational(num(rng), num(rng)))),
              base);
    EXPECT_EQ(pure_nash_enumerate(shift_payoffs(g, Rational(shift(rng), num(rng)), Rational(shift(rng)))), base);
  }
}

TEST(Profile, PrintsOneBased) { EXPECT_EQ(to_string(at(3, 1)), "(3,1)"); }

}  // namespace
}  // namespace nashqubo
