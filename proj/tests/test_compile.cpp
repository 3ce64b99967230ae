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

using testing::R;

SlackedProgram slacked(const BimatrixGame& g, SlackMode mode = SlackMode::per_row) {
  return add_slacks(integerize(build_qp(g)).first, mode);
}

// The penalized objective evaluated directly from decoded values, without any
// QUBO machinery.
Rational penalized_objective(const SlackedProgram& sp, const PenaltyConfig& pen, const Assignment& p,
                             const Assignment& q, const Rational& alpha, const Rational& beta,
                             const std::vector<Rational>& slacks) {
  const auto& qp = sp.program;
  auto sq = [](const Rational& v) { return v * v; };
  Rational sum_p = -1, sum_q = -1;
  for (auto b : p) sum_p += b;
  for (auto b : q) sum_q += b;
  Rational f = -objective_value(qp, p, q, alpha, beta) + pen.theta1 * sq(sum_p) + pen.theta2 * sq(sum_q);
  for (std::size_t i = 0; i < qp.player1_rows.size(); ++i)
    f += pen.lambda[i] * sq(row_value(qp.player1_rows[i], q, alpha) + slacks[sp.player1_slack[i]]);
  for (std::size_t j = 0; j < qp.player2_rows.size(); ++j)
    f += pen.phi[j] * sq(row_value(qp.player2_rows[j], p, beta) + slacks[sp.player2_slack[j]]);
  return f;
}

TEST(Bounds, BattleOfTheSexesAlpha) {
  const auto enc = derive_bounds(slacked(testing::battle_of_the_sexes()));
  ASSERT_EQ(enc.size(), 6u);
  EXPECT_EQ(enc[0].name, "alpha");
  EXPECT_EQ(enc[0].lowest(), -1);
  EXPECT_EQ(enc[0].lower, -1);
  EXPECT_EQ(enc[0].bits, 2u);
  EXPECT_GE(enc[0].highest(), 2);
}

TEST(Bounds, BattleOfTheSexesFirstSlack) {
  const auto enc = derive_bounds(slacked(testing::battle_of_the_sexes()));
  EXPECT_EQ(enc[2].name, "zeta1");
  EXPECT_EQ(enc[2].lower, 0);
  EXPECT_EQ(enc[2].span, 3);
  EXPECT_EQ(enc[2].bits, 2u);
}

TEST(Bounds, ZeroGameDegenerateRange) {
  const auto enc = derive_bounds(slacked(testing::zero_game()));
  EXPECT_EQ(enc[0].span, 0);
  EXPECT_EQ(enc[0].lowest(), 0);
  EXPECT_EQ(enc[0].bits, 1u);
  const auto none = derive_bounds(slacked(testing::zero_game()), {.alpha = 0u, .beta = 0u, .slack = 0u});
  for (const auto& e : none) {
    EXPECT_EQ(e.bits, 0u);
    EXPECT_EQ(e.highest(), 0);
  }
}

TEST(Bounds, SlacksStartAtZeroAndCoverEveryProfile) {
  for (const auto& g : {testing::battle_of_the_sexes(), testing::bird_game(), testing::eight_strategy_game()}) {
    for (auto mode : {SlackMode::per_row, SlackMode::paper_compat}) {
      const auto sp = slacked(g, mode);
      const auto enc = derive_bounds(sp);
      EXPECT_LE(enc[0].lowest(), *std::min_element(g.m().data().begin(), g.m().data().end()));
      EXPECT_GE(enc[0].highest(), *std::max_element(g.m().data().begin(), g.m().data().end()));
      EXPECT_LE(enc[1].lowest(), *std::min_element(g.n().data().begin(), g.n().data().end()));
      EXPECT_GE(enc[1].highest(), *std::max_element(g.n().data().begin(), g.n().data().end()));
      for (std::size_t e = 2; e < enc.size(); ++e) EXPECT_EQ(enc[e].lower, 0);
      if (mode != SlackMode::per_row) continue;
      // Every equilibrium point must be encodable with its constructive slacks.
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) {
          const auto p = one_hot(g.rows(), r), q = one_hot(g.cols(), c);
          for (const auto& a : {enc[0].lowest(), enc[0].highest()})
            for (const auto& b : {enc[1].lowest(), enc[1].highest()}) {
              const auto s = constructive_slacks(sp, p, q, a, b);
              if (!s) continue;
              for (std::size_t k = 0; k < s->size(); ++k) EXPECT_TRUE(enc[2 + k].code_of((*s)[k]).has_value());
            }
        }
    }
  }
}

TEST(Compile, GamePairTermsFlattenInPrintedOrder) {
  const auto sp = slacked(testing::battle_of_the_sexes(), SlackMode::paper_compat);
  const auto model = compile_qubo(sp, derive_bounds(sp), PenaltyConfig::uniform(2, 2, 0));
  // With all penalties off, the p-q couplings are exactly the game terms.
  QuadraticTerms game_terms;
  for (const auto& [key, b] : model.quadratic)
    if (key.second < 4) game_terms[key] = b;
  const QuadraticTerms expected{{{0, 1}, -3}, {{0, 2}, 2}, {{1, 3}, 2}, {{2, 3}, -3}};
  EXPECT_EQ(game_terms, expected);
  EXPECT_EQ(model.varmap[0], (VarInfo{VarRole::p, 0, 0}));
  EXPECT_EQ(model.varmap[1], (VarInfo{VarRole::q, 0, 0}));
  EXPECT_EQ(model.varmap[2], (VarInfo{VarRole::q, 1, 0}));
  EXPECT_EQ(model.varmap[3], (VarInfo{VarRole::p, 1, 0}));
}

TEST(Compile, GameTermsSurviveUnitPenalties) {
  // Penalty squares couple p with p and q with q only, so the p-q terms stay
  // as printed at the default weights too.
  const auto sp = slacked(testing::battle_of_the_sexes(), SlackMode::paper_compat);
  const auto model = compile_qubo(sp, derive_bounds(sp), PenaltyConfig::uniform(2, 2));
  EXPECT_EQ(model.quadratic.at({0, 1}), -3);
  EXPECT_EQ(model.quadratic.at({0, 2}), 2);
  EXPECT_EQ(model.quadratic.at({1, 3}), 2);
  EXPECT_EQ(model.quadratic.at({2, 3}), -3);
}

TEST(Compile, ZeroGameOneHotIsGround) {
  const auto comp = compile_game(testing::zero_game());
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      const auto x = encode_profile(comp, {r, c}, 0, 0);
      ASSERT_TRUE(x.has_value());
      EXPECT_EQ(energy(comp.model, *x), 0);
    }
}

TEST(Compile, UpperTriangularAndNoZeros) {
  for (const auto& g : {testing::battle_of_the_sexes(), testing::bird_game(), testing::eight_strategy_game()})
    for (auto mode : {SlackMode::per_row, SlackMode::paper_compat}) {
      const auto comp = compile_game(g, {.slack_mode = mode});
      for (const auto& [key, b] : comp.model.quadratic) {
        EXPECT_LT(key.first, key.second);
        EXPECT_LT(key.second, comp.model.n_vars());
        EXPECT_NE(b, 0);
      }
      EXPECT_EQ(comp.model.varmap.size(), comp.model.n_vars());
    }
}

TEST(Compile, ExactOnEveryAssignment) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> w(0, 4);
  for (const auto& g : {testing::battle_of_the_sexes(), testing::matching_pennies(), testing::zero_game()})
    for (auto mode : {SlackMode::per_row, SlackMode::paper_compat}) {
      const auto sp = slacked(g, mode);
      const auto enc = derive_bounds(sp);
      PenaltyConfig pen{w(rng), w(rng), {w(rng), w(rng)}, {w(rng), w(rng)}};
      const auto model = compile_qubo(sp, enc, pen);
      ASSERT_LE(model.n_vars(), 20u);
      const Compilation comp{g, build_qp(g), {}, sp, enc, pen, model};
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << model.n_vars()); ++code) {
        const auto x = testing::bits_of(code, model.n_vars());
        const auto d = decode(comp, x);
        ASSERT_EQ(energy(model, x), penalized_objective(sp, pen, d.p_bits, d.q_bits, d.alpha, d.beta, d.slacks))
            << "assignment " << code;
      }
    }
}

TEST(Compile, ExactOnSampledAssignmentsOfLargerGames) {
  std::mt19937_64 rng(2);
  for (const auto& g : {testing::bird_game(), testing::eight_strategy_game()}) {
    const auto comp = compile_game(g, {.penalties = PenaltyConfig::uniform(g.rows(), g.cols(), 3)});
    for (int t = 0; t < 500; ++t) {
      Assignment x(comp.model.n_vars());
      for (auto& b : x) b = rng() & 1;
      const auto d = decode(comp, x);
      EXPECT_EQ(energy(comp.model, x),
                penalized_objective(comp.slacked, comp.penalties, d.p_bits, d.q_bits, d.alpha, d.beta, d.slacks));
    }
  }
}

TEST(Compile, PenaltiesVanishAtEquilibria) {
  for (const auto& g : {testing::battle_of_the_sexes(), testing::bird_game(), testing::eight_strategy_game(),
                        testing::zero_game()}) {
    const auto comp = compile_game(g);
    for (const auto& e : pure_nash_enumerate(g)) {
      const auto pay = payoff(g, e);
      const auto x = encode_profile(comp, e, pay.pi1, pay.pi2);
      ASSERT_TRUE(x.has_value()) << to_string(e);
      EXPECT_EQ(energy(comp.model, *x), 0) << g.name() << " " << to_string(e);
    }
  }
}

TEST(Compile, BattleOfTheSexesEquilibriumEnergyIsZero) {
  const auto comp = compile_game(testing::battle_of_the_sexes());
  const auto x = encode_profile(comp, testing::at(1, 1), 2, 1);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(energy(comp.model, *x), 0);
}

TEST(Compile, EnergyIsNeverNegativeOnFeasiblePoints) {
  // On a feasible point alpha and beta bound the payoffs from above, so the
  // negated objective is non-negative.
  const auto comp = compile_game(testing::bird_game());
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      for (int a2 = -10; a2 <= 21; ++a2)
        for (int b2 : {-10, 0, 4, 12, 21}) {
          const auto x = encode_profile(comp, {r, c}, Rational(a2, 2), Rational(b2, 2));
          if (x) {
            EXPECT_GE(energy(comp.model, *x), 0);
          }
        }
}

TEST(Compile, Errors) {
  const auto sp = slacked(testing::battle_of_the_sexes());
  auto enc = derive_bounds(sp);
  EXPECT_THROW(compile_qubo(sp, enc, {-1, 1, {1, 1}, {1, 1}}), ParameterError);
  EXPECT_THROW(compile_qubo(sp, enc, {1, 1, {1, R("-1/2")}, {1, 1}}), ParameterError);
  EXPECT_THROW(compile_qubo(sp, enc, {1, 1, {1}, {1, 1}}), ParameterError);
  enc.pop_back();
  EXPECT_THROW(compile_qubo(sp, enc, PenaltyConfig::uniform(2, 2)), CompileError);
  enc = derive_bounds(sp);
  enc[0].bits = 63;
  EXPECT_THROW(compile_qubo(sp, enc, PenaltyConfig::uniform(2, 2)), CompileError);
}

TEST(Compile, SizesOfTheFixtures) {
  EXPECT_EQ(compile_game(testing::battle_of_the_sexes()).model.n_vars(), 16u);
  EXPECT_EQ(compile_game(testing::battle_of_the_sexes(), {.slack_mode = SlackMode::paper_compat}).model.n_vars(),
            12u);
  EXPECT_EQ(compile_game(testing::bird_game()).model.n_vars(), 46u);
}

TEST(Compile, EightStrategyInnerFactorTen) {
  PenaltyConfig pen = PenaltyConfig::uniform(8, 8);
  pen.theta1 = pen.theta2 = 100;
  const auto comp = compile_game(testing::eight_strategy_game(), {.penalties = pen});
  const std::string summary = compile_summary(comp);
  EXPECT_NE(summary.find("inner factor 10"), std::string::npos) << summary;
}

TEST(Compile, BirdSummaryNotesFactorTwo) {
  const std::string summary = compile_summary(compile_game(testing::bird_game()));
  EXPECT_NE(summary.find("player-1 row 1 scale factor 2: -10q1 + 20q2 + 5q3 - 2alpha <= 0"), std::string::npos)
      << summary;
}

TEST(Compile, EncodeRejectsUnrepresentableValues) {
  const auto comp = compile_game(testing::battle_of_the_sexes());
  EXPECT_FALSE(encode_profile(comp, testing::at(1, 1), R("5/2"), 1).has_value());  // off grid
  EXPECT_FALSE(encode_profile(comp, testing::at(1, 1), 9, 1).has_value());         // out of range
  EXPECT_FALSE(encode_profile(comp, testing::at(1, 1), 1, 1).has_value());         // alpha below payoff
}

}  // namespace
}  // namespace nashqubo
