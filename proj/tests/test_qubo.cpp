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

std::vector<std::int8_t> spins_of(const Assignment& x) {
  std::vector<std::int8_t> s;
  for (auto b : x) s.push_back(b ? 1 : -1);
  return s;
}

QuboModel single(const Rational& a) {
  QuboModel m;
  m.linear = {a};
  return m;
}

TEST(Energy, AllZerosIsOffset) {
  std::mt19937_64 rng(1);
  const auto m = testing::random_model(rng, 6);
  EXPECT_EQ(energy(m, Assignment(6, 0)), m.offset);
}

TEST(Energy, SingleVariable) { EXPECT_EQ(energy(single(5), Assignment{1}), 5); }

TEST(Energy, LengthMismatch) { EXPECT_THROW(energy(single(5), Assignment{1, 0}), DimensionError); }

TEST(Ising, ZeroModel) {
  QuboModel zero;
  zero.linear.assign(3, Rational(0));
  const auto ising = qubo_to_ising(zero);
  EXPECT_EQ(ising.h, std::vector<Rational>(3, Rational(0)));
  EXPECT_TRUE(ising.j.empty());
  EXPECT_EQ(ising.offset, 0);
}

TEST(Ising, OneVariable) {
  const Rational a = R("7/3");
  const auto ising = qubo_to_ising(single(a));
  EXPECT_EQ(ising.h[0], a / 2);
  EXPECT_EQ(ising.offset, a / 2);
  EXPECT_EQ(energy(ising, std::vector<std::int8_t>{-1}), 0);
  EXPECT_EQ(energy(ising, std::vector<std::int8_t>{1}), a);
}

TEST(Ising, TwoVariableCoupling) {
  QuboModel m;
  m.linear = {0, 0};
  const Rational b = -6;
  m.quadratic[{0, 1}] = b;
  const auto ising = qubo_to_ising(m);
  EXPECT_EQ(ising.j.at({0, 1}), b / 4);
  EXPECT_EQ(ising.h[0], b / 4);
  EXPECT_EQ(ising.h[1], b / 4);
  EXPECT_EQ(ising.offset, b / 4);
  for (std::uint64_t c = 0; c < 4; ++c) {
    const auto x = testing::bits_of(c, 2);
    EXPECT_EQ(energy(ising, spins_of(x)), energy(m, x));
  }
}

TEST(Ising, RoundTripOnRandomModels) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 12;
    const auto m = testing::random_model(rng, n);
    const auto ising = qubo_to_ising(m);
    EXPECT_EQ(ising_to_qubo(ising), m);
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
      const auto x = testing::bits_of(c, n);
      ASSERT_EQ(energy(ising, spins_of(x)), energy(m, x));
    }
  }
}

TEST(Builder, FoldsDiagonalAndOrdersKeys) {
  QuboBuilder b(3);
  b.add_quadratic(2, 0, 4);
  b.add_quadratic(1, 1, 3);
  b.add_quadratic(0, 2, -4);
  const auto m = std::move(b).build();
  EXPECT_TRUE(m.quadratic.empty());
  EXPECT_EQ(m.linear[1], 3);
}

TEST(Builder, SquareMatchesDirectEvaluation) {
  QuboBuilder b(3);
  b.add_square({{0, 2}, {1, -1}, {2, 3}, {0, 1}}, -2, R("1/2"));
  const auto m = std::move(b).build();
  for (std::uint64_t c = 0; c < 8; ++c) {
    const auto x = testing::bits_of(c, 3);
    const Rational v = 3 * x[0] - x[1] + 3 * x[2] - 2;
    EXPECT_EQ(energy(m, x), R("1/2") * v * v);
  }
}

TEST(Json, RoundTripsCompiledModels) {
  for (const auto& g : {testing::battle_of_the_sexes(), testing::bird_game(), testing::eight_strategy_game()}) {
    const auto model = compile_game(g).model;
    const auto doc = to_json(model);
    EXPECT_EQ(doc["n_vars"], model.n_vars());
    EXPECT_EQ(qubo_from_json(nlohmann::json::parse(doc.dump())), model);
  }
}

TEST(Json, RationalsAsFractionStrings) {
  QuboModel m = single(R("-3/4"));
  m.offset = 2;
  const auto doc = to_json(m);
  EXPECT_EQ(doc["offset"], "2/1");
  EXPECT_EQ(doc["linear"][0][1], "-3/4");
}

TEST(Json, AcceptsPlainNumbers) {
  const auto m = qubo_from_json(nlohmann::json::parse(
      R"({"n_vars": 2, "offset": 1, "linear": [[0, 0.5], [1, "2"]], "quadratic": [[0, 1, -3]]})"));
  EXPECT_EQ(m.offset, 1);
  EXPECT_EQ(m.linear[0], R("1/2"));
  EXPECT_EQ(m.quadratic.at({0, 1}), -3);
}

TEST(Json, RejectsMalformed) {
  EXPECT_THROW(qubo_from_json(nlohmann::json::parse(R"({"linear": []})")), ParseError);
  EXPECT_THROW(qubo_from_json(nlohmann::json::parse(R"({"n_vars": 2, "linear": [], "quadratic": [[1, 0, 1]]})")),
               ParseError);
  EXPECT_THROW(qubo_from_json(nlohmann::json::parse(R"({"n_vars": 1, "linear": [[3, 1]], "quadratic": []})")),
               ParseError);
  EXPECT_THROW(qubo_from_json(nlohmann::json::parse(R"({"n_vars": 1, "linear": [[0, "x"]], "quadratic": []})")),
               ParseError);
}

TEST(Rational, ParsesExactly) {
  EXPECT_EQ(parse_rational("2.5"), Rational(5, 2));
  EXPECT_EQ(parse_rational("-1/2"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational(" 3 "), 3);
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_EQ(to_fraction_string(Rational(3)), "3/1");
  EXPECT_EQ(to_display_string(Rational(-2, 3)), "-2/3");
}

}  // namespace
}  // namespace nashqubo
