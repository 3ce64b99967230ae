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

#include "test_support.hpp"

namespace nashqubo {
namespace {

using testing::fixture_path;
using testing::R;

TEST(GameFile, FixturesMatchTheReferenceMatrices) {
  EXPECT_EQ(load_game_file(fixture_path("battle_of_the_sexes.json")).game.m(), testing::battle_of_the_sexes().m());
  EXPECT_EQ(load_game_file(fixture_path("battle_of_the_sexes.json")).game.n(), testing::battle_of_the_sexes().n());
  const auto bird = load_game_file(fixture_path("bird_game.json"));
  EXPECT_EQ(bird.game.m(), testing::bird_game().m());
  EXPECT_EQ(bird.game.n(), testing::bird_game().n());
  EXPECT_EQ(bird.game.m()(0, 1), 10);
  const auto eight = load_game_file(fixture_path("eight_strategy.json"));
  EXPECT_EQ(eight.game.m(), testing::eight_strategy_game().m());
  EXPECT_EQ(eight.game.n(), testing::eight_strategy_game().n());
  // Player 1's fifth strategy against player 2's second.
  EXPECT_EQ(eight.game.m()(1, 4), R("3/2"));
  EXPECT_EQ(eight.game.m()(3, 4), R("2/3"));
  EXPECT_EQ(load_game_file(fixture_path("matching_pennies.json")).game.n(), testing::matching_pennies().n());
  EXPECT_EQ(load_game_file(fixture_path("zero_game.json")).game.m(), testing::zero_game().m());
}

TEST(GameFile, FixturePenalties) {
  const auto eight = load_game_file(fixture_path("eight_strategy.json"));
  EXPECT_EQ(eight.penalties.theta1, Rational(100));
  EXPECT_EQ(eight.penalties.theta2, Rational(100));
  EXPECT_FALSE(eight.penalties.lambda);
  EXPECT_TRUE(load_game_file(fixture_path("battle_of_the_sexes.json")).penalties.empty());
}

TEST(GameFile, RejectsBadDocuments) {
  auto parse = [](const char* text) { return game_file_from_json(nlohmann::json::parse(text)); };
  EXPECT_THROW(parse(R"({"m": [[1, 2], [3]], "n": [[1, 2], [3, 4]]})"), ParseError);
  EXPECT_THROW(parse(R"({"m": [[1, 2]], "n": [[1], [2]]})"), ParseError);
  EXPECT_THROW(parse(R"({"m": [[1]]})"), ParseError);
  EXPECT_THROW(parse(R"({"m": [], "n": []})"), ParseError);
  EXPECT_THROW(parse(R"({"m": [["x"]], "n": [[1]]})"), ParseError);
  EXPECT_THROW(parse(R"([1, 2])"), ParseError);
  EXPECT_THROW(load_game_file("/nonexistent/game.json"), ParseError);
}

TEST(GameFile, RoundTrip) {
  const auto eight = load_game_file(fixture_path("eight_strategy.json"));
  const auto again = game_file_from_json(nlohmann::json::parse(to_json(eight).dump()));
  EXPECT_EQ(again.game.m(), eight.game.m());
  EXPECT_EQ(again.game.name(), eight.game.name());
  EXPECT_EQ(again.penalties.theta1, eight.penalties.theta1);
}

TEST(Penalties, LayeringAndBroadcast) {
  PenaltyOverrides file;
  file.theta1 = Rational(100);
  file.lambda = std::vector<Rational>{2};
  PenaltyOverrides cli;
  cli.lambda = parse_weight_list("1, 2,1/2");
  const auto resolved = cli.layered_over(file).resolve(3, 2);
  EXPECT_EQ(resolved.theta1, 100);
  EXPECT_EQ(resolved.theta2, 1);
  EXPECT_EQ(resolved.lambda, (std::vector<Rational>{1, 2, R("1/2")}));
  EXPECT_EQ(resolved.phi, (std::vector<Rational>{1, 1}));
  EXPECT_EQ(file.resolve(3, 2).lambda, (std::vector<Rational>{2, 2, 2}));
  EXPECT_THROW(cli.resolve(2, 2), ParameterError);
  PenaltyOverrides negative;
  negative.theta2 = Rational(-1);
  EXPECT_THROW(negative.resolve(2, 2), ParameterError);
  EXPECT_THROW(parse_weight_list(""), ParseError);
}

TEST(Run, AutomaticSamplerChoice) {
  RunConfig config;
  const auto bos = run_solve(load_game_file(fixture_path("battle_of_the_sexes.json")), config);
  EXPECT_EQ(bos.manifest["resolved"]["sampler"], "exhaustive");
  EXPECT_EQ(bos.exit_status(), 0);
  EXPECT_EQ(bos.report.certified_profiles(), testing::profiles({{1, 1}, {2, 2}}));
  config.capacity = 10;
  config.reads = 50;
  const auto small = run_solve(load_game_file(fixture_path("battle_of_the_sexes.json")), config);
  EXPECT_EQ(small.manifest["resolved"]["sampler"], "sa");
  EXPECT_EQ(small.report.total, 50u);
}

TEST(Run, MatchingPenniesCertifiesNothing) {
  const auto r = run_solve(load_game_file(fixture_path("matching_pennies.json")), {});
  EXPECT_EQ(r.exit_status(), 2);
  EXPECT_TRUE(r.report.certified_profiles().empty());
}

TEST(Run, BirdExhaustiveGroundStatesAreEquilibria) {
  RunConfig config;
  config.sampler = SamplerKind::exhaustive;
  const auto r = run_solve(load_game_file(fixture_path("bird_game.json")), config);
  ASSERT_FALSE(r.report.rows.empty());
  for (const auto& row : r.report.rows) {
    ASSERT_TRUE(row.profile.has_value());
    EXPECT_TRUE(row.is_nash) << row.label();
  }
  EXPECT_EQ(r.report.certified_profiles(), testing::profiles({{1, 2}, {2, 1}, {3, 3}}));
}

TEST(Run, CommandLineOverridesFilePenalties) {
  RunConfig config;
  config.penalties.theta2 = Rational(3);
  const auto comp = compile_game(testing::bird_game(),
                                 config.compile_options(load_game_file(fixture_path("bird_game.json"))));
  EXPECT_EQ(comp.penalties.theta1, 8);
  EXPECT_EQ(comp.penalties.theta2, 3);
}

TEST(Run, ManifestReplaysToIdenticalReports) {
  RunConfig config;
  config.sampler = SamplerKind::sa;
  config.reads = 200;
  config.seed = 5;
  config.sweeps = 200;
  config.penalties.lambda = std::vector<Rational>{R("3/2")};
  config.slack_mode = SlackMode::paper_compat;
  const auto first = run_solve(load_game_file(fixture_path("bird_game.json")), config);
  const auto doc = nlohmann::json::parse(first.manifest.dump());
  const auto replay = run_solve(game_file_from_json(doc["game"]), run_config_from_json(doc["config"]));
  EXPECT_EQ(to_csv(first.report), to_csv(replay.report));
  EXPECT_EQ(to_json(first.report).dump(), to_json(replay.report).dump());
  EXPECT_EQ(first.manifest["resolved"], replay.manifest["resolved"]);
}

TEST(Run, ManifestRecordsTheResolvedSetup) {
  const auto r = run_solve(load_game_file(fixture_path("bird_game.json")), {});
  const auto& m = r.manifest;
  EXPECT_EQ(m["resolved"]["n_vars"], 46);
  EXPECT_EQ(m["resolved"]["penalties"]["theta1"], "8/1");
  EXPECT_EQ(m["resolved"]["scale"]["player1_rows"][0], "2");
  EXPECT_EQ(m["resolved"]["encodings"].size(), 8u);
  EXPECT_TRUE(m["timings_seconds"].contains("sample"));
  EXPECT_EQ(m["game"]["m"][0][2], "5/2");
}

TEST(Run, BadConfigurations) {
  const auto bos = load_game_file(fixture_path("battle_of_the_sexes.json"));
  RunConfig config;
  config.sampler = SamplerKind::external;
  EXPECT_THROW(run_solve(bos, config), ParameterError);
  config.sampler = SamplerKind::sa;
  config.t_start = 0.001;
  EXPECT_THROW(run_solve(bos, config), ParameterError);
  config = {};
  config.sampler = SamplerKind::exhaustive;
  config.capacity = 8;
  EXPECT_THROW(run_solve(bos, config), CapacityError);
  EXPECT_THROW(sampler_from_string("qpu"), ParameterError);
  EXPECT_THROW(slack_mode_from_string("shared"), ParameterError);
}

}  // namespace
}  // namespace nashqubo
