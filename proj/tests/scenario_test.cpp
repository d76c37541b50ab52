#include "gensys/scenario.hpp"

#include <gtest/gtest.h>

#include "gensys/errors.hpp"

using namespace gensys;

namespace {

const std::string kScenarioDir = GENSYS_SCENARIO_DIR;

std::string message_of(std::string_view text) {
  try {
    parse_scenario_text(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(ParseScenario, MinimalTrajectory) {
  const auto s = parse_scenario_text(R"({
    "name": "tiny", "kind": "trajectory", "seed": 3, "n_max": 5, "epsilon": 0.1,
    "tasks": {"uniform": 5},
    "rule": {"kind": "difficulty_threshold", "difficulty": [1, 2, 3, 4, 5]}
  })");
  EXPECT_EQ(s.kind, ScenarioKind::kTrajectory);
  EXPECT_EQ(s.name, "tiny");
  EXPECT_EQ(s.seed, 3u);
  EXPECT_EQ(s.n_max, 5u);
  const auto& p = std::get<TrajectoryPayload>(s.payload);
  EXPECT_EQ(p.mu.size(), 5u);
  EXPECT_TRUE(std::holds_alternative<DifficultyThreshold>(p.rule));
}

TEST(ParseScenario, KraftViolationIsAValidationError) {
  const std::string text = R"({
    "name": "bad", "kind": "prediction", "seed": 0, "n_max": 2,
    "hypotheses": [{"id": 0, "code_length": 1, "kernel": "a"},
                   {"id": 1, "code_length": 1, "kernel": "a"},
                   {"id": 2, "code_length": 1, "kernel": "a"}],
    "kernels": {"a": [[0.5, 0.5]]}, "loss": {"zero_one": 2}, "contexts": [1.0]
  })";
  EXPECT_THROW(parse_scenario_text(text), ValidationError);
  EXPECT_NE(message_of(text).find("kraft sum exceeds 1"), std::string::npos);
}

TEST(ParseScenario, MissingSeedIsAValidationError) {
  const std::string text = R"({"name": "x", "kind": "logic", "formulas": ["p0"]})";
  EXPECT_THROW(parse_scenario_text(text), ValidationError);
  EXPECT_NE(message_of(text).find("'seed'"), std::string::npos);
}

TEST(ParseScenario, SyntaxErrorsCarryLineAndColumn) {
  const std::string text = "{\n  \"name\": \"x\",\n  \"kind\" \"logic\"\n}";
  EXPECT_THROW(parse_scenario_text(text), ParseError);
  EXPECT_NE(message_of(text).find("line 3"), std::string::npos) << message_of(text);
}

TEST(ParseScenario, InvariantViolationsAreNamed) {
  // Not nested.
  EXPECT_NE(message_of(R"({"name": "x", "kind": "trajectory", "seed": 0, "n_max": 3,
      "epsilon": 0.1, "tasks": {"uniform": 2},
      "rule": {"kind": "explicit_sets", "sets": [[0], [0, 1], [0]]}})")
                .find("capability preservation"),
            std::string::npos);
  // Weights off by more than the tolerance.
  EXPECT_NE(message_of(R"({"name": "x", "kind": "trajectory", "seed": 0, "n_max": 1,
      "epsilon": 0.1, "tasks": {"weights": [0.5, 0.4]},
      "rule": {"kind": "difficulty_threshold", "difficulty": [1, 1]}})")
                .find("sum to"),
            std::string::npos);
  // Kernel row not a distribution.
  EXPECT_THROW(parse_scenario_text(R"({"name": "x", "kind": "prediction", "seed": 0,
      "n_max": 1, "hypotheses": [{"id": 0, "code_length": 0, "kernel": "a"}],
      "kernels": {"a": [[0.5, 0.6]]}, "loss": {"zero_one": 2}, "contexts": [1.0]})"),
               ValidationError);
  // Context count disagrees with the kernels.
  EXPECT_NE(message_of(R"({"name": "x", "kind": "prediction", "seed": 0,
      "n_max": 1, "hypotheses": [{"id": 0, "code_length": 0, "kernel": "a"}],
      "kernels": {"a": [[0.5, 0.5]]}, "loss": {"zero_one": 2}, "contexts": [0.5, 0.5]})")
                .find("contexts"),
            std::string::npos);
  // Formula syntax.
  EXPECT_NE(message_of(R"({"name": "x", "kind": "logic", "seed": 0, "formulas": ["[]("]})")
                .find("position 3"),
            std::string::npos);
  EXPECT_THROW(parse_scenario_text(R"({"name": "x", "kind": "nope", "seed": 0})"),
               ValidationError);
  EXPECT_THROW(parse_scenario_text(R"({"name": "x", "kind": "logic", "seed": -1,
      "formulas": []})"),
               ValidationError);
}

TEST(ParseScenario, BundledFilesAllParse) {
  for (const char* f : {"constant_trajectory.json", "staircase_uniform.json",
                        "geometric_difficulty.json", "random_coverage.json",
                        "explicit_chain.json", "bernoulli_prediction.json",
                        "weather_prediction.json", "gl_core.json"}) {
    EXPECT_NO_THROW(parse_scenario(kScenarioDir + "/" + f)) << f;
  }
  EXPECT_THROW(parse_scenario(kScenarioDir + "/does_not_exist.json"), IoError);
}

TEST(ApplyOverrides, ReplacesFields) {
  auto s = parse_scenario(kScenarioDir + "/random_coverage.json");
  apply_overrides(s, RunOverrides{99, 10, 0.2, 1e-6});
  EXPECT_EQ(s.seed, 99u);
  EXPECT_EQ(s.n_max, 10u);
  EXPECT_EQ(s.epsilon, 0.2);
  EXPECT_EQ(s.tolerance, 1e-6);
  EXPECT_THROW(apply_overrides(s, RunOverrides{std::nullopt, std::nullopt, -1.0, std::nullopt}),
               ValidationError);

  auto chain = parse_scenario(kScenarioDir + "/explicit_chain.json");
  EXPECT_THROW(apply_overrides(chain, RunOverrides{std::nullopt, 9, std::nullopt, std::nullopt}),
               ValidationError);
}

}  // namespace
