#ifndef GENSYS_SCENARIO_HPP_
#define GENSYS_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gensys/complexity_prior.hpp"
#include "gensys/gl_prover.hpp"
#include "gensys/modal_formula.hpp"
#include "gensys/prediction.hpp"
#include "gensys/system_family.hpp"
#include "gensys/taskspace.hpp"

namespace gensys {

enum class ScenarioKind { kTrajectory, kPrediction, kLogic };

const char* to_string(ScenarioKind kind);

// Closed-form gains for a threshold rule over tasks whose mass is
// proportional to ratio^d at difficulty d = 1..levels.
struct GeometricGains {
  double ratio = 0.5;
  std::size_t levels = 0;
};

struct TrajectoryPayload {
  TaskMeasure mu;
  // RandomCoverage::seed is ignored here; runs use Scenario::seed.
  SolverRule rule;
  std::optional<GeometricGains> expect_geometric;
};

struct PredictionPayload {
  HypothesisClass hypotheses;
  KernelStore kernels;
  LossTable loss;
  ContextDistribution contexts;
};

struct LogicEntry {
  std::string text;
  ModalFormula formula;
  std::optional<Verdict> expect;
};

struct LogicPayload {
  std::vector<LogicEntry> formulas;
};

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::kTrajectory;
  std::uint64_t seed = 0;
  std::size_t n_max = 1;
  double epsilon = 0.01;
  double tolerance = kInequalitySlack;
  std::variant<TrajectoryPayload, PredictionPayload, LogicPayload> payload;
};

// Parses and validates a JSON scenario. Syntax problems raise ParseError
// with line and column; schema or invariant problems raise ValidationError
// naming the violated rule.
Scenario parse_scenario_text(std::string_view text);
Scenario parse_scenario(const std::filesystem::path& path);

// Command-line overrides applied on top of a parsed scenario.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_max;
  std::optional<double> epsilon;
  std::optional<double> tolerance;
};

void apply_overrides(Scenario& scenario, const RunOverrides& overrides);

}  // namespace gensys

#endif  // GENSYS_SCENARIO_HPP_
