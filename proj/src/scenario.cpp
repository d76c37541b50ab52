#include "gensys/scenario.hpp"

#include <fstream>
#include <sstream>

#include "gensys/errors.hpp"
#include "json.hpp"

namespace gensys {

using nlohmann::json;

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kTrajectory:
      return "trajectory";
    case ScenarioKind::kPrediction:
      return "prediction";
    case ScenarioKind::kLogic:
      return "logic";
  }
  return "unknown";
}

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError("missing required field '" + std::string(key) +
                          "' in " + where);
  }
  return obj.at(key);
}

template <class T>
T as(const json& value, const std::string& what) {
  try {
    if constexpr (std::is_unsigned_v<T>) {
      if (!value.is_number_unsigned()) throw ValidationError("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!value.is_number()) throw ValidationError("");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!value.is_string()) throw ValidationError("");
    }
    return value.get<T>();
  } catch (const std::exception&) {
    throw ValidationError("field '" + what + "' has the wrong type");
  }
}

std::vector<double> number_list(const json& value, const std::string& what) {
  if (!value.is_array()) throw ValidationError("field '" + what + "' must be a list");
  std::vector<double> out;
  for (const auto& v : value) out.push_back(as<double>(v, what));
  return out;
}

std::vector<std::vector<double>> number_table(const json& value,
                                              const std::string& what) {
  if (!value.is_array()) {
    throw ValidationError("field '" + what + "' must be a list of rows");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& r : value) rows.push_back(number_list(r, what));
  return rows;
}

TaskMeasure parse_tasks(const json& tasks) {
  if (tasks.contains("uniform")) {
    return TaskMeasure::uniform(as<std::size_t>(tasks.at("uniform"), "tasks.uniform"));
  }
  if (tasks.contains("weights")) {
    return TaskMeasure(number_list(tasks.at("weights"), "tasks.weights"));
  }
  if (tasks.contains("proportional")) {
    const auto masses = number_list(tasks.at("proportional"), "tasks.proportional");
    return TaskMeasure::proportional(masses);
  }
  throw ValidationError(
      "field 'tasks' needs one of 'uniform', 'weights', 'proportional'");
}

SolverRule parse_rule(const json& rule) {
  const auto kind = as<std::string>(require(rule, "kind", "rule"), "rule.kind");
  if (kind == "difficulty_threshold") {
    DifficultyThreshold r;
    const auto& d = require(rule, "difficulty", "rule");
    if (!d.is_array()) throw ValidationError("field 'rule.difficulty' must be a list");
    for (const auto& v : d) r.difficulty.push_back(as<std::uint64_t>(v, "rule.difficulty"));
    return r;
  }
  if (kind == "random_coverage") {
    RandomCoverage r;
    r.probability = as<double>(require(rule, "probability", "rule"), "rule.probability");
    return r;
  }
  if (kind == "explicit_sets") {
    ExplicitSets r;
    const auto& sets = require(rule, "sets", "rule");
    if (!sets.is_array()) throw ValidationError("field 'rule.sets' must be a list");
    for (const auto& s : sets) {
      if (!s.is_array()) throw ValidationError("field 'rule.sets' must hold lists");
      std::vector<TaskId> members;
      for (const auto& t : s) members.push_back(TaskId{as<std::size_t>(t, "rule.sets")});
      r.sets.emplace_back(std::move(members));
    }
    return r;
  }
  throw ValidationError("unknown solver rule kind '" + kind + "'");
}

TrajectoryPayload parse_trajectory(const json& doc, std::size_t n_max) {
  TaskMeasure mu = parse_tasks(require(doc, "tasks", "scenario"));
  SolverRule rule = parse_rule(require(doc, "rule", "scenario"));
  std::optional<GeometricGains> geometric;
  if (doc.contains("expect")) {
    const auto& e = doc.at("expect");
    if (e.contains("geometric_gains")) {
      const auto& g = e.at("geometric_gains");
      geometric = GeometricGains{
          as<double>(require(g, "ratio", "expect.geometric_gains"), "ratio"),
          as<std::size_t>(require(g, "levels", "expect.geometric_gains"), "levels")};
    }
  }
  // Surfaces nestedness, bounds and difficulty coverage problems now.
  (void)build_trajectory(rule, n_max, mu);
  return TrajectoryPayload{std::move(mu), std::move(rule), geometric};
}

PredictionPayload parse_prediction(const json& doc) {
  const auto& hyps = require(doc, "hypotheses", "scenario");
  if (!hyps.is_array()) throw ValidationError("field 'hypotheses' must be a list");
  std::vector<HypothesisDescriptor> descriptors;
  for (const auto& h : hyps) {
    HypothesisDescriptor d;
    d.id = as<HypothesisId>(require(h, "id", "hypothesis"), "hypotheses.id");
    d.code_length = as<unsigned>(require(h, "code_length", "hypothesis"),
                                 "hypotheses.code_length");
    d.kernel_ref = as<std::string>(require(h, "kernel", "hypothesis"), "hypotheses.kernel");
    descriptors.push_back(std::move(d));
  }
  HypothesisClass cls(std::move(descriptors));

  KernelStore kernels;
  const auto& ks = require(doc, "kernels", "scenario");
  if (!ks.is_object()) throw ValidationError("field 'kernels' must be an object");
  for (const auto& [name, table] : ks.items()) {
    kernels.emplace(name, ConditionalKernel(Table::from_rows(
                              number_table(table, "kernels." + name))));
  }

  const auto& l = require(doc, "loss", "scenario");
  std::optional<LossTable> loss;
  if (l.is_object() && l.contains("zero_one")) {
    loss = LossTable::zero_one(as<std::size_t>(l.at("zero_one"), "loss.zero_one"));
  } else {
    loss = LossTable(Table::from_rows(number_table(l, "loss")));
  }

  const auto& c = require(doc, "contexts", "scenario");
  std::optional<ContextDistribution> pi;
  if (c.is_object() && c.contains("uniform")) {
    pi = ContextDistribution::uniform(as<std::size_t>(c.at("uniform"), "contexts.uniform"));
  } else {
    pi = ContextDistribution(number_list(c, "contexts"));
  }

  PredictionPayload p{std::move(cls), std::move(kernels), std::move(*loss),
                      std::move(*pi)};
  // Dimension agreement across kernels, loss and contexts.
  const auto q = full_mixture(p.hypotheses, p.kernels);
  if (q.contexts() != p.contexts.size()) {
    throw ValidationError("kernels have " + std::to_string(q.contexts()) +
                          " contexts but 'contexts' has " +
                          std::to_string(p.contexts.size()));
  }
  if (q.outcomes() != p.loss.outcomes()) {
    throw ValidationError("kernels have " + std::to_string(q.outcomes()) +
                          " outcomes but the loss table has " +
                          std::to_string(p.loss.outcomes()));
  }
  return p;
}

LogicPayload parse_logic(const json& doc) {
  const auto& fs = require(doc, "formulas", "scenario");
  if (!fs.is_array()) throw ValidationError("field 'formulas' must be a list");
  LogicPayload p;
  for (const auto& f : fs) {
    std::string text;
    std::optional<Verdict> expect;
    if (f.is_string()) {
      text = f.get<std::string>();
    } else {
      text = as<std::string>(require(f, "formula", "formulas entry"), "formula");
      if (f.contains("expect")) {
        const auto e = as<std::string>(f.at("expect"), "expect");
        if (e == "valid") {
          expect = Verdict::kValid;
        } else if (e == "invalid") {
          expect = Verdict::kInvalid;
        } else {
          throw ValidationError("field 'expect' must be 'valid' or 'invalid'");
        }
      }
    }
    p.formulas.push_back(LogicEntry{text, parse_formula(text), expect});
  }
  return p;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Scenario parse_scenario_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("scenario parse error at " + line_column(text, e.byte) +
                     ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("scenario must be a JSON object");

  try {
    const auto name = as<std::string>(require(doc, "name", "scenario"), "name");
    const auto kind_text = as<std::string>(require(doc, "kind", "scenario"), "kind");
    const auto seed = as<std::uint64_t>(require(doc, "seed", "scenario"), "seed");
    const double tolerance =
        doc.contains("tolerance") ? as<double>(doc.at("tolerance"), "tolerance")
                                  : kInequalitySlack;
    if (!(tolerance >= 0.0)) throw ValidationError("tolerance must be >= 0");

    if (kind_text == "trajectory") {
      const auto n_max = as<std::size_t>(require(doc, "n_max", "scenario"), "n_max");
      const double epsilon = as<double>(require(doc, "epsilon", "scenario"), "epsilon");
      if (n_max < 1) throw ValidationError("n_max must be >= 1");
      if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
      return Scenario{name, ScenarioKind::kTrajectory, seed, n_max, epsilon,
                      tolerance, parse_trajectory(doc, n_max)};
    }
    if (kind_text == "prediction") {
      const auto n_max = as<std::size_t>(require(doc, "n_max", "scenario"), "n_max");
      const double epsilon =
          doc.contains("epsilon") ? as<double>(doc.at("epsilon"), "epsilon") : 0.01;
      if (n_max > kMaxCodeLength + 1) {
        throw ValidationError("n_max must be <= " + std::to_string(kMaxCodeLength + 1));
      }
      return Scenario{name, ScenarioKind::kPrediction, seed, n_max, epsilon,
                      tolerance, parse_prediction(doc)};
    }
    if (kind_text == "logic") {
      const std::size_t n_max =
          doc.contains("n_max") ? as<std::size_t>(doc.at("n_max"), "n_max") : 1;
      const double epsilon =
          doc.contains("epsilon") ? as<double>(doc.at("epsilon"), "epsilon") : 0.01;
      return Scenario{name, ScenarioKind::kLogic, seed, n_max, epsilon,
                      tolerance, parse_logic(doc)};
    }
    throw ValidationError("unknown scenario kind '" + kind_text + "'");
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void apply_overrides(Scenario& scenario, const RunOverrides& overrides) {
  if (overrides.seed) scenario.seed = *overrides.seed;
  if (overrides.epsilon) {
    if (!(*overrides.epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
    scenario.epsilon = *overrides.epsilon;
  }
  if (overrides.tolerance) {
    if (!(*overrides.tolerance >= 0.0)) throw ValidationError("tolerance must be >= 0");
    scenario.tolerance = *overrides.tolerance;
  }
  if (overrides.n_max) {
    if (*overrides.n_max < 1) throw ValidationError("n_max must be >= 1");
    if (auto* t = std::get_if<TrajectoryPayload>(&scenario.payload);
        t && std::holds_alternative<ExplicitSets>(t->rule) &&
        std::get<ExplicitSets>(t->rule).sets.size() != *overrides.n_max) {
      throw ValidationError("--n-max conflicts with the explicit solved sets");
    }
    scenario.n_max = *overrides.n_max;
  }
}

}  // namespace gensys
