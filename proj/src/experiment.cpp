#include "gensys/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gensys/errors.hpp"
#include "gensys/kripke.hpp"

namespace gensys {

namespace {

// The refutation search oracle stays cheap below this many worlds.
constexpr std::size_t kOracleWorldLimit = 5;
constexpr std::size_t kOracleAtomLimit = 2;

CheckRecord check(std::string name, double lhs, double rhs, double tolerance,
                  std::string detail = {}) {
  return CheckRecord{std::move(name), lhs, rhs, rhs - lhs,
                     lhs <= rhs + tolerance, std::move(detail)};
}

BoundRecord bound(std::string name, std::optional<std::size_t> context,
                  double lhs, double rhs, double tolerance) {
  return BoundRecord{std::move(name), context, lhs, rhs, rhs - lhs,
                     lhs <= rhs + tolerance};
}

void run_trajectory(const Scenario& s, const TrajectoryPayload& p, Report& r) {
  SolverRule rule = p.rule;
  if (auto* cov = std::get_if<RandomCoverage>(&rule)) cov->seed = s.seed;
  const auto traj = build_trajectory(rule, s.n_max, p.mu);
  const auto u = utility_sequence(traj);
  std::vector<double> gains;
  if (traj.length() >= 2) gains = marginal_gains(traj);

  for (std::size_t k = 0; k < u.size(); ++k) {
    StepRecord step;
    step.n = k + 1;
    step.utility = u[k];
    if (k < gains.size()) {
      step.delta = gains[k];
      step.bounds.push_back(bound("gain_novelty_identity", std::nullopt,
                                  std::abs((u[k + 1] - u[k]) - gains[k]),
                                  kIdentityTolerance, 0.0));
    }
    step.extras["solved_tasks"] = static_cast<double>(traj.solved_set(k + 1).size());
    r.steps.push_back(std::move(step));
  }

  std::size_t nest_violations = 0;
  for (std::size_t n = 1; n < traj.length(); ++n) {
    if (!traj.solved_set(n).is_subset_of(traj.solved_set(n + 1))) ++nest_violations;
  }
  r.checks.push_back(check("nested_chain", static_cast<double>(nest_violations), 0.0,
                           0.0, "A_n subset of A_{n+1} for every n"));

  double worst_decrease = 0.0;
  double worst_range = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    worst_range = std::max({worst_range, -u[k], u[k] - 1.0});
    if (k + 1 < u.size()) worst_decrease = std::max(worst_decrease, u[k] - u[k + 1]);
  }
  r.checks.push_back(check("utility_monotone", worst_decrease, 0.0, kIdentityTolerance,
                           "max_n U(n) - U(n+1)"));
  r.checks.push_back(check("utility_in_unit_interval", worst_range, 0.0,
                           kIdentityTolerance, "distance of U(n) outside [0,1]"));

  if (traj.length() >= 2) {
    const double residual = telescoping_residual(traj);
    r.metrics["telescoping_residual"] = residual;
    r.checks.push_back(check("telescoping", residual, kIdentityTolerance, 0.0,
                             "|U(N) - U(1) - sum Delta|"));

    std::set<double> epsilons{0.5, 0.1, 0.01, s.epsilon};
    for (double eps : epsilons) {
      const auto count = count_gains_at_least(gains, eps);
      r.checks.push_back(check("diminishing_returns_count",
                               static_cast<double>(count),
                               static_cast<double>(diminishing_returns_bound(eps)),
                               0.0, "epsilon=" + format_double(eps)));
    }
  }

  const auto diag = limit_diagnostics(traj, s.epsilon);
  r.metrics["u_last"] = diag.u_last;
  r.metrics["max_tail_gain"] = diag.max_tail_gain;
  if (diag.first_n_with_gain_below_epsilon) {
    r.metrics["first_n_with_gain_below_epsilon"] =
        static_cast<double>(*diag.first_n_with_gain_below_epsilon);
  }

  if (p.expect_geometric) {
    const double ratio = p.expect_geometric->ratio;
    const auto levels = p.expect_geometric->levels;
    // sum_{d=1}^{L} r^d = r (1 - r^L) / (1 - r)
    const double z = ratio * (1.0 - std::pow(ratio, static_cast<double>(levels))) /
                     (1.0 - ratio);
    double worst = 0.0;
    for (std::size_t k = 0; k < gains.size(); ++k) {
      const double n = static_cast<double>(k + 1);
      worst = std::max(worst, std::abs(gains[k] - std::pow(ratio, n + 1.0) / z));
    }
    r.checks.push_back(check("geometric_closed_form", worst, kIdentityTolerance, 0.0,
                             "max_n |Delta(n) - r^(n+1)/Z|"));
  }
}

void run_prediction(const Scenario& s, const PredictionPayload& p, Report& r) {
  const auto bounds =
      verify_prediction_bounds(p.hypotheses, p.kernels, p.loss, p.contexts,
                               static_cast<unsigned>(s.n_max), s.tolerance);
  r.metrics["full_risk"] = bounds.full_risk;
  r.metrics["kraft_sum"] = p.hypotheses.kraft_sum();
  r.metrics["violations"] = static_cast<double>(bounds.violations);

  for (std::size_t k = 0; k < bounds.levels.size(); ++k) {
    const auto& level = bounds.levels[k];
    StepRecord step;
    step.n = level.n;
    step.tau = level.tau_n;
    step.extras["z_n"] = level.z_n;
    if (level.defined) {
      step.utility = level.u_pred;
      step.extras["risk_gap"] = level.risk_gap;
      step.extras["max_tv_half"] = level.max_tv_half;
      step.extras["max_tv_dual"] = level.max_tv_dual;
      if (level.decomposition_residual) {
        step.extras["decomposition_residual"] = *level.decomposition_residual;
      }
      if (k + 1 < bounds.levels.size() && bounds.levels[k + 1].defined) {
        step.delta = bounds.levels[k + 1].u_pred - level.u_pred;
      }
    }
    for (const auto& b : bounds.checks) {
      if (b.n != level.n) continue;
      step.bounds.push_back(BoundRecord{b.name, b.context, b.lhs, b.rhs, b.slack, b.pass});
    }
    r.steps.push_back(std::move(step));
  }

  // Worst instance of each bound family.
  std::map<std::string, const BoundCheck*> worst;
  std::map<std::string, std::size_t> count;
  std::map<std::string, bool> all_pass;
  for (const auto& b : bounds.checks) {
    auto [it, inserted] = worst.emplace(b.name, &b);
    if (!inserted && b.slack < it->second->slack) it->second = &b;
    ++count[b.name];
    auto [ap, fresh] = all_pass.emplace(b.name, b.pass);
    if (!fresh) ap->second = ap->second && b.pass;
  }
  for (const auto& [name, b] : worst) {
    r.checks.push_back(CheckRecord{name, b->lhs, b->rhs, b->slack, all_pass[name],
                                   std::to_string(count[name]) + " instances, tightest at n=" +
                                       std::to_string(b->n)});
  }

  const auto taus = tail_mass_sequence(p.hypotheses, static_cast<unsigned>(s.n_max));
  double worst_increase = 0.0;
  for (std::size_t k = 0; k + 1 < taus.size(); ++k) {
    worst_increase = std::max(worst_increase, taus[k + 1] - taus[k]);
  }
  r.checks.push_back(check("tail_mass_monotone", worst_increase, 0.0, 0.0,
                           "max_n tau_{n+1} - tau_n"));
}

void run_logic(const Scenario&, const LogicPayload& p, Report& r) {
  for (const auto& entry : p.formulas) {
    const auto decision = gl_decide(entry.formula);
    VerdictRecord v;
    v.formula = to_string(entry.formula);
    v.verdict = to_string(decision.verdict);
    if (entry.expect) {
      v.expected = to_string(*entry.expect);
      r.checks.push_back(CheckRecord{"expected_verdict", 0.0, 0.0, 0.0,
                                     *entry.expect == decision.verdict,
                                     v.formula + " expected " + *v.expected});
    }
    if (decision.verdict == Verdict::kValid) {
      v.proof = render_proof(decision.proof);
    } else {
      const auto& cm = *decision.countermodel;
      v.countermodel = to_record(cm);
      const bool refutes = !model_check(entry.formula, cm.model, cm.world);
      r.checks.push_back(CheckRecord{"countermodel_recheck", 0.0, 0.0, 0.0, refutes,
                                     v.formula});
    }

    // Cross-check against brute-force refutation search where it is cheap.
    const std::size_t bound_worlds = box_subformula_count(entry.formula) + 1;
    if (bound_worlds <= kOracleWorldLimit &&
        atoms_of(entry.formula).size() <= kOracleAtomLimit) {
      const auto found = search_countermodel(entry.formula, bound_worlds);
      const bool agree = found.has_value() == (decision.verdict == Verdict::kInvalid);
      r.checks.push_back(CheckRecord{"frame_enumeration_agreement", 0.0, 0.0, 0.0,
                                     agree,
                                     v.formula + " searched up to " +
                                         std::to_string(bound_worlds) + " worlds"});
    }
    r.verdicts.push_back(std::move(v));
  }
}

}  // namespace

CountermodelRecord to_record(const Countermodel& cm) {
  CountermodelRecord m;
  m.worlds = cm.model.worlds();
  m.relation.assign(cm.model.relation().begin(), cm.model.relation().end());
  for (std::size_t w = 0; w < cm.model.worlds(); ++w) {
    const auto& atoms = cm.model.true_atoms(w);
    m.valuation.emplace_back(atoms.begin(), atoms.end());
  }
  m.world = cm.world;
  return m;
}

Report run_experiment(const Scenario& scenario) {
  Report r;
  r.scenario = scenario.name;
  r.kind = to_string(scenario.kind);
  r.seed = scenario.seed;
  r.n_max = scenario.n_max;
  r.epsilon = scenario.epsilon;
  r.tolerance = scenario.tolerance;
  try {
    std::visit(
        [&](const auto& payload) {
          using T = std::decay_t<decltype(payload)>;
          if constexpr (std::is_same_v<T, TrajectoryPayload>) {
            run_trajectory(scenario, payload, r);
          } else if constexpr (std::is_same_v<T, PredictionPayload>) {
            run_prediction(scenario, payload, r);
          } else {
            run_logic(scenario, payload, r);
          }
        },
        scenario.payload);
  } catch (const Error& e) {
    throw Error("scenario '" + scenario.name + "': " + e.what());
  }

  r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const CheckRecord& c) { return c.pass; });
  for (const auto& step : r.steps) {
    for (const auto& b : step.bounds) r.passed = r.passed && b.pass;
  }
  return r;
}

std::vector<BatchEntry> run_batch(const std::filesystem::path& dir,
                                  const RunOverrides& overrides) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError(dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<BatchEntry> out;
  for (const auto& f : files) {
    BatchEntry entry;
    entry.path = f;
    try {
      Scenario s = parse_scenario(f);
      apply_overrides(s, overrides);
      entry.report = run_experiment(s);
      entry.passed = entry.report.passed;
    } catch (const Error& e) {
      entry.error = e.what();
      entry.passed = false;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace gensys
