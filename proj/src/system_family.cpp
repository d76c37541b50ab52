#include "gensys/system_family.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gensys/errors.hpp"

namespace gensys {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<TaskSet> threshold_sets(const DifficultyThreshold& rule,
                                    std::size_t n_max, std::size_t tasks) {
  if (rule.difficulty.size() < tasks) {
    throw ConfigError("difficulty missing for task " +
                      std::to_string(rule.difficulty.size()));
  }
  if (rule.difficulty.size() > tasks) {
    throw ConfigError("difficulty list longer than the task space");
  }
  for (std::size_t t = 0; t < tasks; ++t) {
    if (rule.difficulty[t] < 1) {
      throw ConfigError("difficulty of task " + std::to_string(t) +
                        " must be >= 1");
    }
  }
  std::vector<TaskSet> sets;
  sets.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<TaskId> members;
    for (std::size_t t = 0; t < tasks; ++t) {
      if (rule.difficulty[t] <= n) members.push_back(TaskId{t});
    }
    sets.emplace_back(std::move(members));
  }
  return sets;
}

std::vector<TaskSet> coverage_sets(const RandomCoverage& rule,
                                   std::size_t n_max, std::size_t tasks) {
  if (!(rule.probability >= 0.0 && rule.probability <= 1.0)) {
    throw ConfigError("coverage probability must lie in [0,1]");
  }
  std::mt19937_64 engine(rule.seed);
  std::vector<bool> solved(tasks, false);
  std::vector<TaskSet> sets;
  sets.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t t = 0; t < tasks; ++t) {
      if (solved[t]) continue;
      if (unit_interval(engine()) < rule.probability) solved[t] = true;
    }
    std::vector<TaskId> members;
    for (std::size_t t = 0; t < tasks; ++t) {
      if (solved[t]) members.push_back(TaskId{t});
    }
    sets.emplace_back(std::move(members));
  }
  return sets;
}

}  // namespace

SystemTrajectory::SystemTrajectory(std::vector<TaskSet> solved_sets,
                                   TaskMeasure mu)
    : solved_sets_(std::move(solved_sets)), mu_(std::move(mu)) {
  for (std::size_t k = 0; k < solved_sets_.size(); ++k) {
    for (TaskId t : solved_sets_[k]) {
      if (t.index >= mu_.size()) {
        throw BoundsError("solved set " + std::to_string(k + 1) +
                          " contains task " + std::to_string(t.index) +
                          " outside the task space");
      }
    }
    if (k > 0 && !solved_sets_[k - 1].is_subset_of(solved_sets_[k])) {
      throw CapabilityError("capability preservation violated: A_" +
                                std::to_string(k) + " is not a subset of A_" +
                                std::to_string(k + 1),
                            k + 1);
    }
  }
}

const TaskSet& SystemTrajectory::solved_set(std::size_t n) const {
  if (n < 1 || n > solved_sets_.size()) {
    throw BoundsError("capacity level " + std::to_string(n) +
                      " outside 1.." + std::to_string(solved_sets_.size()));
  }
  return solved_sets_[n - 1];
}

SystemTrajectory build_trajectory(const SolverRule& rule, std::size_t n_max,
                                  const TaskMeasure& mu) {
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  const std::size_t tasks = mu.size();
  std::vector<TaskSet> sets = std::visit(
      Overloaded{
          [&](const DifficultyThreshold& r) {
            return threshold_sets(r, n_max, tasks);
          },
          [&](const RandomCoverage& r) { return coverage_sets(r, n_max, tasks); },
          [&](const ExplicitSets& r) {
            if (r.sets.size() != n_max) {
              throw ConfigError("explicit_sets supplies " +
                                std::to_string(r.sets.size()) +
                                " sets but n_max is " + std::to_string(n_max));
            }
            return r.sets;
          },
      },
      rule);
  return SystemTrajectory(std::move(sets), mu);
}

std::vector<double> utility_sequence(const SystemTrajectory& traj) {
  std::vector<double> u;
  u.reserve(traj.length());
  for (const TaskSet& s : traj.solved_sets()) {
    u.push_back(measure_of(s, traj.measure()));
  }
  return u;
}

std::vector<double> marginal_gains(const SystemTrajectory& traj) {
  if (traj.length() < 2) {
    throw InsufficientLengthError(
        "marginal gains need a trajectory of length >= 2");
  }
  const auto& sets = traj.solved_sets();
  std::vector<double> gains;
  gains.reserve(sets.size() - 1);
  for (std::size_t k = 0; k + 1 < sets.size(); ++k) {
    gains.push_back(measure_of(novelty(sets[k + 1], sets[k]), traj.measure()));
  }
  return gains;
}

double telescoping_residual(const SystemTrajectory& traj) {
  const auto u = utility_sequence(traj);
  const auto gains = marginal_gains(traj);
  double sum = 0.0;
  for (double g : gains) sum += g;
  return std::abs(u.back() - u.front() - sum);
}

LimitDiagnostics limit_diagnostics(const SystemTrajectory& traj,
                                   double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  LimitDiagnostics out;
  out.u_last = measure_of(traj.solved_sets().back(), traj.measure());
  if (traj.length() < 2) return out;

  const auto gains = marginal_gains(traj);
  for (std::size_t k = 0; k < gains.size(); ++k) {
    if (gains[k] < epsilon) {
      out.first_n_with_gain_below_epsilon = k + 1;
      break;
    }
  }
  const std::size_t tail = (gains.size() + 3) / 4;
  out.max_tail_gain =
      *std::max_element(gains.end() - static_cast<std::ptrdiff_t>(tail),
                        gains.end());
  return out;
}

std::size_t count_gains_at_least(std::span<const double> gains,
                                 double epsilon) {
  return static_cast<std::size_t>(
      std::count_if(gains.begin(), gains.end(),
                    [epsilon](double g) { return g >= epsilon; }));
}

std::size_t diminishing_returns_bound(double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  return static_cast<std::size_t>(std::ceil(1.0 / epsilon));
}

}  // namespace gensys
