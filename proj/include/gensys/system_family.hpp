#ifndef GENSYS_SYSTEM_FAMILY_HPP_
#define GENSYS_SYSTEM_FAMILY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "gensys/taskspace.hpp"

namespace gensys {

// Task t is solved at capacity n iff difficulty[t] <= n.
struct DifficultyThreshold {
  std::vector<std::uint64_t> difficulty;
};

// Starting from the empty set, each step adds every still unsolved task
// independently with probability `probability`. Capacity 1 is the first
// such step.
struct RandomCoverage {
  double probability = 0.0;
  std::uint64_t seed = 0;
};

// Caller supplied solved sets, one per capacity level; must be nested.
struct ExplicitSets {
  std::vector<TaskSet> sets;
};

using SolverRule = std::variant<DifficultyThreshold, RandomCoverage, ExplicitSets>;

// Nested chain A_1 ⊆ A_2 ⊆ ... ⊆ A_N over a fixed task measure. Capacity
// levels are 1-based to match S_1, S_2, ...; solved_set(n) takes n >= 1.
class SystemTrajectory {
 public:
  // Throws CapabilityError if the chain is not nested and BoundsError if a
  // set leaves the task space.
  SystemTrajectory(std::vector<TaskSet> solved_sets, TaskMeasure mu);

  std::size_t length() const { return solved_sets_.size(); }
  const TaskSet& solved_set(std::size_t n) const;
  const std::vector<TaskSet>& solved_sets() const { return solved_sets_; }
  const TaskMeasure& measure() const { return mu_; }

 private:
  std::vector<TaskSet> solved_sets_;
  TaskMeasure mu_;
};

SystemTrajectory build_trajectory(const SolverRule& rule, std::size_t n_max,
                                  const TaskMeasure& mu);

// U(n) = mu(A_n) for n = 1..N; element [k] holds U(k+1).
std::vector<double> utility_sequence(const SystemTrajectory& traj);

// Delta(n) = mu(A_{n+1} \ A_n) for n = 1..N-1; element [k] holds Delta(k+1).
// Computed from the novelty set rather than by subtracting utilities.
// Throws InsufficientLengthError when N < 2.
std::vector<double> marginal_gains(const SystemTrajectory& traj);

// |U(N) - U(1) - sum Delta(k)|.
double telescoping_residual(const SystemTrajectory& traj);

struct LimitDiagnostics {
  double u_last = 0.0;
  // 1-based index n of the first Delta(n) < epsilon.
  std::optional<std::size_t> first_n_with_gain_below_epsilon;
  // Maximum Delta over the last ceil((N-1)/4) gains; 0 when N == 1.
  double max_tail_gain = 0.0;
};

LimitDiagnostics limit_diagnostics(const SystemTrajectory& traj,
                                   double epsilon);

// Number of n with Delta(n) >= epsilon. Because the gains sum to at most 1
// this never exceeds ceil(1/epsilon).
std::size_t count_gains_at_least(std::span<const double> gains,
                                 double epsilon);
std::size_t diminishing_returns_bound(double epsilon);

}  // namespace gensys

#endif  // GENSYS_SYSTEM_FAMILY_HPP_
