#ifndef GENSYS_TASKSPACE_HPP_
#define GENSYS_TASKSPACE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace gensys {

// Opaque identifier of a task in a finite task space.
struct TaskId {
  std::size_t index = 0;

  friend auto operator<=>(const TaskId&, const TaskId&) = default;
};

inline constexpr double kWeightTolerance = 1e-12;

// Finite-support probability measure over tasks 0..size()-1. Construction
// rejects weights that are negative or do not sum to one within
// kWeightTolerance; nothing is renormalized behind the caller's back.
class TaskMeasure {
 public:
  explicit TaskMeasure(std::vector<double> weights);

  static TaskMeasure uniform(std::size_t task_count);
  // Normalizes non-negative masses explicitly. Use this when a scenario
  // declares weights "proportional to" something.
  static TaskMeasure proportional(std::span<const double> masses);
  static TaskMeasure point_mass(std::size_t task_count, TaskId task);

  std::size_t size() const { return weights_.size(); }
  double weight(TaskId task) const;
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// Explicit membership set of tasks, kept sorted and duplicate free.
class TaskSet {
 public:
  TaskSet() = default;
  TaskSet(std::initializer_list<std::size_t> indices);
  explicit TaskSet(std::vector<TaskId> members);

  static TaskSet full(std::size_t task_count);

  bool contains(TaskId task) const;
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  bool is_subset_of(const TaskSet& other) const;
  void insert(TaskId task);

  std::span<const TaskId> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const TaskSet&, const TaskSet&) = default;

 private:
  std::vector<TaskId> members_;
};

TaskSet set_union(const TaskSet& a, const TaskSet& b);

// Sum of mu over the members, accumulated in ascending task order.
// Throws BoundsError when a member lies outside mu's task space.
double measure_of(const TaskSet& set, const TaskMeasure& mu);

// Tasks in next that are not in prev. prev need not be a subset of next.
TaskSet novelty(const TaskSet& next, const TaskSet& prev);

// Deterministic draw from mu by inverse CDF on a seed-derived uniform.
TaskId sample_task(const TaskMeasure& mu, std::uint64_t seed);

// Deterministic seed mixing (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t x);

// Uniform double in [0,1) from the top 53 bits of a 64-bit word.
inline double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace gensys

#endif  // GENSYS_TASKSPACE_HPP_
