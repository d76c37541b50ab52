#include "gensys/taskspace.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <string>

#include "gensys/errors.hpp"

namespace gensys {

TaskMeasure::TaskMeasure(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw ConfigError("task measure needs at least one task");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
      throw ConfigError("task weight " + std::to_string(i) +
                        " is not a probability");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw ConfigError("task weights sum to " + std::to_string(total) +
                      ", expected 1");
  }
}

TaskMeasure TaskMeasure::uniform(std::size_t task_count) {
  if (task_count == 0) {
    throw ConfigError("task measure needs at least one task");
  }
  return TaskMeasure(std::vector<double>(task_count, 1.0 / task_count));
}

TaskMeasure TaskMeasure::proportional(std::span<const double> masses) {
  double total = 0.0;
  for (double m : masses) {
    if (!std::isfinite(m) || m < 0.0) {
      throw ConfigError("proportional task masses must be finite and >= 0");
    }
    total += m;
  }
  if (!(total > 0.0)) {
    throw ConfigError("proportional task masses have zero total");
  }
  std::vector<double> weights;
  weights.reserve(masses.size());
  for (double m : masses) weights.push_back(m / total);
  return TaskMeasure(std::move(weights));
}

TaskMeasure TaskMeasure::point_mass(std::size_t task_count, TaskId task) {
  if (task.index >= task_count) {
    throw BoundsError("point mass outside task space");
  }
  std::vector<double> weights(task_count, 0.0);
  weights[task.index] = 1.0;
  return TaskMeasure(std::move(weights));
}

double TaskMeasure::weight(TaskId task) const {
  if (task.index >= weights_.size()) {
    throw BoundsError("task " + std::to_string(task.index) +
                      " outside task space of size " +
                      std::to_string(weights_.size()));
  }
  return weights_[task.index];
}

TaskSet::TaskSet(std::initializer_list<std::size_t> indices) {
  members_.reserve(indices.size());
  for (std::size_t i : indices) members_.push_back(TaskId{i});
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

TaskSet::TaskSet(std::vector<TaskId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

TaskSet TaskSet::full(std::size_t task_count) {
  std::vector<TaskId> all(task_count);
  for (std::size_t i = 0; i < task_count; ++i) all[i] = TaskId{i};
  return TaskSet(std::move(all));
}

bool TaskSet::contains(TaskId task) const {
  return std::binary_search(members_.begin(), members_.end(), task);
}

bool TaskSet::is_subset_of(const TaskSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

void TaskSet::insert(TaskId task) {
  auto it = std::lower_bound(members_.begin(), members_.end(), task);
  if (it == members_.end() || *it != task) members_.insert(it, task);
}

TaskSet set_union(const TaskSet& a, const TaskSet& b) {
  std::vector<TaskId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return TaskSet(std::move(out));
}

double measure_of(const TaskSet& set, const TaskMeasure& mu) {
  double total = 0.0;
  for (TaskId t : set) total += mu.weight(t);
  return total;
}

TaskSet novelty(const TaskSet& next, const TaskSet& prev) {
  std::vector<TaskId> out;
  std::set_difference(next.begin(), next.end(), prev.begin(), prev.end(),
                      std::back_inserter(out));
  return TaskSet(std::move(out));
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

TaskId sample_task(const TaskMeasure& mu, std::uint64_t seed) {
  const double u = unit_interval(mix_seed(seed));
  const auto w = mu.weights();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0) continue;
    last_positive = i;
    cumulative += w[i];
    if (u < cumulative) return TaskId{i};
  }
  // Rounding can leave cumulative a hair below 1.
  return TaskId{last_positive};
}

}  // namespace gensys
