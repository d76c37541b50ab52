#include "support/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gensys::testkit {

double uniform01(Rng& rng) { return unit_interval(rng()); }

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

std::vector<double> random_distribution(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) {
    // Occasional exact zeros exercise degenerate rows.
    x = uniform01(rng) < 0.15 ? 0.0 : -std::log(1.0 - uniform01(rng));
    total += x;
  }
  if (total == 0.0) {
    v[uniform_index(rng, 0, n - 1)] = 1.0;
    return v;
  }
  for (auto& x : v) x /= total;
  return v;
}

TaskMeasure random_task_measure(Rng& rng, std::size_t tasks) {
  std::vector<double> masses(tasks);
  for (auto& m : masses) m = uniform01(rng) + 1e-3;
  return TaskMeasure::proportional(masses);
}

PredictionProblem random_prediction_problem(std::uint64_t seed,
                                            const PredictionLimits& limits) {
  Rng rng(seed);
  const std::size_t outcomes = uniform_index(rng, 2, limits.max_outcomes);
  const std::size_t contexts = uniform_index(rng, 1, limits.max_contexts);
  const std::size_t count = uniform_index(rng, 1, limits.max_hypotheses);
  const std::size_t actions = uniform_index(rng, 1, limits.max_actions);

  std::vector<unsigned> lengths(count);
  for (auto& l : lengths) {
    l = static_cast<unsigned>(uniform_index(rng, 0, limits.max_code_length));
  }
  // Lengthen the shortest codes until Kraft holds; count <= 2^max_length
  // guarantees termination.
  auto kraft = [&lengths] {
    double s = 0.0;
    for (unsigned l : lengths) s += std::ldexp(1.0, -static_cast<int>(l));
    return s;
  };
  while (kraft() > 1.0) {
    auto it = std::min_element(lengths.begin(), lengths.end());
    ++*it;
  }

  std::vector<HypothesisDescriptor> hyps;
  KernelStore kernels;
  for (std::size_t i = 0; i < count; ++i) {
    const std::string ref = "k" + std::to_string(i);
    hyps.push_back(HypothesisDescriptor{i, lengths[i], ref});
    Table t(contexts, outcomes);
    for (std::size_t c = 0; c < contexts; ++c) {
      const auto row = random_distribution(rng, outcomes);
      for (std::size_t y = 0; y < outcomes; ++y) t.at(c, y) = row[y];
    }
    kernels.emplace(ref, ConditionalKernel(std::move(t)));
  }

  Table loss(actions, outcomes);
  for (std::size_t u = 0; u < actions; ++u) {
    for (std::size_t y = 0; y < outcomes; ++y) loss.at(u, y) = uniform01(rng);
  }
  return PredictionProblem{HypothesisClass(std::move(hyps)), std::move(kernels),
                           LossTable(std::move(loss)),
                           ContextDistribution(random_distribution(rng, contexts)),
                           limits.max_code_length};
}

namespace {

ModalFormula grow(Rng& rng, const FormulaLimits& limits, std::size_t budget,
                  std::size_t depth_left) {
  const auto leaf = [&] {
    return ModalFormula::atom(static_cast<unsigned>(uniform_index(rng, 0, limits.atoms - 1)));
  };
  if (budget <= 1) return leaf();
  const std::size_t choice = uniform_index(rng, 0, 9);
  if (choice == 0) return leaf();
  if (choice <= 2 || budget == 2) {
    if (depth_left > 0 && (choice != 1 || budget == 2)) {
      return ModalFormula::box(grow(rng, limits, budget - 1, depth_left - 1));
    }
    return ModalFormula::negation(grow(rng, limits, budget - 1, depth_left));
  }
  const std::size_t left_budget = uniform_index(rng, 1, budget - 2);
  ModalFormula lhs = grow(rng, limits, left_budget, depth_left);
  ModalFormula rhs = grow(rng, limits, budget - 1 - left_budget, depth_left);
  switch (choice % 3) {
    case 0:
      return ModalFormula::implies(std::move(lhs), std::move(rhs));
    case 1:
      return ModalFormula::conjunction(std::move(lhs), std::move(rhs));
    default:
      return ModalFormula::disjunction(std::move(lhs), std::move(rhs));
  }
}

}  // namespace

ModalFormula random_formula(Rng& rng, const FormulaLimits& limits) {
  const std::size_t budget = uniform_index(rng, 1, limits.max_nodes);
  return grow(rng, limits, budget, limits.max_box_depth);
}

double tv_dual_by_enumeration(const std::vector<double>& a,
                              const std::vector<double>& b) {
  double best = 0.0;
  const std::size_t n = a.size();
  for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
    double s = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      const double f = ((signs >> y) & 1) ? 1.0 : -1.0;
      s += f * (a[y] - b[y]);
    }
    best = std::max(best, std::abs(s));
  }
  return best;
}

}  // namespace gensys::testkit
