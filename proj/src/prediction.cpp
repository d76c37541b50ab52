#include "gensys/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gensys/errors.hpp"

namespace gensys {

Table::Table(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Table Table::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Table t(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw ShapeError("row " + std::to_string(r) + " has " +
                       std::to_string(rows[r].size()) + " entries, expected " +
                       std::to_string(cols));
    }
    std::copy(rows[r].begin(), rows[r].end(), t.data_.begin() + r * cols);
  }
  return t;
}

std::vector<std::vector<double>> Table::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto rr = row(r);
    out[r].assign(rr.begin(), rr.end());
  }
  return out;
}

PredictiveDistribution::PredictiveDistribution(Table table)
    : table_(std::move(table)) {
  if (table_.rows() == 0 || table_.cols() == 0) {
    throw ShapeError("predictive table needs at least one context and outcome");
  }
  for (std::size_t c = 0; c < table_.rows(); ++c) {
    double sum = 0.0;
    for (double p : table_.row(c)) {
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw ConfigError("entry in context " + std::to_string(c) +
                          " is not a probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw ConfigError("row for context " + std::to_string(c) +
                        " sums to " + std::to_string(sum));
    }
  }
}

LossTable::LossTable(Table table) : table_(std::move(table)) {
  if (table_.rows() == 0) throw ConfigError("empty action set");
  if (table_.cols() == 0) throw ShapeError("loss table has no outcomes");
  for (std::size_t u = 0; u < table_.rows(); ++u) {
    for (double l : table_.row(u)) {
      if (!std::isfinite(l) || l < 0.0 || l > 1.0) {
        throw ConfigError("loss for action " + std::to_string(u) +
                          " outside [0,1]");
      }
    }
  }
}

LossTable LossTable::zero_one(std::size_t outcomes) {
  Table t(outcomes, outcomes, 1.0);
  for (std::size_t i = 0; i < outcomes; ++i) t.at(i, i) = 0.0;
  return LossTable(std::move(t));
}

LossTable LossTable::constant(std::size_t actions, std::size_t outcomes,
                              double value) {
  return LossTable(Table(actions, outcomes, value));
}

ContextDistribution::ContextDistribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw ConfigError("context distribution is empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ConfigError("context weight is negative or not finite");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kRowSumTolerance) {
    throw ConfigError("context weights sum to " + std::to_string(sum));
  }
}

ContextDistribution ContextDistribution::uniform(std::size_t contexts) {
  if (contexts == 0) throw ConfigError("context distribution is empty");
  return ContextDistribution(std::vector<double>(contexts, 1.0 / contexts));
}

namespace {

enum class Part { kAll, kHead, kTail };

bool in_part(unsigned length, unsigned n, Part part) {
  switch (part) {
    case Part::kAll:
      return true;
    case Part::kHead:
      return length <= n;
    case Part::kTail:
      return length > n;
  }
  return false;
}

const ConditionalKernel& kernel_for(const HypothesisDescriptor& h,
                                    const KernelStore& kernels) {
  auto it = kernels.find(h.kernel_ref);
  if (it == kernels.end()) {
    throw ConfigError("kernel '" + h.kernel_ref + "' of hypothesis " +
                      std::to_string(h.id) + " not found");
  }
  return it->second;
}

// Mixture over the hypotheses in `part`, weights 2^-length / (exact sum of
// 2^-length over the part). Returns nullopt when the part is empty.
std::optional<PredictiveDistribution> mixture(const HypothesisClass& cls,
                                              unsigned n, Part part,
                                              const KernelStore& kernels) {
  double mass = 0.0;
  std::size_t contexts = 0;
  std::size_t outcomes = 0;
  bool first = true;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto& h = cls.hypotheses()[i];
    const auto& k = kernel_for(h, kernels);
    if (first) {
      contexts = k.contexts();
      outcomes = k.outcomes();
      first = false;
    } else if (k.contexts() != contexts || k.outcomes() != outcomes) {
      throw ShapeError("kernel '" + h.kernel_ref + "' is " +
                       std::to_string(k.contexts()) + "x" +
                       std::to_string(k.outcomes()) + ", expected " +
                       std::to_string(contexts) + "x" +
                       std::to_string(outcomes));
    }
    if (in_part(h.code_length, n, part)) mass += cls.raw_weight(i);
  }
  if (!(mass > 0.0)) return std::nullopt;

  Table out(contexts, outcomes);
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto& h = cls.hypotheses()[i];
    if (!in_part(h.code_length, n, part)) continue;
    const double w = cls.raw_weight(i) / mass;
    const auto& k = kernel_for(h, kernels);
    for (std::size_t c = 0; c < contexts; ++c) {
      for (std::size_t y = 0; y < outcomes; ++y) out.at(c, y) += w * k.at(c, y);
    }
  }
  return PredictiveDistribution(std::move(out));
}

void require_same_outcomes(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ShapeError("outcome dimensions differ: " + std::to_string(a) +
                     " vs " + std::to_string(b));
  }
}

}  // namespace

PredictiveDistribution full_mixture(const HypothesisClass& cls,
                                    const KernelStore& kernels) {
  return *mixture(cls, 0, Part::kAll, kernels);
}

PredictiveDistribution truncated_mixture(const HypothesisClass& cls,
                                         unsigned n,
                                         const KernelStore& kernels) {
  auto q = mixture(cls, n, Part::kHead, kernels);
  if (!q) {
    throw EmptyTruncationError("Z_" + std::to_string(n) +
                               " = 0: no hypothesis with code length <= " +
                               std::to_string(n));
  }
  return std::move(*q);
}

PredictiveDistribution tail_mixture(const HypothesisClass& cls, unsigned n,
                                    const KernelStore& kernels) {
  auto r = mixture(cls, n, Part::kTail, kernels);
  if (!r) {
    throw EmptyTailError("tau_" + std::to_string(n) +
                         " = 0: no hypothesis with code length > " +
                         std::to_string(n));
  }
  return std::move(*r);
}

DecompositionResult decomposition_residual(const HypothesisClass& cls,
                                           unsigned n,
                                           const KernelStore& kernels) {
  const TruncatedPrior prior = truncate(cls, n);
  DecompositionResult out;
  if (prior.weights.empty()) {
    out.skip_reason = "Z_n = 0 (empty truncation)";
    return out;
  }
  if (prior.tau_n == 0.0) {
    out.skip_reason = "Z_n = 1 (empty tail)";
    return out;
  }
  const auto q = full_mixture(cls, kernels);
  const auto qn = truncated_mixture(cls, n, kernels);
  const auto rn = tail_mixture(cls, n, kernels);
  double worst = 0.0;
  for (std::size_t c = 0; c < q.contexts(); ++c) {
    for (std::size_t y = 0; y < q.outcomes(); ++y) {
      const double diff = q.at(c, y) - prior.z_n * qn.at(c, y) -
                          prior.tau_n * rn.at(c, y);
      worst = std::max(worst, std::abs(diff));
    }
  }
  out.residual = worst;
  return out;
}

double tv_dual(std::span<const double> a, std::span<const double> b) {
  require_same_outcomes(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t y = 0; y < a.size(); ++y) sum += std::abs(a[y] - b[y]);
  return sum;
}

double tv_half(std::span<const double> a, std::span<const double> b) {
  return 0.5 * tv_dual(a, b);
}

BayesRisk bayes_risk(std::span<const double> rho_row, const LossTable& loss) {
  require_same_outcomes(rho_row.size(), loss.outcomes());
  BayesRisk best;
  for (std::size_t u = 0; u < loss.actions(); ++u) {
    double expected = 0.0;
    for (std::size_t y = 0; y < rho_row.size(); ++y) {
      expected += loss.at(u, y) * rho_row[y];
    }
    if (u == 0 || expected < best.value) {
      best.value = expected;
      best.argmin_action = u;
    }
  }
  return best;
}

double averaged_risk(const PredictiveDistribution& rho, const LossTable& loss,
                     const ContextDistribution& pi) {
  if (rho.contexts() != pi.size()) {
    throw ShapeError("predictive distribution has " +
                     std::to_string(rho.contexts()) +
                     " contexts but the context distribution has " +
                     std::to_string(pi.size()));
  }
  double total = 0.0;
  for (std::size_t c = 0; c < pi.size(); ++c) {
    total += pi.weight(c) * bayes_risk(rho.row(c), loss).value;
  }
  return total;
}

double predictive_utility(const HypothesisClass& cls, unsigned n,
                          const KernelStore& kernels, const LossTable& loss,
                          const ContextDistribution& pi) {
  return -averaged_risk(truncated_mixture(cls, n, kernels), loss, pi);
}

namespace {

BoundCheck make_check(const char* name, unsigned n,
                      std::optional<std::size_t> context, double lhs,
                      double rhs, double tolerance) {
  BoundCheck b;
  b.name = name;
  b.n = n;
  b.context = context;
  b.lhs = lhs;
  b.rhs = rhs;
  b.slack = rhs - lhs;
  b.pass = lhs <= rhs + tolerance;
  return b;
}

}  // namespace

PredictionBoundsReport verify_prediction_bounds(
    const HypothesisClass& cls, const KernelStore& kernels,
    const LossTable& loss, const ContextDistribution& pi, unsigned n_max,
    double slack) {
  PredictionBoundsReport report;
  const auto q = full_mixture(cls, kernels);
  report.full_risk = averaged_risk(q, loss, pi);

  auto add = [&report](BoundCheck b) {
    if (!b.pass) {
      report.all_pass = false;
      ++report.violations;
    }
    report.checks.push_back(std::move(b));
  };

  for (unsigned n = 0; n <= n_max; ++n) {
    const TruncatedPrior prior = truncate(cls, n);
    LevelRecord level;
    level.n = n;
    level.z_n = prior.z_n;
    level.tau_n = prior.tau_n;
    level.defined = !prior.weights.empty();
    if (!level.defined) {
      level.skip_reason = "Z_n = 0 (empty truncation)";
      report.levels.push_back(std::move(level));
      continue;
    }

    const auto qn = truncated_mixture(cls, n, kernels);
    const double risk_n = averaged_risk(qn, loss, pi);
    level.u_pred = -risk_n;
    level.risk_gap = std::abs(report.full_risk - risk_n);

    std::optional<PredictiveDistribution> rn;
    if (prior.tau_n > 0.0) rn = tail_mixture(cls, n, kernels);

    for (std::size_t c = 0; c < q.contexts(); ++c) {
      const double half = tv_half(q.row(c), qn.row(c));
      level.max_tv_half = std::max(level.max_tv_half, half);
      level.max_tv_dual = std::max(level.max_tv_dual, tv_dual(q.row(c), qn.row(c)));
      add(make_check(kCheckUniformPerturbation, n, c, half, prior.tau_n, slack));
      if (rn) {
        const double scaled = prior.tau_n * tv_half(rn->row(c), qn.row(c));
        add(make_check(kCheckTvContraction, n, c, std::abs(half - scaled),
                       kIdentityTolerance, 0.0));
      }
    }
    add(make_check(kCheckRiskPerturbation, n, std::nullopt, level.risk_gap,
                   prior.tau_n, slack));

    const auto decomposition = decomposition_residual(cls, n, kernels);
    level.decomposition_residual = decomposition.residual;
    if (decomposition.residual) {
      add(make_check(kCheckDecomposition, n, std::nullopt,
                     *decomposition.residual, kIdentityTolerance, 0.0));
    }
    report.levels.push_back(std::move(level));
  }

  for (std::size_t k = 0; k + 1 < report.levels.size(); ++k) {
    const auto& a = report.levels[k];
    const auto& b = report.levels[k + 1];
    if (!a.defined || !b.defined) continue;
    const double gap = std::abs(b.u_pred - a.u_pred);
    add(make_check(kCheckMarginalGain, a.n, std::nullopt, gap,
                   a.tau_n + b.tau_n, slack));
    add(make_check(kCheckMarginalGainTwoTau, a.n, std::nullopt, gap,
                   2.0 * a.tau_n, slack));
  }
  return report;
}

}  // namespace gensys
