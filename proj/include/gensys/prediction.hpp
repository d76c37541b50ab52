#ifndef GENSYS_PREDICTION_HPP_
#define GENSYS_PREDICTION_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gensys/complexity_prior.hpp"

namespace gensys {

inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kInequalitySlack = 1e-9;

// Dense row-major matrix of doubles.
class Table {
 public:
  Table() = default;
  Table(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws ShapeError on ragged input.
  static Table from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// contexts x outcomes table whose rows are probability distributions.
// Serves for both hypothesis kernels q_h(y|c) and predictive mixtures.
class PredictiveDistribution {
 public:
  explicit PredictiveDistribution(Table table);

  std::size_t contexts() const { return table_.rows(); }
  std::size_t outcomes() const { return table_.cols(); }
  std::span<const double> row(std::size_t context) const {
    return table_.row(context);
  }
  double at(std::size_t context, std::size_t outcome) const {
    return table_.at(context, outcome);
  }
  const Table& table() const { return table_; }

 private:
  Table table_;
};

using ConditionalKernel = PredictiveDistribution;
using KernelStore = std::map<std::string, ConditionalKernel>;

// actions x outcomes loss values, each in [0,1].
class LossTable {
 public:
  explicit LossTable(Table table);

  std::size_t actions() const { return table_.rows(); }
  std::size_t outcomes() const { return table_.cols(); }
  double at(std::size_t action, std::size_t outcome) const {
    return table_.at(action, outcome);
  }
  const Table& table() const { return table_; }

  static LossTable zero_one(std::size_t outcomes);
  static LossTable constant(std::size_t actions, std::size_t outcomes,
                            double value);

 private:
  Table table_;
};

class ContextDistribution {
 public:
  explicit ContextDistribution(std::vector<double> weights);
  static ContextDistribution uniform(std::size_t contexts);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t c) const { return weights_.at(c); }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// q(y|c) = sum_h w_h q_h(y|c).
PredictiveDistribution full_mixture(const HypothesisClass& cls,
                                    const KernelStore& kernels);
// q_n over H_n; throws EmptyTruncationError when Z_n == 0.
PredictiveDistribution truncated_mixture(const HypothesisClass& cls,
                                         unsigned n,
                                         const KernelStore& kernels);
// r_n over the complement of H_n; throws EmptyTailError when tau_n == 0.
PredictiveDistribution tail_mixture(const HypothesisClass& cls, unsigned n,
                                    const KernelStore& kernels);

struct DecompositionResult {
  // max_{c,y} |q - Z_n q_n - tau_n r_n|; empty when skipped.
  std::optional<double> residual;
  std::string skip_reason;
};

// Skipped when Z_n is 0 or 1, since one side of the split is then empty.
DecompositionResult decomposition_residual(const HypothesisClass& cls,
                                           unsigned n,
                                           const KernelStore& kernels);

// Dual-form total variation with test functions |f| <= 1: sum |a - b|.
double tv_dual(std::span<const double> a, std::span<const double> b);
// Half-l1 total variation: (1/2) sum |a - b|, at most 1.
double tv_half(std::span<const double> a, std::span<const double> b);

struct BayesRisk {
  double value = 0.0;
  std::size_t argmin_action = 0;
};

// min_u sum_y loss(u,y) rho(y) by exhaustive search; ties go to the
// smallest action index.
BayesRisk bayes_risk(std::span<const double> rho_row, const LossTable& loss);

// R(rho) = sum_c pi(c) V(rho, c).
double averaged_risk(const PredictiveDistribution& rho, const LossTable& loss,
                     const ContextDistribution& pi);

// U_pred(n) = -R(q_n).
double predictive_utility(const HypothesisClass& cls, unsigned n,
                          const KernelStore& kernels, const LossTable& loss,
                          const ContextDistribution& pi);

// One checked inequality (or identity) lhs <= rhs.
struct BoundCheck {
  std::string name;
  unsigned n = 0;
  std::optional<std::size_t> context;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool pass = false;
};

struct LevelRecord {
  unsigned n = 0;
  double z_n = 0.0;
  double tau_n = 0.0;
  bool defined = false;  // Z_n > 0
  std::string skip_reason;
  double u_pred = 0.0;
  double risk_gap = 0.0;     // |R(q) - R(q_n)|
  double max_tv_half = 0.0;  // max_c tv_half(q, q_n)
  double max_tv_dual = 0.0;  // max_c tv_dual(q, q_n)
  std::optional<double> decomposition_residual;
};

struct PredictionBoundsReport {
  double full_risk = 0.0;
  std::vector<LevelRecord> levels;
  std::vector<BoundCheck> checks;
  bool all_pass = true;
  std::size_t violations = 0;
};

// Names used in BoundCheck::name.
inline constexpr const char* kCheckDecomposition = "mixture_decomposition";
inline constexpr const char* kCheckTvContraction = "tv_contraction_identity";
inline constexpr const char* kCheckUniformPerturbation = "uniform_perturbation";
inline constexpr const char* kCheckRiskPerturbation = "risk_perturbation";
inline constexpr const char* kCheckMarginalGain = "marginal_gain";
inline constexpr const char* kCheckMarginalGainTwoTau = "marginal_gain_two_tau";

// Checks, for every level n in 0..n_max with Z_n > 0:
//   tv_half(q(.|c), q_n(.|c)) <= tau_n              for every context
//   |R(q) - R(q_n)| <= tau_n
//   |U_pred(n+1) - U_pred(n)| <= tau_n + tau_{n+1}  when n+1 is defined
//   |U_pred(n+1) - U_pred(n)| <= 2 tau_n
// plus the identities q = Z_n q_n + tau_n r_n and
// tv_half(q, q_n) = tau_n tv_half(r_n, q_n) when 0 < Z_n < 1.
// Inequalities get `slack` tolerance; identities kIdentityTolerance.
PredictionBoundsReport verify_prediction_bounds(
    const HypothesisClass& cls, const KernelStore& kernels,
    const LossTable& loss, const ContextDistribution& pi, unsigned n_max,
    double slack = kInequalitySlack);

}  // namespace gensys

#endif  // GENSYS_PREDICTION_HPP_
