#ifndef GENSYS_COMPLEXITY_PRIOR_HPP_
#define GENSYS_COMPLEXITY_PRIOR_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gensys {

using HypothesisId = std::uint64_t;

// Declared prefix-free code lengths stand in for description complexity.
// Lengths above kMaxCodeLength are rejected so that every 2^-length, and
// every partial Kraft sum, is exact in a double.
inline constexpr unsigned kMaxCodeLength = 52;
inline constexpr double kKraftTolerance = 1e-12;

struct HypothesisDescriptor {
  HypothesisId id = 0;
  unsigned code_length = 0;
  std::string kernel_ref;
};

// Finite hypothesis class satisfying Kraft's inequality.
class HypothesisClass {
 public:
  // Throws CodingError when sum 2^-length > 1 + kKraftTolerance and
  // ConfigError for an empty class, duplicate ids, or over-long codes.
  explicit HypothesisClass(std::vector<HypothesisDescriptor> hypotheses);

  const std::vector<HypothesisDescriptor>& hypotheses() const {
    return hypotheses_;
  }
  std::size_t size() const { return hypotheses_.size(); }
  double kraft_sum() const { return kraft_sum_; }
  unsigned max_code_length() const { return max_length_; }
  unsigned min_code_length() const { return min_length_; }

  // 2^-length of hypothesis i (position in hypotheses()).
  double raw_weight(std::size_t i) const;
  // Normalized prior weight w_h of hypothesis i.
  double weight(std::size_t i) const { return raw_weight(i) / kraft_sum_; }

 private:
  std::vector<HypothesisDescriptor> hypotheses_;
  double kraft_sum_ = 0.0;
  unsigned max_length_ = 0;
  unsigned min_length_ = 0;
};

// w_h = 2^-length(h) / Z with Z the Kraft sum.
std::map<HypothesisId, double> normalize_prior(const HypothesisClass& cls);

struct TruncatedPrior {
  unsigned level = 0;
  double z_n = 0.0;
  double tau_n = 0.0;
  // Within-level weights w_h / Z_n; empty when Z_n == 0.
  std::map<HypothesisId, double> weights;
};

// H_n = {h : length(h) <= n}. Z_n == 0 is represented, not rejected.
TruncatedPrior truncate(const HypothesisClass& cls, unsigned n);

// [tau_0, ..., tau_{n_max}].
std::vector<double> tail_mass_sequence(const HypothesisClass& cls,
                                       unsigned n_max);

}  // namespace gensys

#endif  // GENSYS_COMPLEXITY_PRIOR_HPP_
