#include "gensys/complexity_prior.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gensys/errors.hpp"

namespace gensys {

namespace {

// Exact sums of 2^-length over the head (length <= n) and tail.
struct LevelSums {
  double head = 0.0;
  double tail = 0.0;
};

LevelSums level_sums(const HypothesisClass& cls, unsigned n) {
  LevelSums s;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (cls.hypotheses()[i].code_length <= n) {
      s.head += cls.raw_weight(i);
    } else {
      s.tail += cls.raw_weight(i);
    }
  }
  return s;
}

}  // namespace

HypothesisClass::HypothesisClass(std::vector<HypothesisDescriptor> hypotheses)
    : hypotheses_(std::move(hypotheses)) {
  if (hypotheses_.empty()) {
    throw ConfigError("hypothesis class is empty");
  }
  std::set<HypothesisId> seen;
  max_length_ = 0;
  min_length_ = kMaxCodeLength;
  for (const auto& h : hypotheses_) {
    if (!seen.insert(h.id).second) {
      throw ConfigError("duplicate hypothesis id " + std::to_string(h.id));
    }
    if (h.code_length > kMaxCodeLength) {
      throw ConfigError("code length " + std::to_string(h.code_length) +
                        " of hypothesis " + std::to_string(h.id) +
                        " exceeds " + std::to_string(kMaxCodeLength));
    }
    max_length_ = std::max(max_length_, h.code_length);
    min_length_ = std::min(min_length_, h.code_length);
  }
  // Partial sums of 2^-l with l <= 52 stay on the 2^-52 grid, so this
  // accumulation is exact as long as the total stays below 2.
  kraft_sum_ = 0.0;
  for (const auto& h : hypotheses_) {
    kraft_sum_ += std::ldexp(1.0, -static_cast<int>(h.code_length));
  }
  if (kraft_sum_ > 1.0 + kKraftTolerance) {
    throw CodingError("kraft sum exceeds 1: " + std::to_string(kraft_sum_),
                      kraft_sum_);
  }
}

double HypothesisClass::raw_weight(std::size_t i) const {
  return std::ldexp(1.0, -static_cast<int>(hypotheses_.at(i).code_length));
}

std::map<HypothesisId, double> normalize_prior(const HypothesisClass& cls) {
  std::map<HypothesisId, double> w;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    w[cls.hypotheses()[i].id] = cls.weight(i);
  }
  return w;
}

TruncatedPrior truncate(const HypothesisClass& cls, unsigned n) {
  const LevelSums s = level_sums(cls, n);
  TruncatedPrior out;
  out.level = n;
  out.z_n = s.head / cls.kraft_sum();
  out.tau_n = s.tail / cls.kraft_sum();
  if (s.head > 0.0) {
    for (std::size_t i = 0; i < cls.size(); ++i) {
      const auto& h = cls.hypotheses()[i];
      if (h.code_length <= n) out.weights[h.id] = cls.raw_weight(i) / s.head;
    }
  }
  return out;
}

std::vector<double> tail_mass_sequence(const HypothesisClass& cls,
                                       unsigned n_max) {
  std::vector<double> taus;
  taus.reserve(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) {
    taus.push_back(level_sums(cls, n).tail / cls.kraft_sum());
  }
  return taus;
}

}  // namespace gensys
