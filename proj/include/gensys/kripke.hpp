#ifndef GENSYS_KRIPKE_HPP_
#define GENSYS_KRIPKE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gensys/modal_formula.hpp"

namespace gensys {

using WorldId = std::size_t;
using Relation = std::vector<std::pair<WorldId, WorldId>>;

// Finite Kripke model over a transitive irreflexive frame, the frame class
// of provability logic. Worlds are 0..worlds()-1.
class KripkeModel {
 public:
  // Throws ModelError for out-of-range worlds or a relation that is not
  // transitive and irreflexive.
  KripkeModel(std::size_t worlds, Relation relation,
              std::vector<std::set<unsigned>> valuation);

  std::size_t worlds() const { return successors_.size(); }
  // Sorted, duplicate free.
  const Relation& relation() const { return relation_; }
  const std::vector<WorldId>& successors(WorldId w) const {
    return successors_.at(w);
  }
  bool related(WorldId from, WorldId to) const;
  const std::set<unsigned>& true_atoms(WorldId w) const {
    return valuation_.at(w);
  }

  // Submodel on `keep` (renumbered in ascending order).
  KripkeModel restrict_to(const std::vector<WorldId>& keep) const;

 private:
  Relation relation_;
  std::vector<std::vector<WorldId>> successors_;
  std::vector<std::set<unsigned>> valuation_;
};

// Truth of phi at `world`; box quantifies over R-successors.
bool model_check(const ModalFormula& phi, const KripkeModel& model,
                 WorldId world);

struct Frame {
  std::size_t worlds = 0;
  Relation relation;  // sorted
};

inline constexpr std::size_t kMaxEnumeratedWorlds = 5;

// Every strict partial order on {0..world_count-1}, each exactly once.
// world_count must lie in 1..kMaxEnumeratedWorlds (ResourceError above).
std::vector<Frame> enumerate_frames(std::size_t world_count);

struct Countermodel {
  KripkeModel model;
  WorldId world = 0;
};

inline constexpr std::size_t kMaxSearchWorlds = 8;

// Brute-force refutation search: every rooted strict partial order with at
// most max_worlds worlds (root 0, successors carry larger labels, which
// covers every finite frame up to isomorphism), every valuation of phi's
// atoms, truth evaluated at the root. Independent of the sequent prover.
std::optional<Countermodel> search_countermodel(const ModalFormula& phi,
                                                std::size_t max_worlds);

// Calls fn(worlds, successor masks) for every rooted naturally labelled
// frame with exactly `worlds` worlds; bit j of mask[i] is set iff i R j.
void for_each_rooted_frame(
    std::size_t worlds,
    const std::function<void(const std::vector<std::uint64_t>&)>& fn);

}  // namespace gensys

#endif  // GENSYS_KRIPKE_HPP_
