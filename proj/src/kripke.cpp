#include "gensys/kripke.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "gensys/errors.hpp"

namespace gensys {

KripkeModel::KripkeModel(std::size_t worlds, Relation relation,
                         std::vector<std::set<unsigned>> valuation)
    : relation_(std::move(relation)),
      successors_(worlds),
      valuation_(std::move(valuation)) {
  if (worlds == 0) throw ModelError("model needs at least one world");
  if (valuation_.size() != worlds) {
    throw ModelError("valuation covers " + std::to_string(valuation_.size()) +
                     " worlds, model has " + std::to_string(worlds));
  }
  std::sort(relation_.begin(), relation_.end());
  relation_.erase(std::unique(relation_.begin(), relation_.end()),
                  relation_.end());
  for (const auto& [a, b] : relation_) {
    if (a >= worlds || b >= worlds) {
      throw ModelError("relation pair (" + std::to_string(a) + "," +
                       std::to_string(b) + ") leaves the world set");
    }
    if (a == b) {
      throw ModelError("relation is not irreflexive at world " +
                       std::to_string(a));
    }
    successors_[a].push_back(b);
  }
  for (const auto& [a, b] : relation_) {
    for (WorldId c : successors_[b]) {
      if (!related(a, c)) {
        throw ModelError("relation is not transitive: " + std::to_string(a) +
                         "R" + std::to_string(b) + "R" + std::to_string(c));
      }
    }
  }
}

bool KripkeModel::related(WorldId from, WorldId to) const {
  const auto& s = successors_.at(from);
  return std::binary_search(s.begin(), s.end(), to);
}

KripkeModel KripkeModel::restrict_to(const std::vector<WorldId>& keep) const {
  std::vector<WorldId> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::map<WorldId, WorldId> renumber;
  for (std::size_t i = 0; i < sorted.size(); ++i) renumber[sorted[i]] = i;
  Relation rel;
  for (const auto& [a, b] : relation_) {
    auto ia = renumber.find(a);
    auto ib = renumber.find(b);
    if (ia != renumber.end() && ib != renumber.end()) {
      rel.emplace_back(ia->second, ib->second);
    }
  }
  std::vector<std::set<unsigned>> val;
  for (WorldId w : sorted) val.push_back(valuation_.at(w));
  return KripkeModel(sorted.size(), std::move(rel), std::move(val));
}

namespace {

// Formula flattened to distinct subformulas in dependency order.
struct Compiled {
  struct Op {
    FormulaKind kind;
    unsigned atom = 0;
    std::size_t a = 0;
    std::size_t b = 0;
  };
  std::vector<Op> ops;  // root is ops.back()
};

std::size_t compile(const ModalFormula& f, Compiled& out,
                    std::map<ModalFormula, std::size_t>& seen) {
  if (auto it = seen.find(f); it != seen.end()) return it->second;
  Compiled::Op op{f.kind()};
  if (f.kind() == FormulaKind::kAtom) {
    op.atom = f.atom_index();
  } else {
    op.a = compile(f.lhs(), out, seen);
    if (f.is_binary()) op.b = compile(f.rhs(), out, seen);
  }
  out.ops.push_back(op);
  seen.emplace(f, out.ops.size() - 1);
  return out.ops.size() - 1;
}

Compiled compile(const ModalFormula& f) {
  Compiled c;
  std::map<ModalFormula, std::size_t> seen;
  compile(f, c, seen);
  return c;
}

// Bit-parallel evaluation over at most 64 worlds. atom_mask(atom) gives
// the set of worlds where the atom holds.
template <class AtomMask>
std::uint64_t evaluate(const Compiled& c, std::size_t worlds,
                       const std::vector<std::uint64_t>& succ,
                       AtomMask&& atom_mask, std::vector<std::uint64_t>& buf) {
  const std::uint64_t all =
      worlds == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << worlds) - 1;
  buf.resize(c.ops.size());
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const auto& op = c.ops[i];
    switch (op.kind) {
      case FormulaKind::kAtom:
        buf[i] = atom_mask(op.atom);
        break;
      case FormulaKind::kNot:
        buf[i] = ~buf[op.a] & all;
        break;
      case FormulaKind::kAnd:
        buf[i] = buf[op.a] & buf[op.b];
        break;
      case FormulaKind::kOr:
        buf[i] = buf[op.a] | buf[op.b];
        break;
      case FormulaKind::kImplies:
        buf[i] = (~buf[op.a] | buf[op.b]) & all;
        break;
      case FormulaKind::kBox: {
        std::uint64_t m = 0;
        const std::uint64_t falsified = ~buf[op.a] & all;
        for (std::size_t w = 0; w < worlds; ++w) {
          if ((succ[w] & falsified) == 0) m |= std::uint64_t{1} << w;
        }
        buf[i] = m;
        break;
      }
    }
  }
  return buf.back();
}

// General evaluation for models of any size.
std::vector<char> evaluate_general(const Compiled& c, const KripkeModel& m) {
  const std::size_t n = m.worlds();
  std::vector<std::vector<char>> truth(c.ops.size(), std::vector<char>(n, 0));
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const auto& op = c.ops[i];
    for (std::size_t w = 0; w < n; ++w) {
      char v = 0;
      switch (op.kind) {
        case FormulaKind::kAtom:
          v = m.true_atoms(w).count(op.atom) ? 1 : 0;
          break;
        case FormulaKind::kNot:
          v = !truth[op.a][w];
          break;
        case FormulaKind::kAnd:
          v = truth[op.a][w] && truth[op.b][w];
          break;
        case FormulaKind::kOr:
          v = truth[op.a][w] || truth[op.b][w];
          break;
        case FormulaKind::kImplies:
          v = !truth[op.a][w] || truth[op.b][w];
          break;
        case FormulaKind::kBox:
          v = 1;
          for (WorldId s : m.successors(w)) {
            if (!truth[op.a][s]) {
              v = 0;
              break;
            }
          }
          break;
      }
      truth[i][w] = v;
    }
  }
  return truth.back();
}

}  // namespace

bool model_check(const ModalFormula& phi, const KripkeModel& model,
                 WorldId world) {
  if (world >= model.worlds()) {
    throw ModelError("world " + std::to_string(world) + " not in model of " +
                     std::to_string(model.worlds()) + " worlds");
  }
  const Compiled c = compile(phi);
  if (model.worlds() <= 64) {
    std::vector<std::uint64_t> succ(model.worlds(), 0);
    for (const auto& [a, b] : model.relation()) succ[a] |= std::uint64_t{1} << b;
    std::vector<std::uint64_t> buf;
    auto atom_mask = [&model](unsigned atom) {
      std::uint64_t m = 0;
      for (std::size_t w = 0; w < model.worlds(); ++w) {
        if (model.true_atoms(w).count(atom)) m |= std::uint64_t{1} << w;
      }
      return m;
    };
    return (evaluate(c, model.worlds(), succ, atom_mask, buf) >> world) & 1;
  }
  return evaluate_general(c, model)[world] != 0;
}

std::vector<Frame> enumerate_frames(std::size_t world_count) {
  if (world_count < 1) throw ConfigError("world_count must be >= 1");
  if (world_count > kMaxEnumeratedWorlds) {
    throw ResourceError("frame enumeration limited to " +
                        std::to_string(kMaxEnumeratedWorlds) + " worlds");
  }
  // Candidate edges are the ordered pairs (i, j), i != j; a subset is kept
  // when it is transitive and has no 2-cycles (irreflexive after closure).
  std::vector<std::pair<WorldId, WorldId>> pairs;
  for (WorldId i = 0; i < world_count; ++i) {
    for (WorldId j = 0; j < world_count; ++j) {
      if (i != j) pairs.emplace_back(i, j);
    }
  }
  std::vector<Frame> frames;
  const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
  std::vector<std::uint64_t> succ(world_count);
  for (std::uint64_t s = 0; s < subsets; ++s) {
    std::fill(succ.begin(), succ.end(), 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((s >> k) & 1) succ[pairs[k].first] |= std::uint64_t{1} << pairs[k].second;
    }
    bool ok = true;
    for (WorldId a = 0; a < world_count && ok; ++a) {
      for (WorldId b = 0; b < world_count && ok; ++b) {
        if (!((succ[a] >> b) & 1)) continue;
        if ((succ[b] & ~succ[a]) != 0) ok = false;  // transitivity
        if ((succ[b] >> a) & 1) ok = false;         // would force aRa
      }
    }
    if (!ok) continue;
    Frame f;
    f.worlds = world_count;
    for (const auto& p : pairs) {
      if ((succ[p.first] >> p.second) & 1) f.relation.push_back(p);
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

namespace {

void extend_rooted(std::size_t k, std::size_t worlds,
                   std::vector<std::uint64_t>& pred,
                   std::vector<std::uint64_t>& succ,
                   const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
  if (k == worlds) {
    fn(succ);
    return;
  }
  // Predecessor sets of world k among 1..k-1 that are down-closed.
  const std::uint64_t candidates = ((std::uint64_t{1} << k) - 1) & ~std::uint64_t{1};
  for (std::uint64_t s = candidates;; s = (s - 1) & candidates) {
    bool closed = true;
    for (std::size_t j = 1; j < k && closed; ++j) {
      if (((s >> j) & 1) && (pred[j] & ~s & ~std::uint64_t{1}) != 0) closed = false;
    }
    if (closed) {
      pred[k] = s | 1;
      for (std::size_t i = 0; i < k; ++i) {
        if ((pred[k] >> i) & 1) succ[i] |= std::uint64_t{1} << k;
      }
      extend_rooted(k + 1, worlds, pred, succ, fn);
      for (std::size_t i = 0; i < k; ++i) succ[i] &= ~(std::uint64_t{1} << k);
      pred[k] = 0;
    }
    if (s == 0) break;
  }
}

}  // namespace

void for_each_rooted_frame(
    std::size_t worlds,
    const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
  if (worlds < 1 || worlds > 64) throw ResourceError("unsupported world count");
  std::vector<std::uint64_t> pred(worlds, 0);
  std::vector<std::uint64_t> succ(worlds, 0);
  extend_rooted(1, worlds, pred, succ, fn);
}

std::optional<Countermodel> search_countermodel(const ModalFormula& phi,
                                                std::size_t max_worlds) {
  if (max_worlds > kMaxSearchWorlds) {
    throw ResourceError("countermodel search limited to " +
                        std::to_string(kMaxSearchWorlds) + " worlds");
  }
  const Compiled c = compile(phi);
  const auto atom_set = atoms_of(phi);
  const std::vector<unsigned> atoms(atom_set.begin(), atom_set.end());
  std::map<unsigned, std::size_t> atom_slot;
  for (std::size_t i = 0; i < atoms.size(); ++i) atom_slot[atoms[i]] = i;

  std::vector<std::uint64_t> buf;
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const std::size_t bits = atoms.size() * n;
    if (bits > 30) throw ResourceError("too many valuations to enumerate");
    const std::uint64_t world_mask = (std::uint64_t{1} << n) - 1;
    std::optional<Countermodel> found;
    for_each_rooted_frame(n, [&](const std::vector<std::uint64_t>& succ) {
      if (found) return;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
        auto atom_mask = [&](unsigned atom) {
          return (v >> (atom_slot.at(atom) * n)) & world_mask;
        };
        if ((evaluate(c, n, succ, atom_mask, buf) & 1) != 0) continue;
        Relation rel;
        std::vector<std::set<unsigned>> val(n);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if ((succ[i] >> j) & 1) rel.emplace_back(i, j);
          }
          for (unsigned a : atoms) {
            if ((atom_mask(a) >> i) & 1) val[i].insert(a);
          }
        }
        found = Countermodel{KripkeModel(n, std::move(rel), std::move(val)), 0};
        return;
      }
    });
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace gensys
