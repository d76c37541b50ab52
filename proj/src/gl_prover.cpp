#include "gensys/gl_prover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "gensys/errors.hpp"

namespace gensys {

const char* to_string(Verdict v) {
  return v == Verdict::kValid ? "valid" : "invalid";
}

namespace {

using FormulaRef = int;
using Side = std::vector<FormulaRef>;  // sorted, unique

struct Sequent {
  Side left;
  Side right;
  friend auto operator<=>(const Sequent&, const Sequent&) = default;
};

// Hash-consed formulas so that sequents are small sorted integer vectors.
class Pool {
 public:
  FormulaRef intern(const ModalFormula& f) {
    if (auto it = by_formula_.find(f); it != by_formula_.end()) return it->second;
    FormulaRef a = -1;
    FormulaRef b = -1;
    if (f.kind() != FormulaKind::kAtom) {
      a = intern(f.lhs());
      if (f.is_binary()) b = intern(f.rhs());
    }
    formulas_.push_back(f);
    children_.emplace_back(a, b);
    const FormulaRef id = static_cast<FormulaRef>(formulas_.size() - 1);
    by_formula_.emplace(f, id);
    return id;
  }

  const ModalFormula& formula(FormulaRef r) const { return formulas_[r]; }
  FormulaKind kind(FormulaRef r) const { return formulas_[r].kind(); }
  FormulaRef lhs(FormulaRef r) const { return children_[r].first; }
  FormulaRef rhs(FormulaRef r) const { return children_[r].second; }

 private:
  std::vector<ModalFormula> formulas_;
  std::vector<std::pair<FormulaRef, FormulaRef>> children_;
  std::map<ModalFormula, FormulaRef> by_formula_;
};

Side with(Side s, std::initializer_list<FormulaRef> add) {
  for (FormulaRef r : add) {
    auto it = std::lower_bound(s.begin(), s.end(), r);
    if (it == s.end() || *it != r) s.insert(it, r);
  }
  return s;
}

Side without(Side s, FormulaRef r) {
  s.erase(std::remove(s.begin(), s.end(), r), s.end());
  return s;
}

struct WorldNode {
  std::set<unsigned> atoms;
  std::vector<int> children;
};

struct ProofNode {
  std::string rule;
  Sequent sequent;
  std::vector<int> premises;
};

struct Outcome {
  bool provable = false;
  int node = -1;  // ProofNode when provable, WorldNode otherwise
};

class Prover {
 public:
  explicit Prover(Pool& pool) : pool_(pool) {}

  Outcome prove(const Sequent& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    Outcome out = search(s);
    memo_.emplace(s, out);
    return out;
  }

  const std::vector<ProofNode>& proofs() const { return proofs_; }
  const std::vector<WorldNode>& worlds() const { return worlds_; }

 private:
  Outcome proved(std::string rule, const Sequent& s, std::vector<int> premises) {
    proofs_.push_back(ProofNode{std::move(rule), s, std::move(premises)});
    return Outcome{true, static_cast<int>(proofs_.size() - 1)};
  }

  // All premises must be provable; the first failing one refutes s too.
  Outcome all_of(std::string rule, const Sequent& s,
                 const std::vector<Sequent>& premises) {
    std::vector<int> ids;
    for (const auto& p : premises) {
      Outcome o = prove(p);
      if (!o.provable) return o;
      ids.push_back(o.node);
    }
    return proved(std::move(rule), s, std::move(ids));
  }

  Outcome search(const Sequent& s) {
    for (FormulaRef r : s.left) {
      if (std::binary_search(s.right.begin(), s.right.end(), r)) {
        return proved("axiom", s, {});
      }
    }
    for (FormulaRef r : s.left) {
      const FormulaKind k = pool_.kind(r);
      if (k == FormulaKind::kAtom || k == FormulaKind::kBox) continue;
      const Side rest = without(s.left, r);
      const FormulaRef a = pool_.lhs(r);
      const FormulaRef b = pool_.rhs(r);
      switch (k) {
        case FormulaKind::kNot:
          return all_of("~L", s, {{rest, with(s.right, {a})}});
        case FormulaKind::kAnd:
          return all_of("&L", s, {{with(rest, {a, b}), s.right}});
        case FormulaKind::kOr:
          return all_of("|L", s, {{with(rest, {a}), s.right},
                                  {with(rest, {b}), s.right}});
        case FormulaKind::kImplies:
          return all_of("->L", s, {{rest, with(s.right, {a})},
                                   {with(rest, {b}), s.right}});
        default:
          break;
      }
    }
    for (FormulaRef r : s.right) {
      const FormulaKind k = pool_.kind(r);
      if (k == FormulaKind::kAtom || k == FormulaKind::kBox) continue;
      const Side rest = without(s.right, r);
      const FormulaRef a = pool_.lhs(r);
      const FormulaRef b = pool_.rhs(r);
      switch (k) {
        case FormulaKind::kNot:
          return all_of("~R", s, {{with(s.left, {a}), rest}});
        case FormulaKind::kAnd:
          return all_of("&R", s, {{s.left, with(rest, {a})},
                                  {s.left, with(rest, {b})}});
        case FormulaKind::kOr:
          return all_of("|R", s, {{s.left, with(rest, {a, b})}});
        case FormulaKind::kImplies:
          return all_of("->R", s, {{with(s.left, {a}), with(rest, {b})}});
        default:
          break;
      }
    }

    // Only atoms and boxes remain.
    Side boxed_context;
    for (FormulaRef r : s.left) {
      if (pool_.kind(r) == FormulaKind::kBox) {
        boxed_context = with(boxed_context, {r, pool_.lhs(r)});
      }
    }
    std::vector<int> children;
    for (FormulaRef r : s.right) {
      if (pool_.kind(r) != FormulaKind::kBox) continue;
      const Sequent premise{with(boxed_context, {r}), Side{pool_.lhs(r)}};
      Outcome o = prove(premise);
      if (o.provable) return proved("GLR", s, {o.node});
      children.push_back(o.node);
    }
    WorldNode w;
    for (FormulaRef r : s.left) {
      if (pool_.kind(r) == FormulaKind::kAtom) {
        w.atoms.insert(pool_.formula(r).atom_index());
      }
    }
    w.children = std::move(children);
    worlds_.push_back(std::move(w));
    return Outcome{false, static_cast<int>(worlds_.size() - 1)};
  }

  Pool& pool_;
  std::map<Sequent, Outcome> memo_;
  std::vector<ProofNode> proofs_;
  std::vector<WorldNode> worlds_;
};

std::string render_side(const Pool& pool, const Side& side) {
  std::string out;
  for (std::size_t i = 0; i < side.size(); ++i) {
    if (i) out += ", ";
    out += to_string(pool.formula(side[i]));
  }
  return out;
}

std::string render_sequent(const Pool& pool, const Sequent& s) {
  std::string out = render_side(pool, s.left);
  out += out.empty() ? "=>" : " =>";
  if (!s.right.empty()) out += " " + render_side(pool, s.right);
  return out;
}

std::vector<ProofStep> extract_proof(const Pool& pool, const Prover& prover,
                                     int root) {
  std::vector<ProofStep> steps;
  std::map<int, std::size_t> index;
  std::function<std::size_t(int)> visit = [&](int node) -> std::size_t {
    if (auto it = index.find(node); it != index.end()) return it->second;
    const ProofNode& p = prover.proofs()[node];
    const std::size_t id = steps.size();
    index.emplace(node, id);
    steps.push_back(ProofStep{p.rule, render_sequent(pool, p.sequent), {}});
    std::vector<std::size_t> premises;
    for (int q : p.premises) premises.push_back(visit(q));
    steps[id].premises = std::move(premises);
    return id;
  };
  visit(root);
  return steps;
}

KripkeModel extract_model(const Prover& prover, int root) {
  const auto& nodes = prover.worlds();
  std::map<int, WorldId> id;
  std::vector<int> order;
  std::function<void(int)> discover = [&](int n) {
    if (id.count(n)) return;
    id.emplace(n, order.size());
    order.push_back(n);
    for (int c : nodes[n].children) discover(c);
  };
  discover(root);

  // Transitive closure of the child edges; the search DAG is acyclic.
  std::vector<std::set<WorldId>> below(order.size());
  std::vector<char> done(order.size(), 0);
  std::function<void(WorldId)> close = [&](WorldId w) {
    if (done[w]) return;
    done[w] = 1;
    for (int c : nodes[order[w]].children) {
      const WorldId cw = id.at(c);
      close(cw);
      below[w].insert(cw);
      below[w].insert(below[cw].begin(), below[cw].end());
    }
  };
  for (WorldId w = 0; w < order.size(); ++w) close(w);

  Relation rel;
  std::vector<std::set<unsigned>> val;
  for (WorldId w = 0; w < order.size(); ++w) {
    for (WorldId v : below[w]) rel.emplace_back(w, v);
    val.push_back(nodes[order[w]].atoms);
  }
  return KripkeModel(order.size(), std::move(rel), std::move(val));
}

// Drops worlds one at a time while the root still refutes phi.
KripkeModel prune(const ModalFormula& phi, KripkeModel model) {
  for (WorldId w = model.worlds(); w-- > 1;) {
    std::vector<WorldId> keep;
    for (WorldId v = 0; v < model.worlds(); ++v) {
      if (v != w) keep.push_back(v);
    }
    KripkeModel smaller = model.restrict_to(keep);
    if (!model_check(phi, smaller, 0)) model = std::move(smaller);
  }
  return model;
}

}  // namespace

DecisionResult gl_decide(const ModalFormula& phi, const GlLimits& limits) {
  const std::size_t nodes = node_count(phi);
  if (nodes > limits.max_nodes) {
    throw ResourceError("formula has " + std::to_string(nodes) +
                        " nodes, limit is " + std::to_string(limits.max_nodes));
  }
  const std::size_t atoms = atoms_of(phi).size();
  if (atoms > limits.max_atoms) {
    throw ResourceError("formula has " + std::to_string(atoms) +
                        " atoms, limit is " + std::to_string(limits.max_atoms));
  }

  Pool pool;
  const FormulaRef goal = pool.intern(phi);
  Prover prover(pool);
  const Outcome o = prover.prove(Sequent{{}, {goal}});

  DecisionResult result;
  if (o.provable) {
    result.verdict = Verdict::kValid;
    result.proof = extract_proof(pool, prover, o.node);
  } else {
    result.verdict = Verdict::kInvalid;
    result.countermodel = Countermodel{prune(phi, extract_model(prover, o.node)), 0};
  }
  return result;
}

std::vector<std::string> render_proof(const std::vector<ProofStep>& proof) {
  std::vector<std::string> lines;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i,
                                                           std::size_t depth) {
    const auto& step = proof.at(i);
    lines.push_back(std::string(2 * depth, ' ') + "[" + step.rule + "] " +
                    step.sequent);
    for (std::size_t p : step.premises) walk(p, depth + 1);
  };
  if (!proof.empty()) walk(0, 0);
  return lines;
}

}  // namespace gensys
