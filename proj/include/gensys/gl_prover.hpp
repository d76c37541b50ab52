#ifndef GENSYS_GL_PROVER_HPP_
#define GENSYS_GL_PROVER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gensys/kripke.hpp"
#include "gensys/modal_formula.hpp"

namespace gensys {

enum class Verdict { kValid, kInvalid };

const char* to_string(Verdict v);

// One rule application in a sequent derivation. Premises refer to other
// steps by index; the conclusion of the whole proof is step 0.
struct ProofStep {
  std::string rule;
  std::string sequent;
  std::vector<std::size_t> premises;
};

struct DecisionResult {
  Verdict verdict = Verdict::kInvalid;
  std::vector<ProofStep> proof;            // when valid
  std::optional<Countermodel> countermodel;  // when invalid
};

struct GlLimits {
  std::size_t max_nodes = 200;
  std::size_t max_atoms = 8;
};

// Decides validity in provability logic GL (truth at every world of every
// finite transitive irreflexive Kripke model) by backward proof search in
// a cut-free sequent calculus with the Löb rule
//
//     []G, G, []A => A
//   ---------------------  (GLR)
//    S, []G => []A, D
//
// Search terminates because each GLR premise holds strictly more boxed
// formulas on the left. A failed search yields a finite countermodel; it is
// pruned greedily to a small set of worlds before it is returned.
// Throws ResourceError when phi exceeds the limits.
DecisionResult gl_decide(const ModalFormula& phi, const GlLimits& limits = {});

// Renders a proof as indented lines, one per step, depth first.
std::vector<std::string> render_proof(const std::vector<ProofStep>& proof);

}  // namespace gensys

#endif  // GENSYS_GL_PROVER_HPP_
