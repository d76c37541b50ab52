#ifndef GENSYS_MODAL_FORMULA_HPP_
#define GENSYS_MODAL_FORMULA_HPP_

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gensys {

enum class FormulaKind { kAtom, kNot, kImplies, kAnd, kOr, kBox };

// Immutable propositional modal formula with a primitive box. Nodes are
// shared, so copies are cheap.
class ModalFormula {
 public:
  static ModalFormula atom(unsigned index);
  static ModalFormula negation(ModalFormula inner);
  static ModalFormula implies(ModalFormula lhs, ModalFormula rhs);
  static ModalFormula conjunction(ModalFormula lhs, ModalFormula rhs);
  static ModalFormula disjunction(ModalFormula lhs, ModalFormula rhs);
  static ModalFormula box(ModalFormula inner);

  FormulaKind kind() const { return node_->kind; }
  // Only meaningful for atoms.
  unsigned atom_index() const { return node_->atom; }
  // Unary operators keep their operand in lhs().
  const ModalFormula& lhs() const { return *node_->lhs; }
  const ModalFormula& rhs() const { return *node_->rhs; }
  bool is_unary() const {
    return kind() == FormulaKind::kNot || kind() == FormulaKind::kBox;
  }
  bool is_binary() const {
    return kind() != FormulaKind::kAtom && !is_unary();
  }

  friend bool operator==(const ModalFormula& a, const ModalFormula& b);
  friend bool operator<(const ModalFormula& a, const ModalFormula& b);

 private:
  struct Node {
    FormulaKind kind;
    unsigned atom = 0;
    std::shared_ptr<const ModalFormula> lhs;
    std::shared_ptr<const ModalFormula> rhs;
  };
  explicit ModalFormula(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Grammar: atoms p0, p1, ...; unary ~ and []; binary &, |, -> ;
// parentheses. Precedence ~,[] > & > | > ->. & and | associate to the
// left, -> to the right. Throws SyntaxError with a 0-based offset.
ModalFormula parse_formula(std::string_view text);

// Inverse of parse_formula, using the fewest parentheses that preserve
// structure.
std::string to_string(const ModalFormula& f);

// Number of nodes in the syntax tree.
std::size_t node_count(const ModalFormula& f);
std::size_t box_depth(const ModalFormula& f);
std::set<unsigned> atoms_of(const ModalFormula& f);
// Structurally distinct subformulas, including f itself.
std::set<ModalFormula> subformulas(const ModalFormula& f);
// Distinct subformulas whose main operator is a box.
std::size_t box_subformula_count(const ModalFormula& f);

}  // namespace gensys

#endif  // GENSYS_MODAL_FORMULA_HPP_
