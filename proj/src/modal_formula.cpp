#include "gensys/modal_formula.hpp"

#include <algorithm>
#include <cctype>

#include "gensys/errors.hpp"

namespace gensys {

ModalFormula ModalFormula::atom(unsigned index) {
  return ModalFormula(std::make_shared<const Node>(
      Node{FormulaKind::kAtom, index, nullptr, nullptr}));
}

ModalFormula ModalFormula::negation(ModalFormula inner) {
  return ModalFormula(std::make_shared<const Node>(
      Node{FormulaKind::kNot, 0,
           std::make_shared<const ModalFormula>(std::move(inner)), nullptr}));
}

ModalFormula ModalFormula::box(ModalFormula inner) {
  return ModalFormula(std::make_shared<const Node>(
      Node{FormulaKind::kBox, 0,
           std::make_shared<const ModalFormula>(std::move(inner)), nullptr}));
}

ModalFormula ModalFormula::implies(ModalFormula lhs, ModalFormula rhs) {
  return ModalFormula(std::make_shared<const Node>(
      Node{FormulaKind::kImplies, 0,
           std::make_shared<const ModalFormula>(std::move(lhs)),
           std::make_shared<const ModalFormula>(std::move(rhs))}));
}

ModalFormula ModalFormula::conjunction(ModalFormula lhs, ModalFormula rhs) {
  return ModalFormula(std::make_shared<const Node>(
      Node{FormulaKind::kAnd, 0,
           std::make_shared<const ModalFormula>(std::move(lhs)),
           std::make_shared<const ModalFormula>(std::move(rhs))}));
}

ModalFormula ModalFormula::disjunction(ModalFormula lhs, ModalFormula rhs) {
  return ModalFormula(std::make_shared<const Node>(
      Node{FormulaKind::kOr, 0,
           std::make_shared<const ModalFormula>(std::move(lhs)),
           std::make_shared<const ModalFormula>(std::move(rhs))}));
}

namespace {

int compare(const ModalFormula& a, const ModalFormula& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case FormulaKind::kAtom:
      if (a.atom_index() == b.atom_index()) return 0;
      return a.atom_index() < b.atom_index() ? -1 : 1;
    case FormulaKind::kNot:
    case FormulaKind::kBox:
      return compare(a.lhs(), b.lhs());
    default: {
      const int l = compare(a.lhs(), b.lhs());
      return l != 0 ? l : compare(a.rhs(), b.rhs());
    }
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ModalFormula parse() {
    ModalFormula f = parse_implication();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  ModalFormula parse_implication() {
    ModalFormula lhs = parse_disjunction();
    if (accept("->")) return ModalFormula::implies(lhs, parse_implication());
    return lhs;
  }

  ModalFormula parse_disjunction() {
    ModalFormula f = parse_conjunction();
    while (accept("|")) f = ModalFormula::disjunction(f, parse_conjunction());
    return f;
  }

  ModalFormula parse_conjunction() {
    ModalFormula f = parse_unary();
    while (accept("&")) f = ModalFormula::conjunction(f, parse_unary());
    return f;
  }

  ModalFormula parse_unary() {
    if (accept("~")) return ModalFormula::negation(parse_unary());
    if (accept("[]")) return ModalFormula::box(parse_unary());
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      ++pos_;
      ModalFormula inner = parse_implication();
      if (!accept(")")) {
        skip_space();
        fail(pos_ >= text_.size() ? "unexpected end of input, expected ')'"
                                  : "expected ')'");
      }
      return inner;
    }
    if (text_[pos_] == 'p') {
      const std::size_t start = pos_++;
      std::size_t digits = 0;
      unsigned long value = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + static_cast<unsigned long>(text_[pos_] - '0');
        if (value > 1000000) {
          pos_ = start;
          fail("atom index too large");
        }
        ++pos_;
        ++digits;
      }
      if (digits == 0) fail("expected atom index after 'p'");
      return ModalFormula::atom(static_cast<unsigned>(value));
    }
    fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Binding strength; higher binds tighter.
int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::kImplies:
      return 1;
    case FormulaKind::kOr:
      return 2;
    case FormulaKind::kAnd:
      return 3;
    default:
      return 4;
  }
}

void print(const ModalFormula& f, std::string& out);

void print_operand(const ModalFormula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print(f, out);
  if (parens) out += ')';
}

void print(const ModalFormula& f, std::string& out) {
  const int p = precedence(f.kind());
  switch (f.kind()) {
    case FormulaKind::kAtom:
      out += 'p';
      out += std::to_string(f.atom_index());
      return;
    case FormulaKind::kNot:
    case FormulaKind::kBox:
      out += f.kind() == FormulaKind::kNot ? "~" : "[]";
      print_operand(f.lhs(), precedence(f.lhs().kind()) < p, out);
      return;
    case FormulaKind::kImplies:
      print_operand(f.lhs(), precedence(f.lhs().kind()) <= p, out);
      out += " -> ";
      print_operand(f.rhs(), precedence(f.rhs().kind()) < p, out);
      return;
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
      print_operand(f.lhs(), precedence(f.lhs().kind()) < p, out);
      out += f.kind() == FormulaKind::kAnd ? " & " : " | ";
      print_operand(f.rhs(), precedence(f.rhs().kind()) <= p, out);
      return;
  }
}

void collect(const ModalFormula& f, std::set<ModalFormula>& out) {
  if (!out.insert(f).second) return;
  if (f.kind() == FormulaKind::kAtom) return;
  collect(f.lhs(), out);
  if (f.is_binary()) collect(f.rhs(), out);
}

}  // namespace

bool operator==(const ModalFormula& a, const ModalFormula& b) {
  return a.node_ == b.node_ || compare(a, b) == 0;
}

bool operator<(const ModalFormula& a, const ModalFormula& b) {
  return compare(a, b) < 0;
}

ModalFormula parse_formula(std::string_view text) {
  return Parser(text).parse();
}

std::string to_string(const ModalFormula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::size_t node_count(const ModalFormula& f) {
  if (f.kind() == FormulaKind::kAtom) return 1;
  if (f.is_unary()) return 1 + node_count(f.lhs());
  return 1 + node_count(f.lhs()) + node_count(f.rhs());
}

std::size_t box_depth(const ModalFormula& f) {
  switch (f.kind()) {
    case FormulaKind::kAtom:
      return 0;
    case FormulaKind::kBox:
      return 1 + box_depth(f.lhs());
    case FormulaKind::kNot:
      return box_depth(f.lhs());
    default:
      return std::max(box_depth(f.lhs()), box_depth(f.rhs()));
  }
}

std::set<unsigned> atoms_of(const ModalFormula& f) {
  std::set<unsigned> atoms;
  for (const auto& g : subformulas(f)) {
    if (g.kind() == FormulaKind::kAtom) atoms.insert(g.atom_index());
  }
  return atoms;
}

std::set<ModalFormula> subformulas(const ModalFormula& f) {
  std::set<ModalFormula> out;
  collect(f, out);
  return out;
}

std::size_t box_subformula_count(const ModalFormula& f) {
  const auto subs = subformulas(f);
  return static_cast<std::size_t>(
      std::count_if(subs.begin(), subs.end(), [](const ModalFormula& g) {
        return g.kind() == FormulaKind::kBox;
      }));
}

}  // namespace gensys
