#pragma once

#include <memory>
#include <string>
#include <vector>

#include "epiplan/universe.hpp"

namespace epiplan {

enum class FKind {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Knows,     // K[i]
  Possible,  // M[i]
  Common,    // C[{...}]
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula node.  Atoms and agents are indices into a Universe.
struct Formula {
  FKind kind;
  int idx = -1;            // atom index (Atom) or agent index (Knows/Possible)
  std::vector<int> group;  // sorted agent indices (Common)
  FormulaPtr lhs, rhs;
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(int atom);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_knows(int agent, FormulaPtr a);
FormulaPtr f_possible(int agent, FormulaPtr a);
FormulaPtr f_common(std::vector<int> group, FormulaPtr a);

// Conjunction / disjunction of a list; empty list gives true / false.
FormulaPtr f_and_all(const std::vector<FormulaPtr>& fs);
FormulaPtr f_or_all(const std::vector<FormulaPtr>& fs);

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b);

int modal_depth(const FormulaPtr& f);

// Minimal-parenthesis printer for the grammar in parser.cpp.
std::string print_formula(const FormulaPtr& f, const Universe& uni);

// Recursive-descent parser for the concrete grammar:
//   phi  ::= iff
//   iff  ::= imp ("<->" imp)*              (left-assoc)
//   imp  ::= or ("->" imp)?                (right-assoc)
//   or   ::= and ("|" and)*
//   and  ::= unary ("&" unary)*
//   unary::= "~" unary | "K[" ident "]" unary | "M[" ident "]" unary
//          | "C[{" ident ("," ident)* "}]" unary
//          | "true" | "false" | ident | "(" phi ")"
FormulaPtr parse_formula(const std::string& text, const Universe& uni);

}  // namespace epiplan
