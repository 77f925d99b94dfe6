#include "epiplan/formula.hpp"

#include <algorithm>

namespace epiplan {

Universe::Universe(std::vector<std::string> agents,
                   std::vector<std::string> atoms)
    : agents_(std::move(agents)), atoms_(std::move(atoms)) {
  if (agents_.empty()) throw InputError("universe needs at least one agent");
  if (atoms_.size() > 64)
    throw InputError("at most 64 atoms are supported");
  for (size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i].empty()) throw InputError("empty agent name");
    if (!agent_ids_.emplace(agents_[i], static_cast<int>(i)).second)
      throw InputError("duplicate agent name: " + agents_[i]);
  }
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].empty()) throw InputError("empty atom name");
    if (!atom_ids_.emplace(atoms_[i], static_cast<int>(i)).second)
      throw InputError("duplicate atom name: " + atoms_[i]);
  }
}

int Universe::agent(const std::string& name) const {
  auto it = agent_ids_.find(name);
  if (it == agent_ids_.end()) throw InputError("unknown agent: " + name);
  return it->second;
}

int Universe::atom(const std::string& name) const {
  auto it = atom_ids_.find(name);
  if (it == atom_ids_.end()) throw InputError("unknown atom: " + name);
  return it->second;
}

int Universe::find_agent(const std::string& name) const {
  auto it = agent_ids_.find(name);
  return it == agent_ids_.end() ? -1 : it->second;
}

int Universe::find_atom(const std::string& name) const {
  auto it = atom_ids_.find(name);
  return it == atom_ids_.end() ? -1 : it->second;
}

bool Universe::same_as(const Universe& other) const {
  return agents_ == other.agents_ && atoms_ == other.atoms_;
}

// ---- constructors --------------------------------------------------------

namespace {
FormulaPtr mk(FKind kind, int idx, std::vector<int> group, FormulaPtr a,
              FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->idx = idx;
  f->group = std::move(group);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}
}  // namespace

FormulaPtr f_true() {
  static FormulaPtr t = mk(FKind::True, -1, {}, nullptr, nullptr);
  return t;
}
FormulaPtr f_false() {
  static FormulaPtr f = mk(FKind::False, -1, {}, nullptr, nullptr);
  return f;
}
FormulaPtr f_atom(int atom) { return mk(FKind::Atom, atom, {}, nullptr, nullptr); }
FormulaPtr f_not(FormulaPtr a) {
  return mk(FKind::Not, -1, {}, std::move(a), nullptr);
}
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return mk(FKind::And, -1, {}, std::move(a), std::move(b));
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return mk(FKind::Or, -1, {}, std::move(a), std::move(b));
}
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return mk(FKind::Implies, -1, {}, std::move(a), std::move(b));
}
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  return mk(FKind::Iff, -1, {}, std::move(a), std::move(b));
}
FormulaPtr f_knows(int agent, FormulaPtr a) {
  return mk(FKind::Knows, agent, {}, std::move(a), nullptr);
}
FormulaPtr f_possible(int agent, FormulaPtr a) {
  return mk(FKind::Possible, agent, {}, std::move(a), nullptr);
}
FormulaPtr f_common(std::vector<int> group, FormulaPtr a) {
  if (group.empty()) throw InputError("common knowledge needs a non-empty group");
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  return mk(FKind::Common, -1, std::move(group), std::move(a), nullptr);
}

FormulaPtr f_and_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return f_true();
  FormulaPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
  return acc;
}

FormulaPtr f_or_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return f_false();
  FormulaPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
  return acc;
}

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->idx != b->idx || a->group != b->group)
    return false;
  return formulas_equal(a->lhs, b->lhs) && formulas_equal(a->rhs, b->rhs);
}

int modal_depth(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Atom:
      return 0;
    case FKind::Not:
      return modal_depth(f->lhs);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      return std::max(modal_depth(f->lhs), modal_depth(f->rhs));
    case FKind::Knows:
    case FKind::Possible:
    case FKind::Common:
      return 1 + modal_depth(f->lhs);
  }
  return 0;
}

// ---- printer -------------------------------------------------------------

namespace {

// Binding strength; higher binds tighter.
int prec(FKind k) {
  switch (k) {
    case FKind::Iff: return 1;
    case FKind::Implies: return 2;
    case FKind::Or: return 3;
    case FKind::And: return 4;
    default: return 5;  // unary and leaves
  }
}

void print_rec(const FormulaPtr& f, const Universe& uni, int parent_prec,
               std::string& out) {
  const int p = prec(f->kind);
  const bool parens = p < parent_prec;
  if (parens) out += '(';
  switch (f->kind) {
    case FKind::True: out += "true"; break;
    case FKind::False: out += "false"; break;
    case FKind::Atom: out += uni.atom_name(f->idx); break;
    case FKind::Not:
      out += '~';
      print_rec(f->lhs, uni, 5, out);
      break;
    case FKind::Knows:
      out += "K[" + uni.agent_name(f->idx) + "] ";
      print_rec(f->lhs, uni, 5, out);
      break;
    case FKind::Possible:
      out += "M[" + uni.agent_name(f->idx) + "] ";
      print_rec(f->lhs, uni, 5, out);
      break;
    case FKind::Common: {
      out += "C[{";
      for (size_t i = 0; i < f->group.size(); ++i) {
        if (i) out += ',';
        out += uni.agent_name(f->group[i]);
      }
      out += "}] ";
      print_rec(f->lhs, uni, 5, out);
      break;
    }
    case FKind::And:
      print_rec(f->lhs, uni, 4, out);
      out += " & ";
      print_rec(f->rhs, uni, 5, out);
      break;
    case FKind::Or:
      print_rec(f->lhs, uni, 3, out);
      out += " | ";
      print_rec(f->rhs, uni, 4, out);
      break;
    case FKind::Implies:
      // right-associative: left operand needs the tighter level
      print_rec(f->lhs, uni, 3, out);
      out += " -> ";
      print_rec(f->rhs, uni, 2, out);
      break;
    case FKind::Iff:
      print_rec(f->lhs, uni, 1, out);
      out += " <-> ";
      print_rec(f->rhs, uni, 2, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_formula(const FormulaPtr& f, const Universe& uni) {
  std::string out;
  print_rec(f, uni, 0, out);
  return out;
}

}  // namespace epiplan
