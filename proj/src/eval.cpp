#include "epiplan/eval.hpp"

#include <unordered_map>

namespace epiplan {

namespace {

struct Evaluator {
  const EpistemicModel& m;
  // memo over (formula node, world)
  std::unordered_map<const Formula*, std::vector<signed char>> memo;

  explicit Evaluator(const EpistemicModel& model) : m(model) {}

  bool eval(int w, const Formula* f) {
    auto& row = memo[f];
    if (row.empty()) row.assign(m.num_worlds(), -1);
    if (row[w] >= 0) return row[w] != 0;
    bool r = compute(w, f);
    memo[f][w] = r ? 1 : 0;  // recursion may rehash; re-lookup
    return r;
  }

  bool compute(int w, const Formula* f) {
    switch (f->kind) {
      case FKind::True: return true;
      case FKind::False: return false;
      case FKind::Atom: return m.has_atom(w, f->idx);
      case FKind::Not: return !eval(w, f->lhs.get());
      case FKind::And: return eval(w, f->lhs.get()) && eval(w, f->rhs.get());
      case FKind::Or: return eval(w, f->lhs.get()) || eval(w, f->rhs.get());
      case FKind::Implies:
        return !eval(w, f->lhs.get()) || eval(w, f->rhs.get());
      case FKind::Iff:
        return eval(w, f->lhs.get()) == eval(w, f->rhs.get());
      case FKind::Knows: {
        for (int v : m.rel[f->idx][w])
          if (!eval(v, f->lhs.get())) return false;
        return true;
      }
      case FKind::Possible: {
        for (int v : m.rel[f->idx][w])
          if (eval(v, f->lhs.get())) return true;
        return false;
      }
      case FKind::Common: {
        // BFS over the union of the group's relations, start world included
        std::vector<char> seen(m.num_worlds(), 0);
        std::vector<int> queue{w};
        seen[w] = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
          int u = queue[qi];
          if (!eval(u, f->lhs.get())) return false;
          for (int ag : f->group)
            for (int v : m.rel[ag][u])
              if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
              }
        }
        return true;
      }
    }
    return false;
  }
};

}  // namespace

bool eval_world(const EpistemicModel& m, int w, const FormulaPtr& f) {
  if (w < 0 || w >= m.num_worlds())
    throw InputError("eval_world: unknown world index");
  Evaluator ev(m);
  return ev.eval(w, f.get());
}

bool eval_state(const EpistemicState& s, const FormulaPtr& f) {
  if (s.designated.empty()) throw InputError("eval_state: no designated worlds");
  Evaluator ev(s.model);
  for (int w : s.designated)
    if (!ev.eval(w, f.get())) return false;
  return true;
}

}  // namespace epiplan
