#include "epiplan/event.hpp"

#include <algorithm>

#include "epiplan/eval.hpp"

namespace epiplan {

int EventModel::add_event(std::string name, FormulaPtr precondition) {
  event_names.push_back(std::move(name));
  pre.push_back(std::move(precondition));
  post.emplace_back();
  for (auto& adj : rel) adj.emplace_back();
  return num_events() - 1;
}

EventModel make_event_model(UniversePtr uni) {
  EventModel m;
  m.rel.assign(uni->num_agents(), {});
  m.uni = std::move(uni);
  return m;
}

std::vector<std::string> validate_action(const Action& a) {
  std::vector<std::string> out;
  const auto& m = a.model;
  if (!m.uni) {
    out.push_back("event model has no universe");
    return out;
  }
  const int n = m.num_events();
  if (n == 0) out.push_back("event model has no events");
  if (static_cast<int>(m.pre.size()) != n) out.push_back("pre size mismatch");
  if (static_cast<int>(m.post.size()) != n) out.push_back("post size mismatch");
  if (static_cast<int>(m.rel.size()) != m.uni->num_agents())
    out.push_back("relation family size differs from agent count");
  for (size_t ag = 0; ag < m.rel.size(); ++ag) {
    if (static_cast<int>(m.rel[ag].size()) != n) {
      out.push_back("event relation for agent " + m.uni->agent_name(ag) +
                    " has wrong event count");
      continue;
    }
    for (int u = 0; u < n; ++u)
      for (int v : m.rel[ag][u])
        if (v < 0 || v >= n)
          out.push_back("event relation references missing event index " +
                        std::to_string(v));
  }
  if (a.designated.empty()) out.push_back("empty designated event set");
  for (int e : a.designated)
    if (e < 0 || e >= n)
      out.push_back("designated event index " + std::to_string(e) +
                    " does not exist");
  return out;
}

Action equivalence_closure(const Action& a) {
  Action out = a;
  out.model.rel = equivalence_closure(a.model.rel, a.model.num_events());
  return out;
}

bool applicable(const EpistemicState& s, const Action& a) {
  if (!s.model.uni->same_as(*a.model.uni))
    throw InputError("universe mismatch between state and action");
  for (int w : s.designated) {
    bool ok = false;
    for (int e : a.designated)
      if (eval_world(s.model, w, a.model.pre[e])) { ok = true; break; }
    if (!ok) return false;
  }
  return true;
}

EpistemicState product_update(const EpistemicState& s, const Action& a) {
  if (!applicable(s, a))
    throw InputError("action " + a.name + " is not applicable");
  const EpistemicModel& M = s.model;
  const EventModel& E = a.model;

  EpistemicModel out = make_model(M.uni);
  // surviving pairs (w,e), in (w-major, e-minor) order
  std::vector<std::vector<int>> pair_id(M.num_worlds(),
                                        std::vector<int>(E.num_events(), -1));
  for (int w = 0; w < M.num_worlds(); ++w)
    for (int e = 0; e < E.num_events(); ++e) {
      if (!eval_world(M, w, E.pre[e])) continue;
      // postconditions evaluate against the pre-update state; atoms absent
      // from post keep their value
      std::uint64_t val = M.val[w];
      for (const auto& [atom, phi] : E.post[e]) {
        std::uint64_t bit = std::uint64_t{1} << atom;
        if (eval_world(M, w, phi)) val |= bit;
        else val &= ~bit;
      }
      pair_id[w][e] = out.add_world(
          "(" + M.world_names[w] + "," + E.event_names[e] + ")", val);
    }
  if (out.num_worlds() == 0)
    throw InputError("product update produced an empty model");

  for (size_t ag = 0; ag < M.rel.size(); ++ag)
    for (int w = 0; w < M.num_worlds(); ++w)
      for (int e = 0; e < E.num_events(); ++e) {
        if (pair_id[w][e] < 0) continue;
        for (int v : M.rel[ag][w])
          for (int f : E.rel[ag][e])
            if (pair_id[v][f] >= 0)
              frame_add_edge(out.rel[ag], pair_id[w][e], pair_id[v][f]);
      }

  std::vector<int> des;
  for (int w : s.designated)
    for (int e : a.designated)
      if (pair_id[w][e] >= 0) des.push_back(pair_id[w][e]);
  std::sort(des.begin(), des.end());
  des.erase(std::unique(des.begin(), des.end()), des.end());
  return {std::move(out), std::move(des)};
}

ComposeResult compose_sequence(const EpistemicState& s0,
                               const std::vector<Action>& actions,
                               bool contract_each) {
  ComposeResult res{s0, -1};
  for (size_t i = 0; i < actions.size(); ++i) {
    if (!applicable(res.state, actions[i])) {
      res.fail_index = static_cast<int>(i);
      return res;
    }
    res.state = product_update(res.state, actions[i]);
    if (contract_each) res.state = contract(res.state);
  }
  return res;
}

}  // namespace epiplan
