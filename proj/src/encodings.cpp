#include "epiplan/encodings.hpp"

#include <algorithm>

#include "epiplan/eval.hpp"

namespace epiplan {

// ---- coordinated attack -------------------------------------------------

UniversePtr coord_universe() {
  static UniversePtr uni = std::make_shared<Universe>(
      std::vector<std::string>{"a", "b"},
      std::vector<std::string>{"d", "m_a", "m_b"});
  return uni;
}

namespace {
constexpr std::uint64_t D = 1, MA = 2, MB = 4;
}

EpistemicState coord_s0() {
  EpistemicModel m = make_model(coord_universe());
  m.add_world("w1", D | MA);
  m.add_world("w2", MA);
  frame_add_edge(m.rel[1], 0, 1);  // b cannot tell the worlds apart
  m.rel = equivalence_closure(m.rel, 2);
  return {std::move(m), {0}};
}

Action coord_send_ab() {
  auto uni = coord_universe();
  EventModel e = make_event_model(uni);
  int e1 = e.add_event("e1", parse_formula("d & m_a", *uni));
  int e2 = e.add_event("e2", f_true());
  e.post[e1] = {{1, f_false()}, {2, f_true()}};   // messenger crosses
  e.post[e2] = {{1, f_false()}, {2, f_false()}};  // messenger captured
  frame_add_edge(e.rel[0], e1, e2);  // a cannot tell the outcomes apart
  Action a{"send_ab", std::move(e), {e1}};
  return equivalence_closure(a);
}

Action coord_send_ba() {
  auto uni = coord_universe();
  EventModel e = make_event_model(uni);
  int e1 = e.add_event("e1", parse_formula("d & m_b", *uni));
  int e2 = e.add_event("e2", f_true());
  e.post[e1] = {{1, f_true()}, {2, f_false()}};
  e.post[e2] = {{1, f_false()}, {2, f_false()}};
  frame_add_edge(e.rel[1], e1, e2);
  Action a{"send_ba", std::move(e), {e1}};
  return equivalence_closure(a);
}

PlanningTask coordinated_attack_task(const LogicSpec& logic,
                                     std::optional<int> max_depth) {
  PlanningTask t;
  t.uni = coord_universe();
  t.initial = coord_s0();
  t.actions = {coord_send_ab(), coord_send_ba()};
  t.goal = f_common({0, 1}, f_atom(0));
  t.logic = logic;
  t.options.max_depth = max_depth;
  validate_task(t);
  return t;
}

EpistemicState coord_chain_state(int k) {
  EpistemicState s = coord_s0();
  for (int i = 0; i < k; ++i) {
    Action a = (i % 2 == 0) ? coord_send_ab() : coord_send_ba();
    s = product_update(s, a);
  }
  return s;
}

// ---- mA* / KG action templates ------------------------------------------

namespace {

void require_partition(const std::vector<int>& F, const std::vector<int>& P,
                       int n_agents) {
  std::vector<char> seen(n_agents, 0);
  for (int ag : F) {
    if (ag < 0 || ag >= n_agents || seen[ag])
      throw InputError("F/P must partition the agent set");
    seen[ag] = 1;
  }
  for (int ag : P) {
    if (ag < 0 || ag >= n_agents || seen[ag])
      throw InputError("F/P must partition the agent set");
    seen[ag] = 1;
  }
  for (char c : seen)
    if (!c) throw InputError("F/P must cover all agents");
}

}  // namespace

Action mastar_action(MAStarKind kind, const std::vector<int>& F,
                     const std::vector<int>& P, const MAStarPayload& payload,
                     UniversePtr uni) {
  require_partition(F, P, uni->num_agents());
  EventModel e = make_event_model(uni);
  FormulaPtr pre = payload.pre ? payload.pre : f_true();
  if (kind == MAStarKind::Ontic) {
    if (!P.empty()) throw InputError("ontic mA* actions must be public");
    int ev = e.add_event("e", pre);
    for (auto [atom, phi] : payload.post) e.post[ev][atom] = phi;
    Action a{"ontic", std::move(e), {ev}};
    return equivalence_closure(a);
  }
  // semi-private sensing / announcement: f1 carries the sensed condition,
  // f2 its negation; partially observant agents confuse the two
  int f1 = e.add_event("f1", pre);
  int f2 = e.add_event("f2", f_not(pre));
  if (kind == MAStarKind::Announcement)
    for (auto [atom, phi] : payload.post) e.post[f1][atom] = phi;
  for (int ag : P) frame_add_edge(e.rel[ag], f1, f2);
  Action a{kind == MAStarKind::Sensing ? "sense" : "announce", std::move(e),
           {f1}};
  return equivalence_closure(a);
}

Action kg_action(KGKind kind, const std::vector<int>& observers,
                 const MAStarPayload& payload, UniversePtr uni) {
  for (int ag : observers)
    if (ag < 0 || ag >= uni->num_agents())
      throw InputError("unknown observer agent");
  EventModel e = make_event_model(uni);
  FormulaPtr pre = payload.pre ? payload.pre : f_true();
  if (kind == KGKind::Do || kind == KGKind::Update) {
    int ev = e.add_event("e", pre);
    for (auto [atom, phi] : payload.post) e.post[ev][atom] = phi;
    Action a{kind == KGKind::Do ? "do" : "update", std::move(e), {ev}};
    return equivalence_closure(a);
  }
  int h1 = e.add_event("h1", pre);
  int h2 = e.add_event("h2", f_not(pre));
  for (int ag = 0; ag < uni->num_agents(); ++ag)
    if (std::find(observers.begin(), observers.end(), ag) == observers.end())
      frame_add_edge(e.rel[ag], h1, h2);
  Action a{"sense", std::move(e), {h1}};
  return equivalence_closure(a);
}

// ---- two-counter machines ------------------------------------------------

void validate_machine(const TwoCounterMachine& m) {
  if (m.instructions.empty())
    throw InputError("machine needs at least the halt instruction");
  const int T = m.T();
  for (int t = 0; t < static_cast<int>(m.instructions.size()); ++t) {
    const Instruction& ins = m.instructions[t];
    const bool last = t == T;
    if (last != (ins.op == Instruction::Op::Halt))
      throw InputError("halt must be exactly the last instruction");
    switch (ins.op) {
      case Instruction::Op::Inc:
        if (ins.counter != 0 && ins.counter != 1)
          throw InputError("inc counter must be 0 or 1");
        break;
      case Instruction::Op::Jump:
        if (ins.target < 0 || ins.target > T)
          throw InputError("jump target out of range");
        break;
      case Instruction::Op::Jzdec:
        if (ins.counter != 0 && ins.counter != 1)
          throw InputError("jzdec counter must be 0 or 1");
        if (ins.target < 0 || ins.target > T)
          throw InputError("jzdec target out of range");
        break;
      case Instruction::Op::Halt:
        break;
    }
  }
}

MachineConfig machine_step(const TwoCounterMachine& m, const MachineConfig& c) {
  if (c.k < 0 || c.k > m.T()) throw InputError("configuration out of range");
  const Instruction& ins = m.instructions[c.k];
  switch (ins.op) {
    case Instruction::Op::Halt:
      return c;
    case Instruction::Op::Inc:
      return ins.counter == 0 ? MachineConfig{c.k + 1, c.l + 1, c.m}
                              : MachineConfig{c.k + 1, c.l, c.m + 1};
    case Instruction::Op::Jump:
      return {ins.target, c.l, c.m};
    case Instruction::Op::Jzdec: {
      long long value = ins.counter == 0 ? c.l : c.m;
      if (value == 0) return {ins.target, c.l, c.m};
      return ins.counter == 0 ? MachineConfig{c.k + 1, c.l - 1, c.m}
                              : MachineConfig{c.k + 1, c.l, c.m - 1};
    }
  }
  throw InputError("malformed instruction");
}

// ---- meta-chain machinery ------------------------------------------------

UniversePtr machine_universe() {
  static UniversePtr uni = std::make_shared<Universe>(
      std::vector<std::string>{"0", "1", "2"},
      std::vector<std::string>{"p1", "p2", "p3", "r"});
  return uni;
}

namespace {

constexpr int R_ATOM = 3;

// The agent owning meta-world t (counted from the top): its top-left/top-right
// edge and the link from the previous meta-world's bottom both use it, so the
// closure merges {bottom_{t-1}, top-left_t, top-right_t} into one class.
int chain_agent(int t) { return t % 2; }

// Appends meta-chain worlds/edges for atom p into the model.  Returns the
// indices of the worlds, ordered w1..w_{3n+3} from the top.
std::vector<int> append_chain(EpistemicModel& m, int p_atom, int n,
                              const std::string& prefix) {
  const std::uint64_t P = std::uint64_t{1} << p_atom;
  const std::uint64_t R = std::uint64_t{1} << R_ATOM;
  std::vector<int> ws;
  for (int t = 0; t <= n; ++t) {
    int tl = m.add_world(prefix + "w" + std::to_string(3 * t + 1), P | R);
    int tr = m.add_world(prefix + "w" + std::to_string(3 * t + 2), P);
    int bot = m.add_world(prefix + "w" + std::to_string(3 * t + 3), P);
    ws.insert(ws.end(), {tl, tr, bot});
    frame_add_edge(m.rel[chain_agent(t)], tr, tl);
    frame_add_edge(m.rel[2], tr, bot);  // top-right/bottom, agent 2
    if (t > 0) frame_add_edge(m.rel[chain_agent(t)], ws[3 * t - 1], tr);
  }
  return ws;
}

}  // namespace

EpistemicModel meta_chain(int p_atom, int n, const std::string& prefix) {
  EpistemicModel m = make_model(machine_universe());
  append_chain(m, p_atom, n, prefix);
  m.rel = equivalence_closure(m.rel, m.num_worlds());
  return m;
}

FormulaPtr path_formula(PathKind kind, int p_atom, int i) {
  FormulaPtr p = f_atom(p_atom);
  FormulaPtr r = f_atom(R_ATOM);
  if (i == 0) {
    switch (kind) {
      case PathKind::Lambda:
        return f_and(p, f_and(f_knows(0, f_not(r)), f_knows(1, f_not(r))));
      case PathKind::Mu: {
        FormulaPtr l0 = path_formula(PathKind::Lambda, p_atom, 0);
        return f_and(p, f_and(f_possible(2, l0), f_not(l0)));
      }
      case PathKind::Tau: {
        FormulaPtr m0 = path_formula(PathKind::Mu, p_atom, 0);
        return f_and(p, f_and(r, f_or(f_possible(0, m0), f_possible(1, m0))));
      }
    }
  }
  switch (kind) {
    case PathKind::Lambda: {
      FormulaPtr mu = path_formula(PathKind::Mu, p_atom, i - 1);
      return f_and(
          p, f_and(f_not(r),
                   f_and(f_not(mu),
                         f_or(f_possible(0, mu), f_possible(1, mu)))));
    }
    case PathKind::Mu: {
      FormulaPtr la = path_formula(PathKind::Lambda, p_atom, i);
      return f_and(p, f_and(f_possible(2, la), f_not(la)));
    }
    case PathKind::Tau: {
      FormulaPtr mu = path_formula(PathKind::Mu, p_atom, i);
      return f_and(p, f_and(r, f_or(f_possible(0, mu), f_possible(1, mu))));
    }
  }
  throw InputError("unreachable");
}

namespace {

FormulaPtr with_p(int p_atom, FormulaPtr f) {
  return f_and(f_atom(p_atom), f);
}

// Chain-manipulating sub-models are built inside a host event model so that
// the machine actions can compose several of them around one root event.
// `anchor` is the event the top of the updated chain comes from (the root
// event links to it by agent 0); `designated` are the events that can host
// a designated chain world when the sub-model is used standalone.
struct SubModel {
  int anchor;
  std::vector<int> designated;
};

// Appends one meta-world at the bottom.  `rest` copies everything above the
// bottom meta-world's top-right; per chain parity (whether the mu_0 world
// sees the tau_0 world by agent 0 or by agent 1) a guarded tower re-creates
// the bottom top-right (tr) and builds the re-created bottom (b) and the new
// meta-world (ntr/ntl/nb) from it, all realized through reflexive edges at
// the unique mu_0 world; a postcondition turns the new top-left into an
// r-world.  Keeping tr out of `rest` and joining it by the parity's own
// agent pads the event frame so that both towers stay bounded-commutative:
// the agent-(1-parity) class deep in a tower is separated from the root
// class by two alternations, matching the world side.
SubModel build_inc(EventModel& e, int p_atom, const std::string& px) {
  FormulaPtr la0 = path_formula(PathKind::Lambda, p_atom, 0);
  FormulaPtr mu0 = path_formula(PathKind::Mu, p_atom, 0);
  FormulaPtr tau0 = path_formula(PathKind::Tau, p_atom, 0);
  int rest =
      e.add_event(px + "rest", with_p(p_atom, f_and(f_not(la0), f_not(mu0))));
  SubModel sm{rest, {rest}};
  for (int par : {0, 1}) {
    const int i = 1 - par;  // agent owning the appended meta-world
    FormulaPtr here =
        with_p(p_atom, f_and(mu0, f_possible(par, tau0)));
    std::string sx = std::to_string(par);
    int tr = e.add_event(px + "tr" + sx, here);   // re-created bottom top-right
    int b = e.add_event(px + "b" + sx, here);     // re-created bottom world
    int ntr = e.add_event(px + "ntr" + sx, here); // new top-right
    int ntl = e.add_event(px + "ntl" + sx, here); // new top-left (gains r)
    int nb = e.add_event(px + "nb" + sx, here);   // new bottom
    e.post[ntl] = {{R_ATOM, f_true()}};
    frame_add_edge(e.rel[par], rest, tr);
    frame_add_edge(e.rel[2], tr, b);
    frame_add_edge(e.rel[i], b, ntr);
    frame_add_edge(e.rel[i], ntr, ntl);
    frame_add_edge(e.rel[2], ntr, nb);
    sm.designated.push_back(tr);
  }
  return sm;
}

// Removes the bottom meta-world: a single event copying every world that is
// not part of it.
SubModel build_dec(EventModel& e, int p_atom, const std::string& px) {
  FormulaPtr la0 = path_formula(PathKind::Lambda, p_atom, 0);
  FormulaPtr mu0 = path_formula(PathKind::Mu, p_atom, 0);
  FormulaPtr tau0 = path_formula(PathKind::Tau, p_atom, 0);
  int ev = e.add_event(
      px + "e",
      with_p(p_atom, f_and(f_not(la0), f_and(f_not(mu0), f_not(tau0)))));
  return {ev};
}

// Rebuilds the chain at length m.  Every event pairs with the unique mu_n
// world (the top-right of the top meta-world), so all fresh edges are
// realized by reflexive world edges; postconditions make the top-left
// copies r-worlds.  The old chain pairs with nothing and disappears.
SubModel build_repl(EventModel& e, int p_atom, int n, int m,
                    const std::string& px) {
  FormulaPtr mun = with_p(p_atom, path_formula(PathKind::Mu, p_atom, n));
  int first_tr = -1, prev_bot = -1;
  for (int t = 0; t <= m; ++t) {
    int tl = e.add_event(px + "tl" + std::to_string(t), mun);
    int tr = e.add_event(px + "tr" + std::to_string(t), mun);
    int bot = e.add_event(px + "b" + std::to_string(t), mun);
    e.post[tl] = {{R_ATOM, f_true()}};
    frame_add_edge(e.rel[chain_agent(t)], tr, tl);
    frame_add_edge(e.rel[2], tr, bot);
    if (t == 0) first_tr = tr;
    if (t > 0) frame_add_edge(e.rel[chain_agent(t)], prev_bot, tr);
    prev_bot = bot;
  }
  return {first_tr};
}

// A copy event keeping a chain unchanged.
SubModel build_copy(EventModel& e, int p_atom, const std::string& px) {
  return {e.add_event(px + "copy", f_atom(p_atom))};
}

}  // namespace

Action meta_operation(const MetaOp& op, int p_atom) {
  EventModel e = make_event_model(machine_universe());
  SubModel sm{-1, {}};
  std::string name;
  switch (op.kind) {
    case MetaOp::Kind::Inc:
      sm = build_inc(e, p_atom, "");
      name = "meta_inc";
      break;
    case MetaOp::Kind::Dec:
      sm = build_dec(e, p_atom, "");
      name = "meta_dec";
      break;
    case MetaOp::Kind::Repl:
      if (op.n < 0 || op.m < 0) throw InputError("meta_repl needs n,m >= 0");
      sm = build_repl(e, p_atom, op.n, op.m, "");
      name = "meta_repl";
      break;
  }
  std::vector<int> des = sm.designated.empty() ? std::vector<int>{sm.anchor}
                                               : sm.designated;
  Action a{std::move(name), std::move(e), std::move(des)};
  return equivalence_closure(a);
}

EpistemicState meta_state(int k, int l, int m) {
  EpistemicModel M = make_model(machine_universe());
  int root = M.add_world("root", 0);
  std::vector<int> c1 = append_chain(M, 0, k, "p1_");
  std::vector<int> c2 = append_chain(M, 1, l, "p2_");
  std::vector<int> c3 = append_chain(M, 2, m, "p3_");
  frame_add_edge(M.rel[0], root, c1[1]);  // top-right worlds of each chain
  frame_add_edge(M.rel[0], root, c2[1]);
  frame_add_edge(M.rel[0], root, c3[1]);
  M.rel = equivalence_closure(M.rel, M.num_worlds());
  return {std::move(M), {root}};
}

FormulaPtr meta_phi(int k) {
  return f_possible(0, path_formula(PathKind::Mu, 0, k));
}

Action machine_action(const TwoCounterMachine& m, int k, bool zero) {
  validate_machine(m);
  if (k < 0 || k >= m.T()) throw InputError("no action for this instruction");
  const Instruction& ins = m.instructions[k];
  EventModel e = make_event_model(machine_universe());

  // The root event fires only at the (atom-free) root world of META-S: the
  // figures' precondition phi_k alone would also hold at the chain tops,
  // which share the root's agent-0 class.
  FormulaPtr no_atoms =
      f_and(f_not(f_atom(0)), f_and(f_not(f_atom(1)), f_not(f_atom(2))));
  FormulaPtr pre = f_and(meta_phi(k), no_atoms);
  std::string name = "a" + std::to_string(k);

  // zero-test refinement for jzdec
  if (ins.op == Instruction::Op::Jzdec) {
    FormulaPtr counter_zero =
        f_possible(0, path_formula(PathKind::Mu, ins.counter == 0 ? 1 : 2, 0));
    if (zero) {
      pre = f_and(pre, counter_zero);
      name += "_zero";
    } else {
      pre = f_and(pre, f_not(counter_zero));
      name += "_pos";
    }
  }

  int root_e = e.add_event("act", pre);
  auto link = [&](SubModel sm) { frame_add_edge(e.rel[0], root_e, sm.anchor); };

  // per-chain sub-models; p1 encodes the instruction index, p2/p3 the
  // counters (inc sub-models pick the interlink agent via parity guards)
  switch (ins.op) {
    case Instruction::Op::Inc: {
      link(build_inc(e, 0, "p1_"));
      if (ins.counter == 0) {
        link(build_inc(e, 1, "p2_"));
        link(build_copy(e, 2, "p3_"));
      } else {
        link(build_copy(e, 1, "p2_"));
        link(build_inc(e, 2, "p3_"));
      }
      break;
    }
    case Instruction::Op::Jump: {
      link(build_repl(e, 0, k, ins.target, "p1_"));
      link(build_copy(e, 1, "p2_"));
      link(build_copy(e, 2, "p3_"));
      break;
    }
    case Instruction::Op::Jzdec: {
      int cp = ins.counter == 0 ? 1 : 2;   // atom of the tested counter
      int op = ins.counter == 0 ? 2 : 1;   // atom of the other counter
      if (zero) {
        link(build_repl(e, 0, k, ins.target, "p1_"));
        link(build_copy(e, cp, "c_"));
        link(build_copy(e, op, "o_"));
      } else {
        link(build_inc(e, 0, "p1_"));
        link(build_dec(e, cp, "c_"));
        link(build_copy(e, op, "o_"));
      }
      break;
    }
    case Instruction::Op::Halt:
      throw InputError("halt has no action");
  }
  Action a{std::move(name), std::move(e), {root_e}};
  return equivalence_closure(a);
}

std::vector<Action> machine_actions(const TwoCounterMachine& m) {
  validate_machine(m);
  std::vector<Action> out;
  for (int k = 0; k < m.T(); ++k) {
    switch (m.instructions[k].op) {
      case Instruction::Op::Inc:
      case Instruction::Op::Jump:
        out.push_back(machine_action(m, k));
        break;
      case Instruction::Op::Jzdec:
        out.push_back(machine_action(m, k, true));
        out.push_back(machine_action(m, k, false));
        break;
      case Instruction::Op::Halt:
        break;
    }
  }
  return out;
}

PlanningTask encode_machine(const TwoCounterMachine& m, int max_depth) {
  validate_machine(m);
  PlanningTask t;
  t.uni = machine_universe();
  t.initial = meta_state(0, 0, 0);
  t.actions = machine_actions(m);
  t.goal = meta_phi(m.T());
  t.logic = LogicSpec::Cb(2);
  t.options.max_depth = max_depth;
  validate_task(t);
  return t;
}

}  // namespace epiplan
