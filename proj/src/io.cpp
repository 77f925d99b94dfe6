#include "epiplan/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace epiplan {

namespace {

const json& require(const json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end())
    throw InputError(std::string(ctx) + ": missing \"" + key + "\"");
  return *it;
}

std::vector<std::string> string_list(const json& j, const char* ctx) {
  if (!j.is_array()) throw InputError(std::string(ctx) + ": expected an array");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string())
      throw InputError(std::string(ctx) + ": expected strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

int agent_index(const Universe& uni, const std::string& name) {
  int idx = uni.find_agent(name);
  if (idx < 0) throw InputError("unknown agent \"" + name + "\"");
  return idx;
}

bool closure_requested(const json& j, const char* ctx) {
  auto it = j.find("closure");
  if (it == j.end()) return false;
  std::string mode = it->get<std::string>();
  if (mode == "equivalence") return true;
  if (mode == "none") return false;
  throw InputError(std::string(ctx) +
                   ": \"closure\" must be \"equivalence\" or \"none\"");
}

}  // namespace

LogicSpec logic_from_json(const json& j) {
  if (!j.is_object()) throw InputError("logic: expected an object");
  std::string name = require(j, "logic", "logic").get<std::string>();
  if (name == "S5") return LogicSpec::S5();
  if (name == "C-S5") return LogicSpec::C();
  if (name == "Cb-S5") {
    int b = require(j, "b", "logic Cb-S5").get<int>();
    if (b < 1) throw InputError("logic Cb-S5: b must be >= 1");
    return LogicSpec::Cb(b);
  }
  if (name == "wCl-S5") {
    int l = require(j, "l", "logic wCl-S5").get<int>();
    if (l < 2) throw InputError("logic wCl-S5: l must be >= 2");
    return LogicSpec::WCl(l);
  }
  throw InputError("logic: unknown name \"" + name + "\"");
}

json logic_to_json(const LogicSpec& spec) {
  json j;
  switch (spec.ext) {
    case LogicSpec::Ext::None:
      j["logic"] = "S5";
      break;
    case LogicSpec::Ext::C:
      j["logic"] = "C-S5";
      break;
    case LogicSpec::Ext::Cb:
      j["logic"] = "Cb-S5";
      j["b"] = spec.param;
      break;
    case LogicSpec::Ext::WCl:
      j["logic"] = "wCl-S5";
      j["l"] = spec.param;
      break;
  }
  return j;
}

EpistemicState state_from_json(const json& j, UniversePtr uni) {
  if (!j.is_object()) throw InputError("state: expected an object");
  EpistemicModel m = make_model(uni);
  std::map<std::string, int> by_name;
  for (const auto& w : require(j, "worlds", "state")) {
    std::string name = require(w, "name", "world").get<std::string>();
    if (by_name.count(name))
      throw InputError("state: duplicate world \"" + name + "\"");
    std::uint64_t val = 0;
    for (const auto& a : string_list(require(w, "atoms", "world"), "atoms")) {
      int idx = uni->find_atom(a);
      if (idx < 0) throw InputError("unknown atom \"" + a + "\"");
      val |= std::uint64_t{1} << idx;
    }
    by_name[name] = m.add_world(name, val);
  }
  auto world = [&](const std::string& name) {
    auto it = by_name.find(name);
    if (it == by_name.end())
      throw InputError("state: unknown world \"" + name + "\"");
    return it->second;
  };
  if (auto it = j.find("relations"); it != j.end()) {
    for (const auto& [agent, pairs] : it->items()) {
      int ag = agent_index(*uni, agent);
      for (const auto& pr : pairs) {
        if (!pr.is_array() || pr.size() != 2)
          throw InputError("state: relation entries must be [w, v] pairs");
        frame_add_edge(m.rel[ag], world(pr[0].get<std::string>()),
                       world(pr[1].get<std::string>()));
      }
    }
  }
  std::vector<int> des;
  for (const auto& d : string_list(require(j, "designated", "state"),
                                   "designated"))
    des.push_back(world(d));
  std::sort(des.begin(), des.end());
  des.erase(std::unique(des.begin(), des.end()), des.end());
  EpistemicState s{std::move(m), std::move(des)};
  if (closure_requested(j, "state")) s = equivalence_closure(s);
  auto errs = validate_state(s);
  if (!errs.empty()) throw InputError("state: " + errs.front());
  return s;
}

json state_to_json(const EpistemicState& s) {
  const EpistemicModel& m = s.model;
  json j;
  j["worlds"] = json::array();
  for (int w = 0; w < m.num_worlds(); ++w) {
    json atoms = json::array();
    for (int a = 0; a < m.uni->num_atoms(); ++a)
      if (m.has_atom(w, a)) atoms.push_back(m.uni->atom_name(a));
    j["worlds"].push_back({{"name", m.world_names[w]}, {"atoms", atoms}});
  }
  j["relations"] = json::object();
  for (int ag = 0; ag < m.uni->num_agents(); ++ag) {
    json pairs = json::array();
    for (int w = 0; w < m.num_worlds(); ++w)
      for (int v : m.rel[ag][w])
        pairs.push_back({m.world_names[w], m.world_names[v]});
    j["relations"][m.uni->agent_name(ag)] = pairs;
  }
  j["designated"] = json::array();
  for (int w : s.designated) j["designated"].push_back(m.world_names[w]);
  j["closure"] = "none";  // relations are written out fully
  return j;
}

Action action_from_json(const json& j, UniversePtr uni) {
  if (!j.is_object()) throw InputError("action: expected an object");
  Action a;
  a.name = require(j, "name", "action").get<std::string>();
  a.model = make_event_model(uni);
  std::map<std::string, int> by_name;
  for (const auto& ev : require(j, "events", "action")) {
    std::string name = require(ev, "name", "event").get<std::string>();
    if (by_name.count(name))
      throw InputError("action: duplicate event \"" + name + "\"");
    FormulaPtr pre =
        parse_formula(require(ev, "pre", "event").get<std::string>(), *uni);
    int idx = a.model.add_event(name, pre);
    by_name[name] = idx;
    if (auto it = ev.find("post"); it != ev.end()) {
      for (const auto& [atom, phi] : it->items()) {
        int at = uni->find_atom(atom);
        if (at < 0) throw InputError("unknown atom \"" + atom + "\"");
        a.model.post[idx][at] = parse_formula(phi.get<std::string>(), *uni);
      }
    }
  }
  auto event = [&](const std::string& name) {
    auto it = by_name.find(name);
    if (it == by_name.end())
      throw InputError("action: unknown event \"" + name + "\"");
    return it->second;
  };
  if (auto it = j.find("relations"); it != j.end()) {
    for (const auto& [agent, pairs] : it->items()) {
      int ag = agent_index(*uni, agent);
      for (const auto& pr : pairs) {
        if (!pr.is_array() || pr.size() != 2)
          throw InputError("action: relation entries must be [e, f] pairs");
        frame_add_edge(a.model.rel[ag], event(pr[0].get<std::string>()),
                       event(pr[1].get<std::string>()));
      }
    }
  }
  for (const auto& d : string_list(require(j, "designated", "action"),
                                   "designated"))
    a.designated.push_back(event(d));
  std::sort(a.designated.begin(), a.designated.end());
  a.designated.erase(std::unique(a.designated.begin(), a.designated.end()),
                     a.designated.end());
  if (closure_requested(j, "action")) a = equivalence_closure(a);
  auto errs = validate_action(a);
  if (!errs.empty()) throw InputError("action: " + errs.front());
  return a;
}

json action_to_json(const Action& a) {
  const EventModel& m = a.model;
  json j;
  j["name"] = a.name;
  j["events"] = json::array();
  for (int e = 0; e < m.num_events(); ++e) {
    json ev;
    ev["name"] = m.event_names[e];
    ev["pre"] = print_formula(m.pre[e], *m.uni);
    if (!m.post[e].empty()) {
      json post = json::object();
      for (const auto& [atom, phi] : m.post[e])
        post[m.uni->atom_name(atom)] = print_formula(phi, *m.uni);
      ev["post"] = post;
    }
    j["events"].push_back(ev);
  }
  j["relations"] = json::object();
  for (int ag = 0; ag < m.uni->num_agents(); ++ag) {
    json pairs = json::array();
    for (int e = 0; e < m.num_events(); ++e)
      for (int f : m.rel[ag][e])
        pairs.push_back({m.event_names[e], m.event_names[f]});
    j["relations"][m.uni->agent_name(ag)] = pairs;
  }
  j["designated"] = json::array();
  for (int e : a.designated) j["designated"].push_back(m.event_names[e]);
  j["closure"] = "none";
  return j;
}

PlanningTask task_from_json(const json& j) {
  if (!j.is_object()) throw InputError("task: expected an object");
  PlanningTask t;
  auto agents = string_list(require(j, "agents", "task"), "agents");
  auto atoms = string_list(require(j, "atoms", "task"), "atoms");
  t.uni = std::make_shared<Universe>(agents, atoms);
  t.logic = logic_from_json(require(j, "logic", "task"));
  t.initial = state_from_json(require(j, "initial", "task"), t.uni);
  for (const auto& a : require(j, "actions", "task"))
    t.actions.push_back(action_from_json(a, t.uni));
  t.goal = parse_formula(require(j, "goal", "task").get<std::string>(), *t.uni);
  if (auto it = j.find("options"); it != j.end()) {
    const json& o = *it;
    if (auto v = o.find("max_depth"); v != o.end())
      t.options.max_depth = v->get<int>();
    if (auto v = o.find("max_states"); v != o.end())
      t.options.max_states = v->get<long long>();
    if (auto v = o.find("contract_between_steps"); v != o.end())
      t.options.contract_between_steps = v->get<bool>();
    if (auto v = o.find("trace"); v != o.end()) t.options.trace = v->get<bool>();
  }
  validate_task(t);
  return t;
}

json task_to_json(const PlanningTask& t) {
  json j;
  j["agents"] = json::array();
  for (int a = 0; a < t.uni->num_agents(); ++a)
    j["agents"].push_back(t.uni->agent_name(a));
  j["atoms"] = json::array();
  for (int a = 0; a < t.uni->num_atoms(); ++a)
    j["atoms"].push_back(t.uni->atom_name(a));
  j["logic"] = logic_to_json(t.logic);
  j["initial"] = state_to_json(t.initial);
  j["actions"] = json::array();
  for (const auto& a : t.actions) j["actions"].push_back(action_to_json(a));
  j["goal"] = print_formula(t.goal, *t.uni);
  json opts = json::object();
  if (t.options.max_depth) opts["max_depth"] = *t.options.max_depth;
  if (t.options.max_states) opts["max_states"] = *t.options.max_states;
  opts["contract_between_steps"] = t.options.contract_between_steps;
  j["options"] = opts;
  return j;
}

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}

}  // namespace

PlanningTask load_task_file(const std::string& path) {
  return task_from_json(load_json_file(path));
}

TwoCounterMachine machine_from_json(const json& j) {
  if (!j.is_object()) throw InputError("machine: expected an object");
  TwoCounterMachine m;
  for (const auto& ins : require(j, "instructions", "machine")) {
    std::string op = require(ins, "op", "instruction").get<std::string>();
    Instruction out;
    if (op == "inc") {
      out.op = Instruction::Op::Inc;
      out.counter = require(ins, "counter", "inc").get<int>();
    } else if (op == "jump") {
      out.op = Instruction::Op::Jump;
      out.target = require(ins, "target", "jump").get<int>();
    } else if (op == "jzdec") {
      out.op = Instruction::Op::Jzdec;
      out.counter = require(ins, "counter", "jzdec").get<int>();
      out.target = require(ins, "target", "jzdec").get<int>();
    } else if (op == "halt") {
      out.op = Instruction::Op::Halt;
    } else {
      throw InputError("machine: unknown op \"" + op + "\"");
    }
    m.instructions.push_back(out);
  }
  validate_machine(m);
  return m;
}

TwoCounterMachine load_machine_file(const std::string& path) {
  return machine_from_json(load_json_file(path));
}

}  // namespace epiplan
