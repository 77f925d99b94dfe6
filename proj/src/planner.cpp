#include "epiplan/planner.hpp"

#include <deque>
#include <sstream>
#include <unordered_set>

#include "epiplan/bisim.hpp"
#include "epiplan/eval.hpp"

namespace epiplan {

void validate_task(const PlanningTask& task) {
  if (!task.uni) throw InputError("task has no universe");
  auto sv = validate_state(task.initial);
  if (!sv.empty()) throw InputError("invalid initial state: " + sv.front());
  if (!is_L_state(task.initial, task.logic))
    throw InputError("initial state is not a " + task.logic.to_string() +
                     " state");
  for (const auto& a : task.actions) {
    auto av = validate_action(a);
    if (!av.empty())
      throw InputError("invalid action " + a.name + ": " + av.front());
    if (!is_L_action(a, task.logic))
      throw InputError("action " + a.name + " is not a " +
                       task.logic.to_string() + " action");
  }
  if (task.logic.ext == LogicSpec::Ext::None && !task.options.max_depth &&
      !task.options.max_states)
    throw InputError(
        "plain S5 plan existence is undecidable; set max_depth or max_states");
}

namespace {

const Action* find_action(const PlanningTask& task, const std::string& name) {
  for (const auto& a : task.actions)
    if (a.name == name) return &a;
  throw InputError("unknown action name: " + name);
}

}  // namespace

PlanResult plan_existence(const PlanningTask& task) {
  PlanResult res;
  const bool trace = task.options.trace;

  struct Node {
    EpistemicState state;
    std::vector<std::string> plan;
    int depth = 0;
  };

  EpistemicState start = contract(task.initial);
  std::unordered_set<CanonicalKey> visited{canonical_key(start)};
  std::deque<Node> frontier;
  frontier.push_back({start, {}, 0});
  if (trace) res.frontier_by_depth.push_back({start});

  if (eval_state(start, task.goal)) {
    res.verdict = Verdict::Solvable;
    return res;
  }

  bool cap_hit = false;
  std::string cap_reason;
  while (!frontier.empty()) {
    Node node = std::move(frontier.front());
    frontier.pop_front();
    if (task.options.max_depth && node.depth >= *task.options.max_depth) {
      cap_hit = true;
      cap_reason = "max_depth " + std::to_string(*task.options.max_depth);
      continue;  // generated but not expanded
    }
    ++res.expanded;
    for (const auto& action : task.actions) {
      if (!applicable(node.state, action)) continue;
      EpistemicState succ = product_update(node.state, action);
      EpistemicState succ_c = task.options.contract_between_steps
                                  ? contract(succ)
                                  : std::move(succ);
      // rollback pruning: a successor that violates the axioms is not taken
      FrameCheck fc = check_frame_property(
          succ_c.model.rel, succ_c.model.num_worlds(), task.logic);
      if (!fc.ok) {
        ++res.pruned;
        if (trace)
          res.prunes.push_back({node.depth + 1, action.name, fc.reason});
        continue;
      }
      CanonicalKey key = canonical_key(succ_c);
      if (!visited.insert(key).second) {
        ++res.dedup_hits;
        continue;
      }
      if (task.options.max_states &&
          static_cast<long long>(visited.size()) > *task.options.max_states) {
        cap_hit = true;
        cap_reason = "max_states " + std::to_string(*task.options.max_states);
        break;
      }
      std::vector<std::string> plan = node.plan;
      plan.push_back(action.name);
      res.max_depth_reached = std::max(res.max_depth_reached, node.depth + 1);
      if (trace) {
        if (static_cast<int>(res.frontier_by_depth.size()) <= node.depth + 1)
          res.frontier_by_depth.resize(node.depth + 2);
        res.frontier_by_depth[node.depth + 1].push_back(succ_c);
      }
      if (eval_state(succ_c, task.goal)) {
        res.verdict = Verdict::Solvable;
        res.plan = std::move(plan);
        return res;
      }
      frontier.push_back({std::move(succ_c), std::move(plan), node.depth + 1});
    }
    if (cap_hit && cap_reason.rfind("max_states", 0) == 0) break;
  }
  if (cap_hit) {
    res.verdict = Verdict::Unknown;
    res.unknown_reason = cap_reason;
  } else {
    res.verdict = Verdict::Unsolvable;
  }
  return res;
}

ValidationResult validate_solution(const PlanningTask& task,
                                   const std::vector<std::string>& plan) {
  EpistemicState s = contract(task.initial);
  for (size_t i = 0; i < plan.size(); ++i) {
    const Action* a = find_action(task, plan[i]);
    if (!applicable(s, *a))
      return {false, static_cast<int>(i),
              "action " + plan[i] + " not applicable"};
    s = contract(product_update(s, *a));
    FrameCheck fc =
        check_frame_property(s.model.rel, s.model.num_worlds(), task.logic);
    if (!fc.ok)
      return {false, static_cast<int>(i),
              "state after " + plan[i] + " is not a " +
                  task.logic.to_string() + " state: " + fc.reason};
  }
  if (!eval_state(s, task.goal))
    return {false, static_cast<int>(plan.size()),
            "goal does not hold in the final state"};
  return {true, -1, ""};
}

std::string explain_trace(const PlanningTask& task,
                          const std::vector<std::string>& plan) {
  std::ostringstream os;
  auto dump = [&](const EpistemicState& s, const std::string& label) {
    os << label << ": " << s.model.num_worlds() << " worlds, designated {";
    for (size_t i = 0; i < s.designated.size(); ++i) {
      if (i) os << ",";
      os << s.model.world_names[s.designated[i]];
    }
    os << "}";
    FrameCheck fc =
        check_frame_property(s.model.rel, s.model.num_worlds(), task.logic);
    os << ", " << task.logic.to_string()
       << (fc.ok ? " frame check: pass" : " frame check: FAIL — " + fc.reason)
       << "\n";
  };
  EpistemicState s = contract(task.initial);
  dump(s, "initial");
  for (size_t i = 0; i < plan.size(); ++i) {
    const Action* a = find_action(task, plan[i]);
    os << "step " << (i + 1) << ": apply " << plan[i];
    if (!applicable(s, *a)) {
      os << " — NOT APPLICABLE\n";
      return os.str();
    }
    os << "\n";
    EpistemicState raw = product_update(s, *a);
    dump(raw, "  product");
    s = contract(raw);
    dump(s, "  contracted");
  }
  os << "goal " << print_formula(task.goal, *task.uni) << ": "
     << (eval_state(s, task.goal) ? "satisfied" : "not satisfied") << "\n";
  return os.str();
}

}  // namespace epiplan
