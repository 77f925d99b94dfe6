#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epiplan/axioms.hpp"
#include "epiplan/event.hpp"

namespace epiplan {

struct SearchOptions {
  std::optional<int> max_depth;
  std::optional<long long> max_states;
  bool contract_between_steps = true;
  bool trace = false;
};

struct PlanningTask {
  UniversePtr uni;
  EpistemicState initial;
  std::vector<Action> actions;  // expansion order = this order
  FormulaPtr goal;
  LogicSpec logic;
  SearchOptions options;
};

// Throws InputError when the initial state is not an L-state, an action is
// not an L-action, or a plain-S5 task carries no cap.
void validate_task(const PlanningTask& task);

enum class Verdict { Solvable, Unsolvable, Unknown };

struct PruneRecord {
  int depth = 0;
  std::string action;
  std::string reason;  // frame-property counterexample description
};

struct PlanResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<std::string> plan;  // action names (Solvable only)
  std::string unknown_reason;     // cap description (Unknown only)
  // stats
  long long expanded = 0;
  long long dedup_hits = 0;
  long long pruned = 0;
  int max_depth_reached = 0;
  // trace mode only
  std::vector<std::vector<EpistemicState>> frontier_by_depth;
  std::vector<PruneRecord> prunes;
};

// Breadth-first plan existence from contract(initial): successors are the
// contracted products of applicable actions whose contracted result is an
// L-state; canonical-key dedup; FIFO frontier; actions expand in task order.
PlanResult plan_existence(const PlanningTask& task);

struct ValidationResult {
  bool ok = false;
  int fail_step = -1;  // 0-based step index, or -1
  std::string reason;
};

// Def 8: every prefix applicable, every visited (contracted) state an
// L-state, final state satisfies the goal.
ValidationResult validate_solution(const PlanningTask& task,
                                   const std::vector<std::string>& plan);

// Per-step human-readable dump of the plan's execution.
std::string explain_trace(const PlanningTask& task,
                          const std::vector<std::string>& plan);

}  // namespace epiplan
