#pragma once

#include <map>
#include <string>
#include <vector>

#include "epiplan/bisim.hpp"
#include "epiplan/formula.hpp"
#include "epiplan/kripke.hpp"

namespace epiplan {

struct EventModel {
  UniversePtr uni;
  std::vector<std::string> event_names;
  std::vector<FormulaPtr> pre;                  // per event
  std::vector<std::map<int, FormulaPtr>> post;  // per event: atom -> formula
  Frame rel;                                    // rel[agent][event]

  int num_events() const { return static_cast<int>(event_names.size()); }
  // Adds an event with the given precondition, returns its index.
  int add_event(std::string name, FormulaPtr precondition);
};

EventModel make_event_model(UniversePtr uni);

struct Action {
  std::string name;
  EventModel model;
  std::vector<int> designated;  // sorted event indices
};

std::vector<std::string> validate_action(const Action& a);

Action equivalence_closure(const Action& a);

// Every designated world satisfies the precondition of some designated event.
bool applicable(const EpistemicState& s, const Action& a);

// Def 6 product update.  Worlds are the pairs (w,e) with (M,w) |= pre(e);
// edges need both a world edge and an event edge; postconditions are
// evaluated against the pre-update state (atoms absent from post keep their
// value); designated = surviving designated x designated pairs.  The result
// is not contracted.
EpistemicState product_update(const EpistemicState& s, const Action& a);

struct ComposeResult {
  EpistemicState state;
  int fail_index = -1;  // index of the first inapplicable action, or -1
};

ComposeResult compose_sequence(const EpistemicState& s0,
                               const std::vector<Action>& actions,
                               bool contract_each);

}  // namespace epiplan
