#pragma once

#include "epiplan/formula.hpp"
#include "epiplan/kripke.hpp"

namespace epiplan {

// Truth of a formula at one world (Kripke semantics; common knowledge
// quantifies over the reflexive-transitive closure of the union of the
// group's relations).  Shared subformulas are memoized per (node, world),
// which keeps characteristic-formula evaluation polynomial.
bool eval_world(const EpistemicModel& m, int w, const FormulaPtr& f);

// Truth at a state: conjunction over all designated worlds.
bool eval_state(const EpistemicState& s, const FormulaPtr& f);

}  // namespace epiplan
