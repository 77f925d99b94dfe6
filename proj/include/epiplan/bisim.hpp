#pragma once

#include <string>
#include <utility>
#include <vector>

#include "epiplan/formula.hpp"
#include "epiplan/kripke.hpp"

namespace epiplan {

// Partition of the worlds of one model into bisimulation blocks.
struct Partition {
  std::vector<int> block_of;             // world -> block id
  std::vector<std::vector<int>> blocks;  // block id -> sorted worlds
  int rounds = 0;                        // refinement rounds run
};

// Signature-based partition refinement.  Starts from valuation equality and
// refines by (own block, per-agent successor block sets).  max_rounds < 0
// runs to the fixpoint; otherwise exactly min(max_rounds, rounds-to-fixpoint)
// rounds are applied, which yields the k-bisimulation partition.
// Block ids are assigned in a deterministic, isomorphism-invariant order.
Partition refine_partition(const EpistemicModel& m, int max_rounds = -1);

struct BisimResult {
  bool bisimilar = false;
  // Witness: pairs (world of s, world of t) forming a bisimulation Z.
  std::vector<std::pair<int, int>> witness;
};

BisimResult bisimilar(const EpistemicState& s, const EpistemicState& t);
bool k_bisimilar(const EpistemicState& s, const EpistemicState& t, int k);

// Quotient by the greatest world-level bisimulation.
EpistemicState contract(const EpistemicState& s);

using CanonicalKey = std::string;

// Deterministic serialization of the contracted state; equal keys iff the
// states are bisimilar.  Layout: version byte, counts (worlds, agents,
// atoms), per-world atom bitsets, per-agent sorted edge lists over canonical
// world indices, sorted designated indices; integers little-endian.
CanonicalKey canonical_key(const EpistemicState& s);

// k-characteristic formula chi_w^k: k = 0 gives the full literal conjunction
// over the atom universe; k > 0 conjoins per agent the diamonds of the
// successors' chi^{k-1} and the box of their disjunction.
FormulaPtr characteristic_formula(const EpistemicModel& m, int w, int k);

}  // namespace epiplan
