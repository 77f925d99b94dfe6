#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epiplan/event.hpp"
#include "epiplan/kripke.hpp"

namespace epiplan {

// Which axiom regime governs validity.  Base logic is always S5.
struct LogicSpec {
  enum class Ext { None, C, Cb, WCl };
  Ext ext = Ext::None;
  int param = 0;  // b for Cb (>= 2), l for WCl (2 < l <= n after collapse)

  static LogicSpec S5() { return {Ext::None, 0}; }
  static LogicSpec C() { return {Ext::C, 0}; }
  // b = 1 collapses to C, l = 2 collapses to C.
  static LogicSpec Cb(int b);
  static LogicSpec WCl(int l);

  bool operator==(const LogicSpec&) const = default;
  std::string to_string() const;
};

// Relational composition in sequence order: (u,w) is included iff a path
// u ->_{seq[0]} ... ->_{seq[k-1]} w exists.
Adjacency compose_relations(const Frame& frame, int n_nodes,
                            const std::vector<int>& agent_seq);

struct FrameCheck {
  bool ok = true;
  std::string reason;         // human-readable description of the violation
  std::vector<int> lhs_seq;   // the composition sequence that was not matched
  int u = -1, v = -1, w = -1;  // witness: u ->lhs...-> w, v first intermediate
};

// S5 part (all relations equivalences) plus the extension's composition
// inclusions: C: R_j.R_i <= R_i.R_j for all ordered pairs; Cb(b): b-fold
// repetition of the pair inclusion; WCl(l): every permutation of an
// injective l-agent sequence is included in the ascending one.
FrameCheck check_frame_property(const Frame& frame, int n_nodes,
                                const LogicSpec& spec);

bool is_L_state(const EpistemicState& s, const LogicSpec& spec);
bool is_L_action(const Action& a, const LogicSpec& spec);

struct ProbeReport {
  int trials = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

// Random contracted L-state generator used by the probes and tests.
// Generates random per-agent partitions (equivalence relations), repairs to
// the target composition inclusions by adding matching paths and re-closing
// until a fixpoint, then contracts.  Throws on non-convergence (not observed
// in practice; repair grows relations monotonically).
EpistemicState random_L_state(std::mt19937_64& rng, const LogicSpec& spec,
                              int n_agents, int max_worlds, int n_atoms);

// Semantic probes for the box-permutation lemma, the box-chain implication,
// the finitary common-knowledge characterization and the diameter corollary,
// each checked at every world of random contracted L-states.  For plain S5 a
// deterministic 4-world chain fixture is prepended so that the expected
// common-knowledge counterexample is always found.
ProbeReport probe_theorems(const LogicSpec& spec, int n_agents, int trials,
                           std::uint64_t seed);

}  // namespace epiplan
