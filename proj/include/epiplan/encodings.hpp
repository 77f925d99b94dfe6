#pragma once

#include <string>
#include <vector>

#include "epiplan/planner.hpp"

namespace epiplan {

// ---- coordinated attack -------------------------------------------------

UniversePtr coord_universe();  // agents {a,b}, atoms {d,m_a,m_b}

EpistemicState coord_s0();
Action coord_send_ab();
Action coord_send_ba();

// Full task: goal C[{a,b}] d.  For plain S5 a depth cap must be supplied.
PlanningTask coordinated_attack_task(const LogicSpec& logic,
                                     std::optional<int> max_depth = {});

// Alternating a/b chain states: chain_state(0) = s0 (2 worlds); each further
// step applies send_ab / send_ba alternately, so chain_state(k) has k+2
// worlds.  Used by the bounded-commutativity examples.
EpistemicState coord_chain_state(int k);

// ---- action-template libraries ------------------------------------------

enum class MAStarKind { Ontic, Sensing, Announcement };

struct MAStarPayload {
  FormulaPtr pre;                             // precondition / sensed formula
  std::vector<std::pair<int, FormulaPtr>> post;  // ontic effects
};

// mA* templates over fully observant agents F and partially observant P
// (F and P partition the agent set; ontic requires P empty).
Action mastar_action(MAStarKind kind, const std::vector<int>& F,
                     const std::vector<int>& P, const MAStarPayload& payload,
                     UniversePtr uni);

enum class KGKind { Do, Update, Sense };

Action kg_action(KGKind kind, const std::vector<int>& observers,
                 const MAStarPayload& payload, UniversePtr uni);

// ---- two-counter machine reduction --------------------------------------

struct Instruction {
  enum class Op { Inc, Jump, Jzdec, Halt };
  Op op;
  int counter = -1;  // inc/jzdec
  int target = -1;   // jump/jzdec
};

struct TwoCounterMachine {
  std::vector<Instruction> instructions;  // last one must be Halt
  int T() const { return static_cast<int>(instructions.size()) - 1; }
};

void validate_machine(const TwoCounterMachine& m);

struct MachineConfig {
  int k = 0;
  long long l = 0, m = 0;
  bool operator==(const MachineConfig&) const = default;
};

MachineConfig machine_step(const TwoCounterMachine& m, const MachineConfig& c);

// agents {0,1,2}, atoms {p1,p2,p3,r}
UniversePtr machine_universe();

// A chain of n+1 three-world meta-worlds over agents {0,1,2}.  Worlds are
// numbered from the top: meta-world t has top-left w_{3t+1} ({p,r}),
// top-right w_{3t+2} ({p}) and bottom w_{3t+3} ({p}).  Top-right/bottom are
// joined by agent 2; the top-left/top-right edge of meta-world t and the
// link from the previous meta-world's bottom both use agent t mod 2, so the
// links alternate 1,0,1,... going down.  Equivalence-closed.
EpistemicModel meta_chain(int p_atom, int n, const std::string& prefix = "");

enum class PathKind { Lambda, Mu, Tau };

// The inductively defined path formulas.  Index i counts meta-worlds from
// the bottom of the chain: on meta_chain(p, n), lambda_i / mu_i / tau_i hold
// exactly at w_{3(n-i)+3} / w_{3(n-i)+2} / w_{3(n-i)+1}.
FormulaPtr path_formula(PathKind kind, int p_atom, int i);

struct MetaOp {
  enum class Kind { Inc, Dec, Repl };
  Kind kind;
  int n = -1, m = -1;  // Repl: current and target chain lengths
};

// Event models manipulating one chain (atom p): Inc appends a meta-world at
// the bottom (parity-guarded branches pick the interlink agent matching the
// current chain length), Dec removes the bottom meta-world, Repl rebuilds
// the whole chain at length m from the top meta-world.
Action meta_operation(const MetaOp& op, int p_atom);

// META-S_{(k,l,m)}: a designated atom-free root world linked by agent 0 to
// the top-right world of meta-chains for p1 (length k), p2 (length l) and
// p3 (length m).
EpistemicState meta_state(int k, int l, int m);

// phi_k: diamond_0 mu_k(p1), true at the root iff the p1-chain has length k.
FormulaPtr meta_phi(int k);

// The composite action a_M for instruction index k of machine M.  For jzdec
// instructions `zero` selects the zero/non-zero branch; it is ignored for
// the other opcodes.
Action machine_action(const TwoCounterMachine& m, int k, bool zero = false);

// All actions a_M: one per inc/jump instruction, two per jzdec instruction
// (zero / non-zero branch).
std::vector<Action> machine_actions(const TwoCounterMachine& m);

// Task: initial META-S_{(0,0,0)}, actions = machine_actions, goal phi_T,
// logic Cb(2) over 3 agents, depth cap attached (default 32).
PlanningTask encode_machine(const TwoCounterMachine& m, int max_depth = 32);

}  // namespace epiplan
