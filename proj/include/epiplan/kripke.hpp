#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epiplan/universe.hpp"

namespace epiplan {

// Per-agent accessibility stored as adjacency lists: adj[w] is the sorted
// list of successors of w.  A Frame is one adjacency structure per agent.
using Adjacency = std::vector<std::vector<int>>;
using Frame = std::vector<Adjacency>;

bool frame_has_edge(const Adjacency& adj, int u, int v);
void frame_add_edge(Adjacency& adj, int u, int v);  // keeps lists sorted, dedups

// Least reflexive-symmetric-transitive superset of every relation
// (connected components of the undirected edge graph become cliques).
Frame equivalence_closure(const Frame& frame, int n_nodes);
bool is_equivalence_frame(const Frame& frame, int n_nodes);

struct EpistemicModel {
  UniversePtr uni;
  std::vector<std::string> world_names;
  std::vector<std::uint64_t> val;  // atom bitmask per world
  Frame rel;                       // rel[agent][world] = sorted successors

  int num_worlds() const { return static_cast<int>(world_names.size()); }
  // Adds a world and returns its index.
  int add_world(std::string name, std::uint64_t atoms);
  bool has_atom(int w, int atom) const {
    return (val[w] >> atom) & 1u;
  }
};

// Convenience constructor: empty model over a universe.
EpistemicModel make_model(UniversePtr uni);

struct EpistemicState {
  EpistemicModel model;
  std::vector<int> designated;  // sorted world indices
};

std::vector<std::string> validate_model(const EpistemicModel& m);
std::vector<std::string> validate_state(const EpistemicState& s);

bool is_equivalence(const EpistemicModel& m);
EpistemicModel equivalence_closure(const EpistemicModel& m);
EpistemicState equivalence_closure(const EpistemicState& s);

}  // namespace epiplan
