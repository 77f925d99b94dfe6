#include "epiplan/kripke.hpp"

#include <algorithm>
#include <numeric>

namespace epiplan {

bool frame_has_edge(const Adjacency& adj, int u, int v) {
  const auto& row = adj[u];
  return std::binary_search(row.begin(), row.end(), v);
}

void frame_add_edge(Adjacency& adj, int u, int v) {
  auto& row = adj[u];
  auto it = std::lower_bound(row.begin(), row.end(), v);
  if (it == row.end() || *it != v) row.insert(it, v);
}

namespace {

// union-find over node indices
struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Frame equivalence_closure(const Frame& frame, int n_nodes) {
  Frame out(frame.size());
  for (size_t ag = 0; ag < frame.size(); ++ag) {
    DSU dsu(n_nodes);
    for (int u = 0; u < n_nodes && u < static_cast<int>(frame[ag].size()); ++u)
      for (int v : frame[ag][u]) dsu.unite(u, v);
    std::vector<std::vector<int>> members(n_nodes);
    for (int u = 0; u < n_nodes; ++u) members[dsu.find(u)].push_back(u);
    out[ag].assign(n_nodes, {});
    for (int u = 0; u < n_nodes; ++u) out[ag][u] = members[dsu.find(u)];
  }
  return out;
}

bool is_equivalence_frame(const Frame& frame, int n_nodes) {
  for (const auto& adj : frame) {
    if (static_cast<int>(adj.size()) < n_nodes) return false;
    for (int u = 0; u < n_nodes; ++u) {
      if (!frame_has_edge(adj, u, u)) return false;
      for (int v : adj[u]) {
        if (!frame_has_edge(adj, v, u)) return false;
        // transitivity: successors of v must be successors of u
        for (int w : adj[v])
          if (!frame_has_edge(adj, u, w)) return false;
      }
    }
  }
  return true;
}

int EpistemicModel::add_world(std::string name, std::uint64_t atoms) {
  world_names.push_back(std::move(name));
  val.push_back(atoms);
  for (auto& adj : rel) adj.emplace_back();
  return num_worlds() - 1;
}

EpistemicModel make_model(UniversePtr uni) {
  EpistemicModel m;
  m.rel.assign(uni->num_agents(), {});
  m.uni = std::move(uni);
  return m;
}

std::vector<std::string> validate_model(const EpistemicModel& m) {
  std::vector<std::string> out;
  if (!m.uni) {
    out.push_back("model has no universe");
    return out;
  }
  const int n = m.num_worlds();
  if (n == 0) out.push_back("model has no worlds");
  if (static_cast<int>(m.val.size()) != n)
    out.push_back("valuation size mismatch");
  if (static_cast<int>(m.rel.size()) != m.uni->num_agents())
    out.push_back("relation family size differs from agent count");
  {
    std::vector<std::string> sorted = m.world_names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      out.push_back("duplicate world name");
  }
  for (size_t ag = 0; ag < m.rel.size(); ++ag) {
    if (static_cast<int>(m.rel[ag].size()) != n) {
      out.push_back("relation for agent " + m.uni->agent_name(ag) +
                    " has wrong world count");
      continue;
    }
    for (int u = 0; u < n; ++u)
      for (int v : m.rel[ag][u])
        if (v < 0 || v >= n)
          out.push_back("relation for agent " + m.uni->agent_name(ag) +
                        " references missing world index " + std::to_string(v));
  }
  if (m.uni->num_atoms() < 64)
    for (int w = 0; w < n; ++w)
      if (m.val[w] >> m.uni->num_atoms())
        out.push_back("world " + m.world_names[w] +
                      " has atoms outside the universe");
  return out;
}

std::vector<std::string> validate_state(const EpistemicState& s) {
  std::vector<std::string> out = validate_model(s.model);
  if (s.designated.empty()) out.push_back("empty designated set");
  for (int w : s.designated)
    if (w < 0 || w >= s.model.num_worlds())
      out.push_back("designated world index " + std::to_string(w) +
                    " does not exist");
  return out;
}

bool is_equivalence(const EpistemicModel& m) {
  return is_equivalence_frame(m.rel, m.num_worlds());
}

EpistemicModel equivalence_closure(const EpistemicModel& m) {
  EpistemicModel out = m;
  out.rel = equivalence_closure(m.rel, m.num_worlds());
  return out;
}

EpistemicState equivalence_closure(const EpistemicState& s) {
  return {equivalence_closure(s.model), s.designated};
}

}  // namespace epiplan
