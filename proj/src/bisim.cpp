#include "epiplan/bisim.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <tuple>

namespace epiplan {

namespace {

// signature of a world under the current block assignment
using Sig = std::pair<int, std::vector<std::vector<int>>>;

Sig world_signature(const EpistemicModel& m, const std::vector<int>& block_of,
                    int w) {
  std::vector<std::vector<int>> per_agent;
  per_agent.reserve(m.rel.size());
  for (const auto& adj : m.rel) {
    std::vector<int> succ;
    succ.reserve(adj[w].size());
    for (int v : adj[w]) succ.push_back(block_of[v]);
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    per_agent.push_back(std::move(succ));
  }
  return {block_of[w], std::move(per_agent)};
}

std::vector<std::vector<int>> blocks_from(const std::vector<int>& block_of,
                                          int n_blocks) {
  std::vector<std::vector<int>> blocks(n_blocks);
  for (size_t w = 0; w < block_of.size(); ++w)
    blocks[block_of[w]].push_back(static_cast<int>(w));
  return blocks;
}

}  // namespace

Partition refine_partition(const EpistemicModel& m, int max_rounds) {
  const int n = m.num_worlds();
  Partition p;
  p.block_of.assign(n, 0);

  // round 0: split by valuation, block ids ordered by atom bitmask
  {
    std::map<std::uint64_t, int> ids;
    for (int w = 0; w < n; ++w) ids.emplace(m.val[w], 0);
    int next = 0;
    for (auto& kv : ids) kv.second = next++;
    for (int w = 0; w < n; ++w) p.block_of[w] = ids[m.val[w]];
  }

  int n_blocks = *std::max_element(p.block_of.begin(), p.block_of.end()) + 1;
  while (max_rounds < 0 || p.rounds < max_rounds) {
    // new block ids ordered lexicographically by signature: deterministic
    // and isomorphism-invariant given the previous round's ids
    std::map<Sig, int> ids;
    std::vector<Sig> sigs;
    sigs.reserve(n);
    for (int w = 0; w < n; ++w) {
      sigs.push_back(world_signature(m, p.block_of, w));
      ids.emplace(sigs.back(), 0);
    }
    int next = 0;
    for (auto& kv : ids) kv.second = next++;
    if (next == n_blocks && max_rounds < 0) break;  // fixpoint
    for (int w = 0; w < n; ++w) p.block_of[w] = ids[sigs[w]];
    ++p.rounds;
    if (next == n_blocks) {
      if (max_rounds < 0) break;
      // bounded mode: partition can only stay stable from here on
      if (p.rounds >= max_rounds) break;
      n_blocks = next;
      break;
    }
    n_blocks = next;
  }
  p.blocks = blocks_from(p.block_of, n_blocks);
  return p;
}

namespace {

// disjoint union of the two models (s first); returns offset of t's worlds
EpistemicModel disjoint_union(const EpistemicModel& a, const EpistemicModel& b,
                              int* offset) {
  EpistemicModel u = a;
  *offset = a.num_worlds();
  for (int w = 0; w < b.num_worlds(); ++w)
    u.add_world("u_" + std::to_string(*offset + w), b.val[w]);
  for (size_t ag = 0; ag < u.rel.size(); ++ag)
    for (int w = 0; w < b.num_worlds(); ++w)
      for (int v : b.rel[ag][w]) u.rel[ag][*offset + w].push_back(*offset + v);
  return u;
}

void require_same_universe(const EpistemicModel& a, const EpistemicModel& b) {
  if (!a.uni || !b.uni || !a.uni->same_as(*b.uni))
    throw InputError("universe mismatch");
}

bool designated_match(const std::vector<int>& block_of, int offset,
                      const std::vector<int>& des_s,
                      const std::vector<int>& des_t) {
  for (int w : des_s) {
    bool found = false;
    for (int v : des_t)
      if (block_of[w] == block_of[offset + v]) { found = true; break; }
    if (!found) return false;
  }
  for (int v : des_t) {
    bool found = false;
    for (int w : des_s)
      if (block_of[w] == block_of[offset + v]) { found = true; break; }
    if (!found) return false;
  }
  return true;
}

}  // namespace

BisimResult bisimilar(const EpistemicState& s, const EpistemicState& t) {
  require_same_universe(s.model, t.model);
  int offset = 0;
  EpistemicModel u = disjoint_union(s.model, t.model, &offset);
  Partition p = refine_partition(u);
  BisimResult res;
  res.bisimilar = designated_match(p.block_of, offset, s.designated, t.designated);
  if (res.bisimilar) {
    for (int w = 0; w < s.model.num_worlds(); ++w)
      for (int v = 0; v < t.model.num_worlds(); ++v)
        if (p.block_of[w] == p.block_of[offset + v])
          res.witness.emplace_back(w, v);
  }
  return res;
}

bool k_bisimilar(const EpistemicState& s, const EpistemicState& t, int k) {
  require_same_universe(s.model, t.model);
  int offset = 0;
  EpistemicModel u = disjoint_union(s.model, t.model, &offset);
  Partition p = refine_partition(u, k);
  return designated_match(p.block_of, offset, s.designated, t.designated);
}

EpistemicState contract(const EpistemicState& s) {
  Partition p = refine_partition(s.model);
  const int nb = static_cast<int>(p.blocks.size());
  EpistemicModel out = make_model(s.model.uni);
  for (int b = 0; b < nb; ++b) {
    int rep = p.blocks[b].front();  // smallest world index in the block
    out.add_world(s.model.world_names[rep], s.model.val[rep]);
  }
  for (size_t ag = 0; ag < s.model.rel.size(); ++ag)
    for (int w = 0; w < s.model.num_worlds(); ++w)
      for (int v : s.model.rel[ag][w])
        frame_add_edge(out.rel[ag], p.block_of[w], p.block_of[v]);
  std::vector<int> des;
  for (int w : s.designated) des.push_back(p.block_of[w]);
  std::sort(des.begin(), des.end());
  des.erase(std::unique(des.begin(), des.end()), des.end());
  return {std::move(out), std::move(des)};
}

namespace {

void put_u32(std::string& out, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}
void put_u64(std::string& out, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

}  // namespace

namespace {

// Generated substate: only worlds reachable from a designated world matter
// for state bisimilarity, so the key must ignore disconnected junk.
EpistemicState reachable_part(const EpistemicState& s) {
  const int n = s.model.num_worlds();
  std::vector<char> seen(n, 0);
  std::vector<int> stack = s.designated;
  for (int w : stack) seen[w] = 1;
  while (!stack.empty()) {
    int w = stack.back();
    stack.pop_back();
    for (const auto& adj : s.model.rel)
      for (int v : adj[w])
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
  }
  std::vector<int> keep;
  for (int w = 0; w < n; ++w)
    if (seen[w]) keep.push_back(w);
  if (static_cast<int>(keep.size()) == n) return s;
  std::vector<int> remap(n, -1);
  EpistemicModel out = make_model(s.model.uni);
  for (int w : keep)
    remap[w] = out.add_world(s.model.world_names[w], s.model.val[w]);
  for (size_t ag = 0; ag < s.model.rel.size(); ++ag)
    for (int w : keep)
      for (int v : s.model.rel[ag][w])
        if (remap[v] >= 0) frame_add_edge(out.rel[ag], remap[w], remap[v]);
  std::vector<int> des;
  for (int w : s.designated) des.push_back(remap[w]);
  std::sort(des.begin(), des.end());
  return {std::move(out), std::move(des)};
}

}  // namespace

CanonicalKey canonical_key(const EpistemicState& s) {
  EpistemicState c = contract(reachable_part(s));
  Partition p = refine_partition(c.model);
  const int n = c.model.num_worlds();
  assert(static_cast<int>(p.blocks.size()) == n &&
         "contracted model must have singleton bisimulation classes");
  // canonical index of world w is its (unique) block id
  const std::vector<int>& order = p.block_of;

  std::string key;
  key.push_back('\x01');  // version
  put_u32(key, static_cast<std::uint32_t>(n));
  put_u32(key, static_cast<std::uint32_t>(c.model.uni->num_agents()));
  put_u32(key, static_cast<std::uint32_t>(c.model.uni->num_atoms()));
  // valuations in canonical order
  {
    std::vector<std::uint64_t> vals(n);
    for (int w = 0; w < n; ++w) vals[order[w]] = c.model.val[w];
    for (std::uint64_t v : vals) put_u64(key, v);
  }
  for (const auto& adj : c.model.rel) {
    std::vector<std::pair<int, int>> edges;
    for (int w = 0; w < n; ++w)
      for (int v : adj[w]) edges.emplace_back(order[w], order[v]);
    std::sort(edges.begin(), edges.end());
    put_u32(key, static_cast<std::uint32_t>(edges.size()));
    for (auto [u, v] : edges) {
      put_u32(key, static_cast<std::uint32_t>(u));
      put_u32(key, static_cast<std::uint32_t>(v));
    }
  }
  std::vector<int> des;
  for (int w : c.designated) des.push_back(order[w]);
  std::sort(des.begin(), des.end());
  put_u32(key, static_cast<std::uint32_t>(des.size()));
  for (int d : des) put_u32(key, static_cast<std::uint32_t>(d));
  return key;
}

FormulaPtr characteristic_formula(const EpistemicModel& m, int w, int k) {
  if (w < 0 || w >= m.num_worlds())
    throw InputError("characteristic_formula: unknown world");
  const int n = m.num_worlds();
  const int n_atoms = m.uni->num_atoms();

  auto literal_conj = [&](int world) {
    std::vector<FormulaPtr> lits;
    for (int a = 0; a < n_atoms; ++a)
      lits.push_back(m.has_atom(world, a) ? f_atom(a) : f_not(f_atom(a)));
    return f_and_all(lits);
  };

  // chi[v] for the current depth; built bottom-up so subformulas are shared
  std::vector<FormulaPtr> chi(n);
  for (int v = 0; v < n; ++v) chi[v] = literal_conj(v);
  for (int depth = 1; depth <= k; ++depth) {
    std::vector<FormulaPtr> next(n);
    for (int v = 0; v < n; ++v) {
      std::vector<FormulaPtr> parts{literal_conj(v)};
      for (int ag = 0; ag < m.uni->num_agents(); ++ag) {
        std::vector<FormulaPtr> forth, disj;
        for (int u : m.rel[ag][v]) {
          forth.push_back(f_possible(ag, chi[u]));
          disj.push_back(chi[u]);
        }
        parts.push_back(f_and_all(forth));                 // true when no succ
        parts.push_back(f_knows(ag, f_or_all(disj)));      // box of false
      }
      next[v] = f_and_all(parts);
    }
    chi = std::move(next);
  }
  return chi[w];
}

}  // namespace epiplan
