#include "epiplan/axioms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "epiplan/bisim.hpp"
#include "epiplan/eval.hpp"

namespace epiplan {

LogicSpec LogicSpec::Cb(int b) {
  if (b < 1) throw InputError("Cb requires b >= 1");
  if (b == 1) return C();  // C^1 = C
  return {Ext::Cb, b};
}

LogicSpec LogicSpec::WCl(int l) {
  if (l < 2) throw InputError("wCl requires l >= 2");
  if (l == 2) return C();  // wC_2 = C
  return {Ext::WCl, l};
}

std::string LogicSpec::to_string() const {
  switch (ext) {
    case Ext::None: return "S5";
    case Ext::C: return "C-S5";
    case Ext::Cb: return "Cb-S5(b=" + std::to_string(param) + ")";
    case Ext::WCl: return "wCl-S5(l=" + std::to_string(param) + ")";
  }
  return "?";
}

Adjacency compose_relations(const Frame& frame, int n_nodes,
                            const std::vector<int>& agent_seq) {
  if (agent_seq.empty()) throw InputError("empty composition sequence");
  for (int ag : agent_seq)
    if (ag < 0 || ag >= static_cast<int>(frame.size()))
      throw InputError("unknown agent in composition sequence");
  Adjacency out(n_nodes);
  for (int u = 0; u < n_nodes; ++u) {
    std::vector<char> cur(n_nodes, 0);
    cur[u] = 1;
    for (int ag : agent_seq) {
      std::vector<char> next(n_nodes, 0);
      for (int v = 0; v < n_nodes; ++v)
        if (cur[v])
          for (int x : frame[ag][v]) next[x] = 1;
      cur = std::move(next);
    }
    for (int v = 0; v < n_nodes; ++v)
      if (cur[v]) out[u].push_back(v);
  }
  return out;
}

namespace {

// Full path u = x0 ->seq[0] x1 -> ... -> xk = w, when one exists.
std::optional<std::vector<int>> find_path(const Frame& frame,
                                          const std::vector<int>& seq, int u,
                                          int w, int n_nodes) {
  // layer[t] = nodes reachable after t steps, with back-pointers
  std::vector<std::vector<int>> parent(seq.size() + 1,
                                       std::vector<int>(n_nodes, -2));
  parent[0][u] = -1;
  for (size_t t = 0; t < seq.size(); ++t)
    for (int v = 0; v < n_nodes; ++v)
      if (parent[t][v] != -2)
        for (int x : frame[seq[t]][v])
          if (parent[t + 1][x] == -2) parent[t + 1][x] = v;
  if (parent[seq.size()][w] == -2) return std::nullopt;
  std::vector<int> path(seq.size() + 1);
  path[seq.size()] = w;
  for (size_t t = seq.size(); t > 0; --t)
    path[t - 1] = parent[t][path[t]];
  return path;
}

std::string seq_to_string(const std::vector<int>& seq) {
  std::string s = "[";
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(seq[i]);
  }
  return s + "]";
}

// All (lhs, rhs) composition-inclusion requirements of the extension.
std::vector<std::pair<std::vector<int>, std::vector<int>>> inclusion_pairs(
    int n_agents, const LogicSpec& spec) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  switch (spec.ext) {
    case LogicSpec::Ext::None:
      break;
    case LogicSpec::Ext::C:
    case LogicSpec::Ext::Cb: {
      const int b = spec.ext == LogicSpec::Ext::C ? 1 : spec.param;
      for (int i = 0; i < n_agents; ++i)
        for (int j = 0; j < n_agents; ++j) {
          if (i == j) continue;
          std::vector<int> lhs, rhs;
          for (int t = 0; t < b; ++t) {
            lhs.push_back(j);
            lhs.push_back(i);
            rhs.push_back(i);
            rhs.push_back(j);
          }
          out.emplace_back(std::move(lhs), std::move(rhs));
        }
      break;
    }
    case LogicSpec::Ext::WCl: {
      const int l = spec.param;
      if (l > n_agents) break;  // guarded by the loader
      std::vector<int> subset(l);
      // iterate over ascending l-subsets
      std::vector<int> idx(l);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        std::vector<int> rhs = idx;
        std::vector<int> perm = idx;
        do {
          if (perm != rhs) out.emplace_back(perm, rhs);
        } while (std::next_permutation(perm.begin(), perm.end()));
        // advance subset
        int pos = l - 1;
        while (pos >= 0 && idx[pos] == n_agents - l + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int q = pos + 1; q < l; ++q) idx[q] = idx[q - 1] + 1;
      }
      break;
    }
  }
  return out;
}

}  // namespace

FrameCheck check_frame_property(const Frame& frame, int n_nodes,
                                const LogicSpec& spec) {
  FrameCheck res;
  const int n_agents = static_cast<int>(frame.size());
  // S5 part: every relation an equivalence
  for (int ag = 0; ag < n_agents; ++ag) {
    for (int u = 0; u < n_nodes; ++u) {
      if (!frame_has_edge(frame[ag], u, u)) {
        res.ok = false;
        res.u = u;
        res.reason = "relation of agent " + std::to_string(ag) +
                     " is not reflexive at node " + std::to_string(u);
        return res;
      }
      for (int v : frame[ag][u]) {
        if (!frame_has_edge(frame[ag], v, u)) {
          res.ok = false;
          res.u = u;
          res.v = v;
          res.reason = "relation of agent " + std::to_string(ag) +
                       " is not symmetric on (" + std::to_string(u) + "," +
                       std::to_string(v) + ")";
          return res;
        }
        for (int w : frame[ag][v])
          if (!frame_has_edge(frame[ag], u, w)) {
            res.ok = false;
            res.u = u;
            res.v = v;
            res.w = w;
            res.reason = "relation of agent " + std::to_string(ag) +
                         " is not transitive on (" + std::to_string(u) + "," +
                         std::to_string(v) + "," + std::to_string(w) + ")";
            return res;
          }
      }
    }
  }
  // extension: composition inclusions, first violation in lexicographic order
  for (const auto& [lhs, rhs] : inclusion_pairs(n_agents, spec)) {
    Adjacency cl = compose_relations(frame, n_nodes, lhs);
    Adjacency cr = compose_relations(frame, n_nodes, rhs);
    for (int u = 0; u < n_nodes; ++u)
      for (int w : cl[u])
        if (!frame_has_edge(cr, u, w)) {
          res.ok = false;
          res.lhs_seq = lhs;
          res.u = u;
          res.w = w;
          auto path = find_path(frame, lhs, u, w, n_nodes);
          if (path && path->size() > 2) res.v = (*path)[1];
          res.reason = "composition " + seq_to_string(lhs) + " reaches (" +
                       std::to_string(u) + "," + std::to_string(w) +
                       ") but " + seq_to_string(rhs) + " does not";
          return res;
        }
  }
  return res;
}

bool is_L_state(const EpistemicState& s, const LogicSpec& spec) {
  return check_frame_property(s.model.rel, s.model.num_worlds(), spec).ok;
}

bool is_L_action(const Action& a, const LogicSpec& spec) {
  return check_frame_property(a.model.rel, a.model.num_events(), spec).ok;
}

// ---- random generation ---------------------------------------------------

namespace {

UniversePtr probe_universe(int n_agents, int n_atoms) {
  static const char* agent_names[] = {"a", "b", "c", "d", "e", "f"};
  static const char* atom_names[] = {"p", "q", "r"};
  std::vector<std::string> agents, atoms;
  for (int i = 0; i < n_agents; ++i)
    agents.push_back(i < 6 ? agent_names[i] : "ag" + std::to_string(i));
  for (int i = 0; i < n_atoms; ++i)
    atoms.push_back(i < 3 ? atom_names[i] : "at" + std::to_string(i));
  return std::make_shared<Universe>(std::move(agents), std::move(atoms));
}

// Repairs the frame towards the spec's inclusions by adding, for each
// violating lhs path, the matching rhs path edge-by-edge, re-closing to
// equivalences, until a fixpoint.  Monotone, hence convergent.
bool repair_frame(Frame& frame, int n_nodes, const LogicSpec& spec) {
  auto pairs = inclusion_pairs(static_cast<int>(frame.size()), spec);
  for (int round = 0; round < 200; ++round) {
    bool violated = false;
    for (const auto& [lhs, rhs] : pairs) {
      Adjacency cl = compose_relations(frame, n_nodes, lhs);
      Adjacency cr = compose_relations(frame, n_nodes, rhs);
      for (int u = 0; u < n_nodes && !violated; ++u)
        for (int w : cl[u]) {
          if (frame_has_edge(cr, u, w)) continue;
          auto path = find_path(frame, lhs, u, w, n_nodes);
          for (size_t t = 0; t + 1 < path->size(); ++t) {
            frame_add_edge(frame[rhs[t]], (*path)[t], (*path)[t + 1]);
            frame_add_edge(frame[rhs[t]], (*path)[t + 1], (*path)[t]);
          }
          violated = true;
          break;
        }
      if (violated) break;
    }
    if (!violated) return true;
    frame = equivalence_closure(frame, n_nodes);
  }
  return false;
}

}  // namespace

EpistemicState random_L_state(std::mt19937_64& rng, const LogicSpec& spec,
                              int n_agents, int max_worlds, int n_atoms) {
  UniversePtr uni = probe_universe(n_agents, n_atoms);
  for (int attempt = 0; attempt < 50; ++attempt) {
    const int n = 2 + static_cast<int>(rng() % std::max(1, max_worlds - 1));
    EpistemicModel m = make_model(uni);
    for (int w = 0; w < n; ++w)
      m.add_world("v" + std::to_string(w + 1),
                  rng() & ((std::uint64_t{1} << n_atoms) - 1));
    // random partition per agent
    for (int ag = 0; ag < n_agents; ++ag) {
      std::vector<int> blk(n);
      for (int w = 0; w < n; ++w) blk[w] = static_cast<int>(rng() % n);
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (blk[u] == blk[v]) m.rel[ag][u].push_back(v);
    }
    bool ok = repair_frame(m.rel, n, spec);
    if (!ok) continue;
    EpistemicState s{m, {static_cast<int>(rng() % n)}};
    // contraction can in principle disturb the property; re-repair on the
    // quotient until stable
    for (int i = 0; i < 10; ++i) {
      s = contract(s);
      if (check_frame_property(s.model.rel, s.model.num_worlds(), spec).ok)
        return s;
      if (!repair_frame(s.model.rel, s.model.num_worlds(), spec)) break;
    }
  }
  throw std::runtime_error("random_L_state failed to converge");
}

// ---- theorem probes ------------------------------------------------------

namespace {

FormulaPtr random_formula(std::mt19937_64& rng, const Universe& uni,
                          int max_modal_depth, int size_budget) {
  const int n_atoms = uni.num_atoms();
  const int n_agents = uni.num_agents();
  int pick = static_cast<int>(rng() % 10);
  if (size_budget <= 0 || pick < 3) {
    int a = static_cast<int>(rng() % (n_atoms + 1));
    if (a == n_atoms) return rng() % 2 ? f_true() : f_false();
    return f_atom(a);
  }
  if (pick < 5)
    return f_not(random_formula(rng, uni, max_modal_depth, size_budget - 1));
  if (pick < 7) {
    auto l = random_formula(rng, uni, max_modal_depth, size_budget / 2);
    auto r = random_formula(rng, uni, max_modal_depth, size_budget / 2);
    switch (rng() % 4) {
      case 0: return f_and(l, r);
      case 1: return f_or(l, r);
      case 2: return f_implies(l, r);
      default: return f_iff(l, r);
    }
  }
  if (max_modal_depth <= 0)
    return random_formula(rng, uni, 0, 0);
  int ag = static_cast<int>(rng() % n_agents);
  auto body = random_formula(rng, uni, max_modal_depth - 1, size_budget - 1);
  switch (rng() % 3) {
    case 0: return f_knows(ag, body);
    case 1: return f_possible(ag, body);
    default: {
      std::vector<int> g;
      for (int i = 0; i < n_agents; ++i)
        if (rng() % 2) g.push_back(i);
      if (g.empty()) g.push_back(ag);
      return f_common(std::move(g), body);
    }
  }
}

FormulaPtr box_chain(const std::vector<int>& agents, FormulaPtr body) {
  for (auto it = agents.rbegin(); it != agents.rend(); ++it)
    body = f_knows(*it, body);
  return body;
}

std::vector<int> random_group(std::mt19937_64& rng, int n_agents,
                              int min_size) {
  std::vector<int> all(n_agents);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  int size = min_size + static_cast<int>(rng() % (n_agents - min_size + 1));
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

// The 4-world alternating S5 chain used as the deterministic plain-S5
// fixture (atom 0 marks the first three worlds); its frame violates the
// finitary common-knowledge characterization.
EpistemicState s5_fixture(UniversePtr uni) {
  EpistemicModel m = make_model(uni);
  m.add_world("v1", 1);
  m.add_world("v2", 1);
  m.add_world("v3", 1);
  m.add_world("v4", 0);
  frame_add_edge(m.rel[1], 0, 1);
  frame_add_edge(m.rel[0], 1, 2);
  frame_add_edge(m.rel[1], 2, 3);
  m.rel = equivalence_closure(m.rel, 4);
  return {std::move(m), {0}};
}

}  // namespace

ProbeReport probe_theorems(const LogicSpec& spec, int n_agents, int trials,
                           std::uint64_t seed) {
  if (trials < 1) throw InputError("probe needs at least one trial");
  if (n_agents < 2) throw InputError("probe needs at least two agents");
  std::mt19937_64 rng(seed);
  UniversePtr uni = probe_universe(n_agents, 3);
  ProbeReport report;

  const bool c_theorems =
      spec.ext == LogicSpec::Ext::C || spec.ext == LogicSpec::Ext::None;

  for (int trial = 0; trial < trials; ++trial) {
    ++report.trials;
    EpistemicState s = (trial == 0 && spec.ext == LogicSpec::Ext::None)
                           ? s5_fixture(uni)
                           : random_L_state(rng, spec, n_agents, 6, 3);
    const EpistemicModel& m = s.model;
    const int n = m.num_worlds();
    FormulaPtr phi = random_formula(rng, *uni, 3, 6);
    if (trial == 0 && spec.ext == LogicSpec::Ext::None)
      phi = f_atom(0);  // guaranteed witness on the fixture chain

    auto note = [&](const std::string& what, int world) {
      std::ostringstream os;
      os << "trial " << trial << ": " << what << " fails at world "
         << m.world_names[world] << " (|W|=" << n
         << ", phi=" << print_formula(phi, *uni) << ")";
      report.counterexamples.push_back(os.str());
    };

    if (c_theorems) {
      // (a) box-permutation equivalence
      {
        std::vector<int> g = random_group(rng, n_agents, 2);
        std::vector<int> v1;
        int len = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < len; ++i)
          v1.push_back(g[rng() % g.size()]);
        std::vector<int> v2 = v1;
        std::shuffle(v2.begin(), v2.end(), rng);
        FormulaPtr b1 = box_chain(v1, phi), b2 = box_chain(v2, phi);
        for (int w = 0; w < n; ++w)
          if (eval_world(m, w, b1) != eval_world(m, w, b2)) {
            note("box permutation equivalence", w);
            break;
          }
      }
      // (b) full-group box chain implies any box chain over the group
      {
        std::vector<int> g = random_group(rng, n_agents, 2);
        FormulaPtr lhs = box_chain(g, phi);
        std::vector<int> v;
        int len = 1 + static_cast<int>(rng() % (n_agents + 2));
        for (int i = 0; i < len; ++i)
          v.push_back(g[rng() % g.size()]);
        FormulaPtr rhs = box_chain(v, phi);
        for (int w = 0; w < n; ++w)
          if (eval_world(m, w, lhs) && !eval_world(m, w, rhs)) {
            note("box chain implication", w);
            break;
          }
      }
      // (c) finitary characterization of common knowledge
      {
        std::vector<int> g = random_group(rng, n_agents, 2);
        if (trial == 0 && spec.ext == LogicSpec::Ext::None) g = {0, 1};
        FormulaPtr lhs = box_chain(g, phi);
        FormulaPtr rhs = f_common(g, phi);
        for (int w = 0; w < n; ++w)
          if (eval_world(m, w, lhs) != eval_world(m, w, rhs)) {
            note("box chain <-> common knowledge", w);
            break;
          }
      }
    }
    // (d) diameter bound on group reachability
    if (spec.ext != LogicSpec::Ext::None) {
      std::vector<std::vector<int>> groups;
      if (spec.ext == LogicSpec::Ext::C) {
        groups.push_back(random_group(rng, n_agents, 2));
      } else if (spec.ext == LogicSpec::Ext::Cb) {
        for (int i = 0; i < n_agents; ++i)
          for (int j = i + 1; j < n_agents; ++j) groups.push_back({i, j});
      } else {
        std::vector<int> all(n_agents);
        std::iota(all.begin(), all.end(), 0);
        groups.push_back(all);
      }
      for (const auto& g : groups) {
        // reachability via the union of the group's relations
        std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
        for (int u = 0; u < n; ++u) {
          std::vector<int> stack{u};
          reach[u][u] = 1;
          while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int ag : g)
              for (int y : m.rel[ag][x])
                if (!reach[u][y]) {
                  reach[u][y] = 1;
                  stack.push_back(y);
                }
          }
        }
        Adjacency bounded;
        if (spec.ext == LogicSpec::Ext::C) {
          bounded = compose_relations(m.rel, n, g);
        } else if (spec.ext == LogicSpec::Ext::Cb) {
          std::vector<int> s1, s2;
          for (int t = 0; t < spec.param; ++t) {
            s1.push_back(g[0]);
            s1.push_back(g[1]);
            s2.push_back(g[1]);
            s2.push_back(g[0]);
          }
          Adjacency c1 = compose_relations(m.rel, n, s1);
          Adjacency c2 = compose_relations(m.rel, n, s2);
          bounded.assign(n, {});
          for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
              if (frame_has_edge(c1, u, v) || frame_has_edge(c2, u, v))
                bounded[u].push_back(v);
        } else {
          // wCl: diameter at most n steps over the union relation
          bounded.assign(n, {});
          std::vector<std::vector<char>> cur(n, std::vector<char>(n, 0));
          for (int u = 0; u < n; ++u) cur[u][u] = 1;
          for (int step = 0; step < n_agents; ++step) {
            std::vector<std::vector<char>> next = cur;
            for (int u = 0; u < n; ++u)
              for (int v = 0; v < n; ++v)
                if (cur[u][v])
                  for (int ag : g)
                    for (int x : m.rel[ag][v]) next[u][x] = 1;
            cur = std::move(next);
          }
          for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
              if (cur[u][v]) bounded[u].push_back(v);
        }
        bool bad = false;
        for (int u = 0; u < n && !bad; ++u)
          for (int v = 0; v < n && !bad; ++v)
            if (reach[u][v] && !frame_has_edge(bounded, u, v)) {
              note("diameter bound (group " + seq_to_string(g) + ")", u);
              bad = true;
            }
        if (bad) break;
      }
    }
  }
  return report;
}

}  // namespace epiplan
