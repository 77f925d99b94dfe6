#include <doctest.h>

#include "epiplan/encodings.hpp"
#include "epiplan/eval.hpp"
#include "epiplan/kripke.hpp"
#include "oracles.hpp"

using namespace epiplan;

TEST_CASE("frame edge helpers keep adjacency sorted and deduped") {
  Adjacency adj(3);
  frame_add_edge(adj, 2, 0);
  frame_add_edge(adj, 2, 0);
  frame_add_edge(adj, 2, 1);
  CHECK(adj[2] == std::vector<int>{0, 1});
  CHECK(frame_has_edge(adj, 2, 0));
  CHECK(!frame_has_edge(adj, 0, 2));
}

TEST_CASE("equivalence closure turns components into cliques") {
  Frame f(1, Adjacency(4));
  frame_add_edge(f[0], 0, 1);
  frame_add_edge(f[0], 1, 2);
  Frame c = equivalence_closure(f, 4);
  CHECK(is_equivalence_frame(c, 4));
  // {0,1,2} is one clique, 3 is reflexive-only
  CHECK(c[0][0] == std::vector<int>{0, 1, 2});
  CHECK(c[0][3] == std::vector<int>{3});
  // idempotent
  CHECK(equivalence_closure(c, 4) == c);
}

TEST_CASE("coordinated-attack initial state matches the worked example") {
  EpistemicState s0 = coord_s0();
  auto& uni = *s0.model.uni;
  REQUIRE(s0.model.num_worlds() == 2);
  CHECK(s0.model.world_names[0] == "w1");
  CHECK(s0.model.has_atom(0, uni.atom("d")));
  CHECK(s0.model.has_atom(0, uni.atom("m_a")));
  CHECK(!s0.model.has_atom(1, uni.atom("d")));
  CHECK(s0.designated == std::vector<int>{0});
  CHECK(is_equivalence(s0.model));
  // a distinguishes the worlds, b does not
  CHECK(s0.model.rel[uni.agent("a")][0] == std::vector<int>{0});
  CHECK(s0.model.rel[uni.agent("b")][0] == std::vector<int>{0, 1});

  // eval facts: a knows d, b considers ~d possible, no common knowledge
  CHECK(eval_state(s0, parse_formula("K[a] d", uni)));
  CHECK(eval_state(s0, parse_formula("M[b] ~d", uni)));
  CHECK(!eval_state(s0, parse_formula("K[b] d", uni)));
  CHECK(!eval_state(s0, parse_formula("C[{a,b}] d", uni)));
}

TEST_CASE("eval agrees with the naive common-knowledge oracle") {
  for (int k = 0; k <= 3; ++k) {
    EpistemicState s = coord_chain_state(k);
    auto& uni = *s.model.uni;
    const char* formulas[] = {
        "d", "K[a] d", "K[b] d", "K[a] K[b] d", "K[b] K[a] d",
        "C[{a,b}] d", "C[{a}] d", "M[b] ~d", "C[{a,b}] (d | ~d)",
    };
    for (const char* txt : formulas) {
      FormulaPtr f = parse_formula(txt, uni);
      for (int w = 0; w < s.model.num_worlds(); ++w)
        CHECK_MESSAGE(eval_world(s.model, w, f) ==
                          oracle::eval_naive(s.model, w, f),
                      "k=", k, " w=", w, " formula=", txt);
    }
  }
}

TEST_CASE("state validation catches malformed input") {
  EpistemicModel m = make_model(coord_universe());
  m.add_world("w", 0);
  EpistemicState ok{m, {0}};
  CHECK(validate_state(ok).empty());
  EpistemicState no_des{m, {}};
  CHECK(!validate_state(no_des).empty());
  EpistemicState bad_des{m, {5}};
  CHECK(!validate_state(bad_des).empty());
}
