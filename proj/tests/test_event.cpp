#include <doctest.h>

#include "epiplan/bisim.hpp"
#include "epiplan/encodings.hpp"
#include "epiplan/eval.hpp"
#include "epiplan/event.hpp"

using namespace epiplan;

TEST_CASE("product update: s0 x send_ab matches the worked example exactly") {
  EpistemicState s0 = coord_s0();
  auto& uni = *s0.model.uni;
  EpistemicState s1 = product_update(s0, coord_send_ab());
  // three surviving pairs: (w1,e1), (w1,e2), (w2,e2)
  REQUIRE(s1.model.num_worlds() == 3);
  int d = uni.atom("d"), ma = uni.atom("m_a"), mb = uni.atom("m_b");
  // (w1,e1): messenger crossed -> {d, m_b}
  CHECK(s1.model.has_atom(0, d));
  CHECK(!s1.model.has_atom(0, ma));
  CHECK(s1.model.has_atom(0, mb));
  // (w1,e2): captured -> {d}
  CHECK(s1.model.has_atom(1, d));
  CHECK(!s1.model.has_atom(1, ma));
  CHECK(!s1.model.has_atom(1, mb));
  // (w2,e2): no attack planned -> {}
  CHECK(s1.model.val[2] == 0);
  CHECK(s1.designated == std::vector<int>{0});
  // a confuses crossing/capture, b confuses capture with no-attack
  CHECK(s1.model.rel[uni.agent("a")][0] == std::vector<int>{0, 1});
  CHECK(s1.model.rel[uni.agent("b")][1] == std::vector<int>{1, 2});
  CHECK(s1.model.rel[uni.agent("b")][0] == std::vector<int>{0});
  // b learned d, but a does not know that
  CHECK(eval_state(s1, parse_formula("K[b] d", uni)));
  CHECK(!eval_state(s1, parse_formula("K[a] K[b] d", uni)));
}

TEST_CASE("product update: second message extends the chain by one world") {
  EpistemicState s1 = product_update(coord_s0(), coord_send_ab());
  EpistemicState s2 = product_update(s1, coord_send_ba());
  auto& uni = *s2.model.uni;
  REQUIRE(s2.model.num_worlds() == 4);
  CHECK(contract(s2).model.num_worlds() == 4);
  CHECK(eval_state(s2, parse_formula("K[a] K[b] d", uni)));
  CHECK(!eval_state(s2, parse_formula("K[b] K[a] K[b] d", uni)));
  CHECK(!eval_state(s2, parse_formula("C[{a,b}] d", uni)));
}

TEST_CASE("applicability follows designated preconditions") {
  EpistemicState s0 = coord_s0();
  CHECK(applicable(s0, coord_send_ab()));
  // send_ba needs d & m_b at the designated world; m_b is false in s0
  CHECK(!applicable(s0, coord_send_ba()));
  EpistemicState s1 = product_update(s0, coord_send_ab());
  CHECK(applicable(s1, coord_send_ba()));
}

TEST_CASE("postconditions read the pre-update state") {
  // swap-style update: post evaluates both atoms against the old world
  auto uni = std::make_shared<Universe>(std::vector<std::string>{"a"},
                                        std::vector<std::string>{"x", "y"});
  EpistemicModel m = make_model(uni);
  m.add_world("w", 1);  // x true, y false
  m.rel = equivalence_closure(m.rel, 1);
  EpistemicState s{m, {0}};
  EventModel e = make_event_model(uni);
  int ev = e.add_event("swap", f_true());
  e.post[ev] = {{0, f_atom(1)}, {1, f_atom(0)}};
  frame_add_edge(e.rel[0], ev, ev);
  Action a{"swap", std::move(e), {ev}};
  EpistemicState t = product_update(s, a);
  REQUIRE(t.model.num_worlds() == 1);
  CHECK(!t.model.has_atom(0, 0));  // x := old y = false
  CHECK(t.model.has_atom(0, 1));   // y := old x = true
}

TEST_CASE("worlds failing the precondition are dropped") {
  EpistemicState s0 = coord_s0();
  auto uni = s0.model.uni;
  EventModel e = make_event_model(uni);
  int ev = e.add_event("observe_d", parse_formula("d", *uni));
  frame_add_edge(e.rel[0], ev, ev);
  frame_add_edge(e.rel[1], ev, ev);
  Action a{"observe_d", std::move(e), {ev}};
  EpistemicState t = product_update(s0, a);
  REQUIRE(t.model.num_worlds() == 1);  // w2 (no d) does not survive
  CHECK(eval_state(t, parse_formula("C[{a,b}] d", *uni)));
}

TEST_CASE("compose_sequence tracks applicability failures") {
  EpistemicState s0 = coord_s0();
  ComposeResult bad =
      compose_sequence(s0, {coord_send_ba(), coord_send_ab()}, true);
  CHECK(bad.fail_index == 0);
  ComposeResult good =
      compose_sequence(s0, {coord_send_ab(), coord_send_ba()}, true);
  CHECK(good.fail_index == -1);
  CHECK(good.state.model.num_worlds() == 4);
}

TEST_CASE("captured-messenger branch: sending again from silence") {
  // after send_ab the capture world (w1,e2) still satisfies d & m_a = false,
  // so a cannot truthfully re-send; the designated world has m_a false too
  EpistemicState s1 = product_update(coord_s0(), coord_send_ab());
  CHECK(!applicable(s1, coord_send_ab()));
}

TEST_CASE("action validation") {
  Action a = coord_send_ab();
  CHECK(validate_action(a).empty());
  Action bad = a;
  bad.designated = {99};
  CHECK(!validate_action(bad).empty());
}
