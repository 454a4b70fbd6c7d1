// Copyright 2026 The teamdecomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "testing.hpp"

namespace td = teamdecomp;
using td::Rational;

namespace {

bool has_kind(const td::ValidationReport& r, const std::string& kind) {
  for (const auto& v : r.violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("matching pennies is a valid two-team game") {
  const td::GameTree g = td::make_matching_pennies();
  CHECK(td::validate(g).ok());
  CHECK(g.num_terminals() == 4);
  CHECK(g.num_players(td::Team::kPlus) == 1);
  CHECK(g.num_players(td::Team::kMinus) == 1);
  Rational mass = 0;
  const auto reach = g.chance_reach();
  for (int h = 0; h < g.num_nodes(); ++h) {
    if (g.node(h).kind == td::NodeKind::kTerminal) mass += reach[h];
  }
  // Minus cannot see Plus's move, so every terminal keeps chance reach 1.
  CHECK(mass == 4);
}

TEST_CASE("rational parsing round-trips in lowest terms") {
  CHECK(td::format_rational(td::parse_rational("-6/4")) == "-3/2");
  CHECK(td::format_rational(td::parse_rational("7")) == "7/1");
  CHECK_THROWS_AS(td::parse_rational("1/0"), td::Error);
  CHECK_THROWS_AS(td::parse_rational("x"), td::Error);
}

TEST_CASE("chance probabilities must sum to one") {
  std::vector<td::Node> t(3);
  t[0].kind = td::NodeKind::kChance;
  t[0].probs = {Rational(1, 3), Rational(1, 3)};
  for (int k = 1; k <= 2; ++k) {
    t[k].parent = 0;
    t[k].action = k == 1 ? "a" : "b";
    t[k].kind = td::NodeKind::kTerminal;
  }
  const td::ValidationReport r = td::validate(td::GameTree::from_nodes(t));
  CHECK_FALSE(r.ok());
  CHECK(has_kind(r, "chance"));
}

TEST_CASE("infosets must be thin") {
  // Root (Plus) -> {Minus decision, chance -> Minus decision} with both Minus
  // nodes in one infoset at different depths.
  std::vector<td::Node> t(8);
  t[0].kind = td::NodeKind::kDecision;
  t[0].team = td::Team::kPlus;
  t[0].player = 0;
  t[0].infoset = 0;
  t[1].parent = 0;
  t[1].action = "l";
  t[1].kind = td::NodeKind::kDecision;
  t[1].team = td::Team::kMinus;
  t[1].player = 0;
  t[1].infoset = 1;
  t[2].parent = 0;
  t[2].action = "r";
  t[2].kind = td::NodeKind::kChance;
  t[2].probs = {Rational(1)};
  t[3].parent = 1;
  t[3].action = "u";
  t[4].parent = 1;
  t[4].action = "d";
  t[5].parent = 2;
  t[5].action = "c";
  t[5].kind = td::NodeKind::kDecision;
  t[5].team = td::Team::kMinus;
  t[5].player = 0;
  t[5].infoset = 1;
  for (int k = 6; k <= 7; ++k) {
    t[k].parent = 5;
    t[k].action = k == 6 ? "u" : "d";
  }
  const td::ValidationReport r = td::validate(td::GameTree::from_nodes(t));
  CHECK(has_kind(r, "thin-infoset"));
}

TEST_CASE("perfect recall is per player") {
  // Plus player 0 acts twice; the second infoset merges both histories.
  std::vector<td::Node> t(7);
  t[0].kind = td::NodeKind::kDecision;
  t[0].team = td::Team::kPlus;
  t[0].player = 0;
  t[0].infoset = 0;
  for (int k = 1; k <= 2; ++k) {
    t[k].parent = 0;
    t[k].action = k == 1 ? "l" : "r";
    t[k].kind = td::NodeKind::kDecision;
    t[k].team = td::Team::kPlus;
    t[k].player = 0;
    t[k].infoset = 1;
  }
  for (int k = 3; k <= 6; ++k) {
    t[k].parent = k <= 4 ? 1 : 2;
    t[k].action = k % 2 ? "u" : "d";
  }
  td::GameTree forgetful = td::GameTree::from_nodes(t);
  CHECK(has_kind(td::validate(forgetful), "perfect-recall"));
  // The same tree is fine when the second mover is a teammate.
  for (int k = 1; k <= 2; ++k) t[k].player = 1;
  CHECK(td::validate(td::GameTree::from_nodes(t)).ok());
}

TEST_CASE("team sequences list team actions above a node") {
  const td::GameTree g = td::make_kuhn(2, 1, 3);
  for (int h = 0; h < g.num_nodes(); ++h) {
    const td::Sequence s = td::team_sequence(g, td::Team::kPlus, h);
    int count = 0;
    for (int x = h; g.node(x).parent >= 0; x = g.node(x).parent) {
      count += g.is_team_decision(g.node(x).parent, td::Team::kPlus);
    }
    CHECK(static_cast<int>(s.size()) == count);
  }
  CHECK_THROWS_AS(td::team_sequence(g, td::Team::kPlus, g.num_nodes()), td::Error);
}

TEST_CASE("EFG-JSON round trip preserves the fingerprint") {
  for (const td::GameTree& g :
       {td::make_matching_pennies(), td::make_kuhn(2, 1, 3), td::testing::paired_infoset_game()}) {
    const td::GameTree back = td::efg_from_json(td::efg_to_json(g));
    CHECK(back.num_nodes() == g.num_nodes());
    CHECK(td::game_fingerprint(back) == td::game_fingerprint(g));
    CHECK(td::efg_to_json(back) == td::efg_to_json(g));
  }
}

TEST_CASE("EFG-JSON parse errors are reported") {
  CHECK_THROWS_AS(td::efg_from_json("{"), td::Error);
  CHECK_THROWS_AS(td::efg_from_json("{\"nodes\": []}"), td::Error);
  try {
    td::efg_from_json("{\"nodes\": [{\"parent\": null, \"kind\": \"terminal\"}]}");
    FAIL("expected a parse error");
  } catch (const td::Error& e) {
    CHECK(e.code() == td::ErrorCode::kParse);
  }
}
