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
namespace tt = teamdecomp::testing;

namespace {

void check_against_brute_force(const td::GameTree& g, td::Team t) {
  const td::TeamView v = td::build_team_view(g, t);
  const td::PublicTreeDecomposition dec = td::build_decomposition(v);
  const td::FeasibleSets sets = td::enumerate_feasible(dec, v);
  const auto plans = tt::pure_plans(g, t);
  int64_t total = 0;
  for (int b = 0; b < dec.num_bags(); ++b) {
    CHECK(tt::local_set(sets.sets[b]) == tt::restriction_set(plans, v, dec.bags[b]));
    total += sets.sets[b].count();
  }
  CHECK(sets.total == total);
}

}  // namespace

TEST_CASE("enumerated feasible sets match brute force on small games") {
  check_against_brute_force(tt::paired_infoset_game(), td::Team::kPlus);
  check_against_brute_force(td::make_matching_pennies(), td::Team::kMinus);
  for (uint64_t seed = 100; seed < 110; ++seed) {
    const td::GameTree g = tt::small_random_game(seed);
    check_against_brute_force(g, td::Team::kPlus);
    check_against_brute_force(g, td::Team::kMinus);
  }
}

TEST_CASE("parallel enumeration equals the serial reference") {
  for (const auto& g : {td::make_kuhn(2, 1, 4), tt::small_random_game(3)}) {
    for (td::Team t : {td::Team::kPlus, td::Team::kMinus}) {
      const td::TeamView v = td::build_team_view(g, t);
      const td::PublicTreeDecomposition dec = td::build_decomposition(v);
      const td::FeasibleSets a = td::enumerate_feasible(dec, v);
      const td::FeasibleSets b = td::enumerate_feasible_parallel(dec, v);
      REQUIRE(a.sets.size() == b.sets.size());
      for (size_t k = 0; k < a.sets.size(); ++k) CHECK(a.sets[k].data == b.sets[k].data);
      CHECK(a.total == b.total);
    }
  }
}

TEST_CASE("Kuhn 21K3 feasible-set totals") {
  // Reference Σ|X_C|: 351 for Plus, 25 for Minus.
  const td::GameTree g = td::make_kuhn(2, 1, 3);
  const int64_t expect[] = {351, 25};
  int k = 0;
  for (td::Team t : {td::Team::kPlus, td::Team::kMinus}) {
    const td::TeamView v = td::build_team_view(g, t);
    const td::PublicTreeDecomposition dec = td::build_decomposition(v);
    CHECK(td::enumerate_feasible(dec, v).total == expect[k++]);
  }
}

TEST_CASE("the cap stops enumeration") {
  const td::GameTree g = td::make_kuhn(2, 1, 4);
  const td::TeamView v = td::build_team_view(g, td::Team::kPlus);
  const td::PublicTreeDecomposition dec = td::build_decomposition(v);
  for (bool parallel : {false, true}) {
    try {
      parallel ? td::enumerate_feasible_parallel(dec, v, 100) : td::enumerate_feasible(dec, v, 100);
      FAIL("expected kFeasibleSetExplosion");
    } catch (const td::Error& e) {
      CHECK(e.code() == td::ErrorCode::kFeasibleSetExplosion);
    }
  }
  CHECK_NOTHROW(td::enumerate_feasible(dec, v, 1749));
}

TEST_CASE("reachability bounds") {
  const td::GameTree g = td::make_kuhn(2, 1, 3);
  for (td::Team t : {td::Team::kPlus, td::Team::kMinus}) {
    const td::TeamView v = td::build_team_view(g, t);
    const td::PublicTreeDecomposition dec = td::build_decomposition(v);
    const td::FeasibleSets sets = td::enumerate_feasible(dec, v);
    const td::ReachabilityStats rs = td::reachability_stats(sets, dec, v);
    CHECK(rs.bounds_hold);
    CHECK(rs.sum == sets.total);
    for (int b = 0; b < dec.num_bags(); ++b) {
      CHECK(rs.sizes[b] == sets.sets[b].count());
      CHECK(td::BigInt(rs.sizes[b]) <= rs.bounds[b]);
    }
    // A single-player team has no private external information.
    if (t == td::Team::kMinus) CHECK(rs.reachable_width == 1);
  }
}

TEST_CASE("binomial helpers") {
  CHECK(td::binomial_prefix(5, 2) == 16);
  CHECK(td::binomial_prefix(5, 5) == 32);
  CHECK(td::binomial_prefix(5, 9) == 32);
  CHECK(td::binomial_prefix(0, 0) == 1);
  CHECK(td::public_action_bound(1, 2) == 6);
  CHECK(td::public_action_bound(2, 3) == 9 * 16);
}

TEST_CASE("pure plan restrictions are found in their bags") {
  const td::GameTree g = tt::small_random_game(42);
  const td::TeamView v = td::build_team_view(g, td::Team::kPlus);
  const td::PublicTreeDecomposition dec = td::build_decomposition(v);
  const td::FeasibleSets sets = td::enumerate_feasible(dec, v);
  for (const auto& p : tt::pure_plans(g, td::Team::kPlus)) {
    const auto x = td::pure_plan_vector(v, p);
    CHECK(x[v.root()] == 1);
    for (int b = 0; b < dec.num_bags(); ++b) {
      const int64_t k = sets.sets[b].find(td::restrict_to_bag(dec.bags[b], x));
      REQUIRE(k >= 0);
      CHECK(sets.sets[b].assignment(k) == td::restrict_to_bag(dec.bags[b], x));
    }
  }
}

TEST_CASE("the C- = B- shortcut never fires on benchmark games") {
  td::GameSpec gl;
  gl.family = td::Family::kGoofspiel;
  gl.limited = true;
  for (const auto& g : {td::make_kuhn(2, 1, 3), td::make_kuhn(2, 1, 4), td::make_game(gl),
                        td::make_width_gap_game(3), td::make_matching_pennies()}) {
    for (td::Team t : {td::Team::kPlus, td::Team::kMinus}) {
      const td::TeamView v = td::build_team_view(g, t);
      const td::PublicTreeDecomposition dec = td::build_decomposition(v);
      CHECK(td::enumerate_feasible(dec, v).guard_hits == 0);
    }
  }
}
