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

// Randomized properties across the whole pipeline.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "testing.hpp"

#include <deque>
#include <map>
#include <random>

namespace td = teamdecomp;
namespace tt = teamdecomp::testing;
using td::Rational;

namespace {

// Keeps only the first action at every decision node.
td::GameTree singleton_strategies(const td::GameTree& g) {
  std::vector<td::Node> out;
  std::map<int, int> infoset_id;
  std::deque<std::pair<int, int>> queue{{0, -1}};
  while (!queue.empty()) {
    const auto [h, parent] = queue.front();
    queue.pop_front();
    td::Node n = g.node(h);
    n.parent = parent;
    n.children.clear();
    const int id = static_cast<int>(out.size());
    if (n.kind == td::NodeKind::kDecision) {
      n.infoset = infoset_id.try_emplace(n.infoset, static_cast<int>(infoset_id.size())).first->second;
      queue.emplace_back(g.node(h).children[0], id);
    } else {
      for (int c : g.node(h).children) queue.emplace_back(c, id);
    }
    out.push_back(std::move(n));
  }
  if (!out.empty()) out[0].action.clear();
  return td::GameTree::from_nodes(std::move(out));
}

Rational expected_payoff(const td::GameTree& g) {
  const auto p = g.chance_reach();
  Rational s = 0;
  for (int h = 0; h < g.num_nodes(); ++h) {
    if (g.node(h).kind == td::NodeKind::kTerminal) s += p[h] * g.node(h).payoff;
  }
  return s;
}

}  // namespace

TEST_CASE("pipeline value equals the brute-force oracle") {
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    const td::GameTree g = tt::small_random_game(seed);
    const tt::Built b = tt::build_both(g);
    const td::SolveResult r = tt::solve_exact(b);
    CAPTURE(seed);
    CHECK(r.value.exact == td::brute_force_value(g).value);
    CHECK(r.gap.exact == 0);
  }
}

TEST_CASE("swapping perspectives negates the value exactly") {
  for (uint64_t seed = 30; seed < 36; ++seed) {
    const tt::Built b = tt::build_both(tt::small_random_game(seed));
    const td::SparseLP plus = td::saddle_lp(b.plus->desc, b.minus->desc, b.payoff, td::Team::kPlus);
    const td::SparseLP minus = td::saddle_lp(b.plus->desc, b.minus->desc, b.payoff, td::Team::kMinus);
    const td::LpSolution sp = td::solve(plus, td::ArithmeticMode::kExact);
    const td::LpSolution sm = td::solve(minus, td::ArithmeticMode::kExact);
    CAPTURE(seed);
    CHECK(sp.objective.exact == -sm.objective.exact);
  }
}

TEST_CASE("polytope optimum over random objectives is a pure-plan optimum") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> cost(-5, 5);
  for (uint64_t seed = 50; seed < 56; ++seed) {
    const td::GameTree g = tt::small_random_game(seed);
    const tt::Built b = tt::build_both(g);
    for (const td::TeamPipeline* tp : {b.plus.get(), b.minus.get()}) {
      const auto plans = tt::pure_plans(g, tp->view.team);
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<std::pair<int, Rational>> costs;
        for (int c : tp->desc.linked) costs.emplace_back(c, Rational(cost(rng)));
        const td::LpSolution s = td::solve(td::polytope_lp(tp->desc, costs), td::ArithmeticMode::kExact);
        // Soundness: the optimum projects to a valid realization plan.
        const td::RealizationPlan plan = td::extract_plan(tp->desc, s.x_exact);
        std::string why;
        CHECK_MESSAGE(td::check_plan(plan, tp->view, 0, &why), why);
        // Completeness: no pure plan does better, and some pure plan matches.
        Rational best = -1000000;
        for (const auto& p : plans) {
          const auto x = td::pure_plan_vector(tp->view, p);
          Rational v = 0;
          for (const auto& [c, w] : costs) v += w * x[c];
          if (v > best) best = v;
        }
        CAPTURE(seed);
        CHECK(s.objective.exact == best);
      }
    }
  }
}

TEST_CASE("payoff form agrees with a direct walk over pure profiles") {
  std::mt19937_64 rng(3);
  for (uint64_t seed = 60; seed < 64; ++seed) {
    const td::GameTree g = tt::small_random_game(seed);
    const tt::Built b = tt::build_both(g);
    const auto pp = tt::pure_plans(g, td::Team::kPlus);
    const auto mp = tt::pure_plans(g, td::Team::kMinus);
    const auto reach = g.chance_reach();
    for (int trial = 0; trial < 10; ++trial) {
      const auto& p = pp[std::uniform_int_distribution<size_t>(0, pp.size() - 1)(rng)];
      const auto& q = mp[std::uniform_int_distribution<size_t>(0, mp.size() - 1)(rng)];
      std::vector<int> joint(g.num_infosets());
      for (int i = 0; i < g.num_infosets(); ++i) {
        joint[i] = g.infoset(i).team == td::Team::kPlus ? p[i] : q[i];
      }
      Rational direct = 0;
      for (int h = 0; h < g.num_nodes(); ++h) {
        if (g.node(h).kind != td::NodeKind::kTerminal) continue;
        bool reached = true;
        for (int c = h; g.node(c).parent >= 0 && reached; c = g.node(c).parent) {
          const td::Node& par = g.node(g.node(c).parent);
          if (par.kind == td::NodeKind::kDecision) reached = joint[par.infoset] == g.child_index(c);
        }
        if (reached) direct += reach[h] * g.node(h).payoff;
      }
      const auto x = td::pure_plan_vector(b.plus->view, p);
      const auto y = td::pure_plan_vector(b.minus->view, q);
      Rational bilinear = 0;
      for (const auto& t : b.payoff.triples) bilinear += t.coef * x[t.plus_class] * y[t.minus_class];
      CHECK(bilinear == direct);
    }
  }
}

TEST_CASE("singleton strategies give the expected payoff") {
  for (uint64_t seed = 70; seed < 75; ++seed) {
    const td::GameTree g = singleton_strategies(tt::small_random_game(seed));
    const tt::Built b = tt::build_both(g);
    CAPTURE(seed);
    CHECK(tt::solve_exact(b).value.exact == expected_payoff(g));
  }
}

TEST_CASE("exact equilibrium plans pass the exact plan check") {
  for (uint64_t seed = 80; seed < 84; ++seed) {
    const tt::Built b = tt::build_both(tt::small_random_game(seed));
    const td::SolveResult r = tt::solve_exact(b, false);
    CHECK(td::check_plan(r.plan_plus, b.plus->view, 0));
    CHECK(td::check_plan(r.plan_minus, b.minus->view, 0));
  }
}
