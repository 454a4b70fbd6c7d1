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

// Shared fixtures and brute-force references for the tests.

#ifndef TEAMDECOMP_TESTS_SUPPORT_TESTING_HPP_
#define TEAMDECOMP_TESTS_SUPPORT_TESTING_HPP_

#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "teamdecomp/decomposition.hpp"
#include "teamdecomp/feasible_sets.hpp"
#include "teamdecomp/game.hpp"
#include "teamdecomp/generators.hpp"
#include "teamdecomp/lp.hpp"
#include "teamdecomp/pipeline.hpp"
#include "teamdecomp/solver.hpp"
#include "teamdecomp/team_view.hpp"

namespace teamdecomp::testing {

// Single-team game: chance root over two player-0 nodes; each picks one of
// two player-1 nodes, which share infosets pairwise across the branches.
GameTree paired_infoset_game();

// Every pure plan of `team` as an action index per game infoset (0 for the
// other team's infosets). Throws kCapExceeded past `cap`.
std::vector<std::vector<int>> pure_plans(const GameTree& game, Team team,
                                         int64_t cap = 10'000);

// Restrictions of the given plans to one bag.
std::set<std::vector<uint8_t>> restriction_set(
    const std::vector<std::vector<int>>& plans, const TeamView& view,
    const Bag& bag);

std::set<std::vector<uint8_t>> local_set(const LocalFeasibleSet& xs);

// Random game within the oracle's reach: ≤ 200 nodes, ≤ 2 players per
// team, ≤ 10^4 pure plans per team, at least one infoset per team.
GameTree small_random_game(uint64_t seed);

// 3-CNF over ≤ max_vars variables with ≤ max_clauses clauses whose
// satisfiability is `want_sat`.
Cnf random_3cnf(std::mt19937_64& rng, int max_vars, int max_clauses,
                bool want_sat);

// Both teams built and the saddle LP ready.
struct Built {
  std::unique_ptr<TeamPipeline> plus;
  std::unique_ptr<TeamPipeline> minus;
  PayoffForm payoff;
};
Built build_both(const GameTree& game);

SolveResult solve_exact(const Built& b, bool gap = true);

// Per-bag marginals of a mixture of pure plans (class vectors).
std::vector<BagDistribution> mixture_marginals(
    const PublicTreeDecomposition& dec,
    const std::vector<std::vector<uint8_t>>& plans,
    const std::vector<double>& weights);

// Upper-tail probability of a chi-square statistic.
double chi_square_p(double statistic, int dof);

}  // namespace teamdecomp::testing

#endif  // TEAMDECOMP_TESTS_SUPPORT_TESTING_HPP_
