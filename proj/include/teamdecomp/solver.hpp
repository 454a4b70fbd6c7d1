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

#ifndef TEAMDECOMP_SOLVER_HPP_
#define TEAMDECOMP_SOLVER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "teamdecomp/common.hpp"
#include "teamdecomp/game.hpp"
#include "teamdecomp/lp.hpp"
#include "teamdecomp/simplex.hpp"
#include "teamdecomp/team_view.hpp"

namespace teamdecomp {

inline constexpr int64_t kExactModeNnzLimit = 100'000;
inline constexpr double kLambdaZero = 1e-12;
inline constexpr double kLambdaTolerance = 1e-7;
inline constexpr int64_t kDefaultOracleCap = 10'000;

ArithmeticMode default_mode(int64_t lp_nnz);

// Reach value per team-view class.
struct RealizationPlan {
  Team team = Team::kPlus;
  ArithmeticMode mode = ArithmeticMode::kFloat;
  std::vector<double> values;
  std::vector<Rational> exact;  // exact mode only
  double max_clamp = 0;         // largest move into [0, 1] (float mode)

  double at(int c) const { return values[c]; }
};

// Checks x(root) = 1, pass-through and flow conservation, and [0, 1].
// Zero tolerance compares exactly when the plan is exact.
bool check_plan(const RealizationPlan& plan, const TeamView& view,
                double tol, std::string* why = nullptr);

struct SolveResult {
  ArithmeticMode mode = ArithmeticMode::kExact;
  Value value;
  RealizationPlan plan_plus;
  RealizationPlan plan_minus;
  Value gap;
  int64_t iterations = 0;
  double wall_ms = 0;
  int64_t lp_nnz = 0;
};

// Raw LP solve.
LpSolution solve(const SparseLP& lp, ArithmeticMode mode,
                 SimplexOptions options = {});

// Basis placing one pure plan's restrictions in the own polytope block:
// the matching λ of each bag, every link column and the logicals of the
// marginal rows are basic. For a saddle LP with `opponent` given, the
// duals of the opponent's link and normalization rows are made basic at a
// feasible point (the opponent's per-bag best response to that plan), so
// the start is primal feasible.
std::vector<BasisStatus> crash_basis(const SparseLP& lp,
                                     const PolytopeDescription& own,
                                     const TeamView& own_view,
                                     const PolytopeDescription* opponent = nullptr);

// Plan from the description's columns (λ, then links). Float values below
// kLambdaZero count as zero; rows must hold within kLambdaTolerance.
// Throws kInfeasibleLambda.
RealizationPlan extract_plan(const PolytopeDescription& desc,
                             const std::vector<double>& columns);
RealizationPlan extract_plan(const PolytopeDescription& desc,
                             const std::vector<Rational>& columns);

// Value the opponent of `fixed.team` secures against it: min over Minus of
// u(x, ·) when `fixed` is Plus's, max over Plus of u(·, y) otherwise.
Value best_response_value(const PolytopeDescription& opponent,
                          const TeamView& opponent_view,
                          const PayoffForm& payoff,
                          const RealizationPlan& fixed);

// max_x' u(x', y) - min_y' u(x, y'). Exact when both plans are exact.
Value equilibrium_gap(const RealizationPlan& x, const RealizationPlan& y,
                      const PolytopeDescription& plus,
                      const TeamView& plus_view,
                      const PolytopeDescription& minus,
                      const TeamView& minus_view, const PayoffForm& payoff);

struct GameSolveOptions {
  ArithmeticMode mode = ArithmeticMode::kExact;
  bool compute_gap = true;
  bool log = false;
};

// Plus-perspective saddle LP, crash-started; Minus's plan comes from the
// duals of the coupling rows.
SolveResult solve_saddle(const PolytopeDescription& plus,
                         const TeamView& plus_view,
                         const PolytopeDescription& minus,
                         const TeamView& minus_view, const PayoffForm& payoff,
                         const GameSolveOptions& options);

struct OracleResult {
  Rational value;
  int64_t plus_pure = 0;   // Π_I |A(I)| for Plus
  int64_t minus_pure = 0;
  int64_t plus_distinct = 0;  // distinct reach patterns (matrix rows)
  int64_t minus_distinct = 0;
};

// Enumerates every pure plan of both teams, merges plans with the same
// terminal reach, and solves the matrix game exactly. Throws kCapExceeded
// when a team has more than `cap` pure plans.
OracleResult brute_force_value(const GameTree& game,
                               int64_t cap = kDefaultOracleCap);

}  // namespace teamdecomp

#endif  // TEAMDECOMP_SOLVER_HPP_
