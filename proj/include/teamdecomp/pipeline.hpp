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

#ifndef TEAMDECOMP_PIPELINE_HPP_
#define TEAMDECOMP_PIPELINE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "teamdecomp/decomposition.hpp"
#include "teamdecomp/feasible_sets.hpp"
#include "teamdecomp/game.hpp"
#include "teamdecomp/lp.hpp"
#include "teamdecomp/solver.hpp"
#include "teamdecomp/team_view.hpp"

namespace teamdecomp {

inline constexpr int kReportSchema = 1;

struct PipelineOptions {
  int64_t cap = kDefaultFeasibleCap;
  bool parallel = true;                 // OpenMP feasible-set enumeration
  std::optional<ArithmeticMode> mode;   // unset: default_mode(nnz)
  bool compute_gap = true;
  bool log = false;
};

// Reads TEAMDECOMP_CAP; returns `fallback` when unset. Throws
// kInvalidArgument on a malformed value.
int64_t cap_from_env(int64_t fallback = kDefaultFeasibleCap);

// Everything built for one team. Not movable: the description points into
// the decomposition.
struct TeamPipeline {
  TeamView view;
  PublicTreeDecomposition dec;
  std::shared_ptr<const FeasibleSets> sets;
  PolytopeDescription desc;
  double view_ms = 0;
  double decomposition_ms = 0;
  double feasible_ms = 0;
  double polytope_ms = 0;

  TeamPipeline() = default;
  TeamPipeline(const TeamPipeline&) = delete;
  TeamPipeline& operator=(const TeamPipeline&) = delete;
};

// Runs team view, decomposition and feasible sets; the polytope is built
// only when `with_polytope`. Throws kFeasibleSetExplosion past the cap.
std::unique_ptr<TeamPipeline> build_team(const GameTree& game, Team team,
                                         const PipelineOptions& options,
                                         bool with_polytope = true);

struct BagStat {
  int bag = 0;
  int64_t size = 0;  // |X_C|
  int w = 0;         // reachable width of the bag
};

struct TeamStats {
  Team team = Team::kPlus;
  int seq_count = 0;
  int64_t sum_xc = 0;
  double ratio = 0;
  int reachable_width = 0;
  int treewidth = 0;
  int max_degree = 0;
  int num_bags = 0;
  int num_classes = 0;
  bool decomposition_valid = false;
  bool bounds_hold = false;
  int64_t guard_hits = 0;
  std::vector<BagStat> per_bag;
};

TeamStats team_stats(const TeamPipeline& tp);

struct StageTimes {
  double team_view_ms = 0;
  double decomposition_ms = 0;
  double feasible_sets_ms = 0;
  double lp_ms = 0;
  double solve_ms = 0;
};

struct RunReport {
  std::string source;  // input path, or a generator name
  int nodes = 0;
  int terminals = 0;
  uint64_t fingerprint = 0;
  TeamStats plus;
  TeamStats minus;
  int64_t lp_nnz = 0;
  SolveResult result;
  StageTimes times;
};

RunReport run_solve(const GameTree& game, const std::string& source,
                    const PipelineOptions& options);

// Plus-perspective saddle LP of a game.
SparseLP build_saddle_lp(const GameTree& game, const PipelineOptions& options);

// Machine-readable JSON. Only the stats form lists bags. Wall times are
// omitted when `timing` is false.
std::string stats_to_json(const TeamStats& s);
std::string report_to_json(const RunReport& r, bool timing, bool with_plans);

}  // namespace teamdecomp

#endif  // TEAMDECOMP_PIPELINE_HPP_
