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

#include "teamdecomp/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace teamdecomp {

namespace {

using json = nlohmann::ordered_json;

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

json value_json(const Value& v) {
  if (v.mode == ArithmeticMode::kExact) return format_rational(v.exact);
  return v.approx;
}

json plan_json(const RealizationPlan& p) {
  json out = json::object();
  for (size_t c = 0; c < p.values.size(); ++c) {
    const std::string key = std::to_string(c);
    if (p.mode == ArithmeticMode::kExact) {
      out[key] = format_rational(p.exact[c]);
    } else {
      out[key] = p.values[c];
    }
  }
  return out;
}

json stats_object(const TeamStats& s) {
  json j;
  j["team"] = team_name(s.team);
  j["seq_count"] = s.seq_count;
  j["sum_xc"] = s.sum_xc;
  j["ratio"] = s.ratio;
  j["reachable_width"] = s.reachable_width;
  j["treewidth"] = s.treewidth;
  j["max_degree"] = s.max_degree;
  j["num_bags"] = s.num_bags;
  j["num_classes"] = s.num_classes;
  j["decomposition_valid"] = s.decomposition_valid;
  j["bounds_hold"] = s.bounds_hold;
  return j;
}

}  // namespace

int64_t cap_from_env(int64_t fallback) {
  const char* env = std::getenv("TEAMDECOMP_CAP");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (*end != '\0' || v <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("TEAMDECOMP_CAP must be a positive integer, got '") + env + "'");
  }
  return v;
}

std::unique_ptr<TeamPipeline> build_team(const GameTree& game, Team team,
                                         const PipelineOptions& options, bool with_polytope) {
  auto tp = std::make_unique<TeamPipeline>();
  Stopwatch sw;
  tp->view = build_team_view(game, team);
  tp->view_ms = sw.ms();
  sw = Stopwatch();
  tp->dec = build_decomposition(tp->view);
  tp->decomposition_ms = sw.ms();
  sw = Stopwatch();
  tp->sets = std::make_shared<const FeasibleSets>(
      options.parallel ? enumerate_feasible_parallel(tp->dec, tp->view, options.cap)
                       : enumerate_feasible(tp->dec, tp->view, options.cap));
  tp->feasible_ms = sw.ms();
  if (with_polytope) {
    sw = Stopwatch();
    tp->desc = polytope_description(tp->dec, tp->sets, tp->view, terminal_classes(game, tp->view));
    tp->polytope_ms = sw.ms();
  }
  if (options.log) {
    std::fprintf(stderr, "  %s: %d classes, %d bags, sum |X_C| = %lld\n", team_name(team),
                 tp->view.num_classes(), tp->dec.num_bags(),
                 static_cast<long long>(tp->sets->total));
  }
  return tp;
}

TeamStats team_stats(const TeamPipeline& tp) {
  TeamStats s;
  s.team = tp.view.team;
  s.seq_count = tp.view.sequence_count();
  s.sum_xc = tp.sets->total;
  s.ratio = s.seq_count > 0 ? static_cast<double>(s.sum_xc) / s.seq_count : 0.0;
  const ReachabilityStats rs = reachability_stats(*tp.sets, tp.dec, tp.view);
  s.reachable_width = rs.reachable_width;
  s.bounds_hold = rs.bounds_hold;
  const WidthStats ws = width_stats(tp.dec);
  s.treewidth = ws.treewidth;
  s.max_degree = ws.max_degree;
  s.num_bags = tp.dec.num_bags();
  s.num_classes = tp.view.num_classes();
  s.decomposition_valid = verify_decomposition(tp.dec, tp.view);
  s.guard_hits = tp.sets->guard_hits;
  for (int b = 0; b < s.num_bags; ++b) s.per_bag.push_back({b, rs.sizes[b], rs.w[b]});
  return s;
}

SparseLP build_saddle_lp(const GameTree& game, const PipelineOptions& options) {
  const auto plus = build_team(game, Team::kPlus, options);
  const auto minus = build_team(game, Team::kMinus, options);
  const PayoffForm pf = payoff_form(game, plus->view, minus->view);
  return saddle_lp(plus->desc, minus->desc, pf, Team::kPlus);
}

RunReport run_solve(const GameTree& game, const std::string& source,
                    const PipelineOptions& options) {
  RunReport r;
  r.source = source;
  r.nodes = game.num_nodes();
  r.terminals = game.num_terminals();
  r.fingerprint = game_fingerprint(game);
  const auto plus = build_team(game, Team::kPlus, options);
  const auto minus = build_team(game, Team::kMinus, options);
  r.plus = team_stats(*plus);
  r.minus = team_stats(*minus);
  r.times.team_view_ms = plus->view_ms + minus->view_ms;
  r.times.decomposition_ms = plus->decomposition_ms + minus->decomposition_ms;
  r.times.feasible_sets_ms = plus->feasible_ms + minus->feasible_ms;

  Stopwatch sw;
  const PayoffForm pf = payoff_form(game, plus->view, minus->view);
  r.lp_nnz = lp_size(saddle_lp(plus->desc, minus->desc, pf, Team::kPlus));
  r.times.lp_ms = plus->polytope_ms + minus->polytope_ms + sw.ms();

  GameSolveOptions so;
  so.mode = options.mode.value_or(default_mode(r.lp_nnz));
  so.compute_gap = options.compute_gap;
  so.log = options.log;
  sw = Stopwatch();
  r.result = solve_saddle(plus->desc, plus->view, minus->desc, minus->view, pf, so);
  r.times.solve_ms = sw.ms();
  return r;
}

std::string stats_to_json(const TeamStats& s) {
  json j;
  j["schema"] = kReportSchema;
  const json fields = stats_object(s);
  for (const auto& [k, v] : fields.items()) j[k] = v;
  json bags = json::array();
  for (const BagStat& b : s.per_bag) bags.push_back({{"bag", b.bag}, {"size", b.size}, {"w", b.w}});
  j["per_bag"] = std::move(bags);
  return j.dump(2);
}

std::string report_to_json(const RunReport& r, bool timing, bool with_plans) {
  json j;
  j["schema"] = kReportSchema;
  char fp[32];
  std::snprintf(fp, sizeof(fp), "%016llx", static_cast<unsigned long long>(r.fingerprint));
  j["game"] = {{"source", r.source},
               {"nodes", r.nodes},
               {"terminals", r.terminals},
               {"fingerprint", fp}};
  j["teams"] = {{"plus", stats_object(r.plus)}, {"minus", stats_object(r.minus)}};
  j["lp_nnz"] = r.lp_nnz;
  j["mode"] = mode_name(r.result.mode);
  j["value"] = value_json(r.result.value);
  j["value_float"] = r.result.value.approx;
  j["gap"] = value_json(r.result.gap);
  j["iterations"] = r.result.iterations;
  if (timing) {
    j["wall_ms"] = r.result.wall_ms;
    j["stage_ms"] = {{"team_view", r.times.team_view_ms},
                     {"decomposition", r.times.decomposition_ms},
                     {"feasible_sets", r.times.feasible_sets_ms},
                     {"lp", r.times.lp_ms},
                     {"solve", r.times.solve_ms}};
  }
  if (with_plans) {
    j["plan_plus"] = plan_json(r.result.plan_plus);
    j["plan_minus"] = plan_json(r.result.plan_minus);
  }
  return j.dump(2);
}

}  // namespace teamdecomp
