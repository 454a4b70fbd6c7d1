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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "testing.hpp"

namespace td = teamdecomp;
namespace tt = teamdecomp::testing;
using td::Rational;

namespace {

constexpr double kStageLimitMs = 30'000;      // per pipeline stage, criterion 1
constexpr double kValueTolerance = 5e-4;      // four-decimal reference values, criterion 2
constexpr double kSolveLimitMs = 15 * 60'000; // per game, criterion 2
constexpr double kWidthGapLimitMs = 1'000;    // criterion 3
constexpr double kSatLimitMs = 60'000;        // criterion 4
constexpr double kChiSquareAlpha = 1e-3;      // criterion 9
constexpr int kSamplerDraws = 10'000;
constexpr int kRandomGames = 20;

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void fail(const std::string& why) {
    pass = false;
    note << " [" << why << "]";
  }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

td::GameSpec spec_of(td::Family f, int m, int n) {
  td::GameSpec s;
  s.family = f;
  s.m = m;
  s.n = n;
  return s;
}

td::GameSpec kuhn(int r) {
  td::GameSpec s = spec_of(td::Family::kKuhn, 2, 1);
  s.ranks = r;
  return s;
}

td::GameSpec goofspiel(bool limited) {
  td::GameSpec s = spec_of(td::Family::kGoofspiel, 2, 1);
  s.ranks = 3;
  s.limited = limited;
  return s;
}

td::GameSpec liars_dice(int f) {
  td::GameSpec s = spec_of(td::Family::kLiarsDice, 2, 1);
  s.faces = f;
  return s;
}

td::GameSpec leduc(int m, int n, int b, int r, int c, bool no_raise) {
  td::GameSpec s = spec_of(td::Family::kLeduc, m, n);
  s.max_bets = b;
  s.ranks = r;
  s.suits = c;
  s.no_raise = no_raise;
  return s;
}

td::GameSpec width_gap(int k) {
  td::GameSpec s = spec_of(td::Family::kWidthGap, 2, 0);
  s.k = k;
  return s;
}

std::vector<td::GameSpec> benchmarks() {
  std::vector<td::GameSpec> out{kuhn(3), kuhn(4), kuhn(6),
                                leduc(2, 1, 1, 3, 3, false), leduc(2, 1, 2, 2, 3, false),
                                leduc(3, 1, 1, 3, 2, true),
                                goofspiel(true), goofspiel(false), liars_dice(3),
                                spec_of(td::Family::kMatchingPennies, 1, 1)};
  for (int k = 1; k <= 6; ++k) out.push_back(width_gap(k));
  return out;
}

td::PipelineOptions serial_options() {
  td::PipelineOptions o;
  o.parallel = false;
  return o;
}

// 1. Kuhn #Seq and Σ|X_C|.
Outcome structural_stats() {
  Outcome o;
  struct Row {
    int ranks;
    int plus_seq, minus_seq;
    int64_t plus_sum, minus_sum;
  };
  const Row rows[] = {{3, 91, 25, 351, 25}, {4, 177, 33, 1749, 33}, {6, 433, 49, 52669, 49}};
  for (const Row& r : rows) {
    const td::GameTree g = td::make_game(kuhn(r.ranks));
    for (td::Team t : {td::Team::kPlus, td::Team::kMinus}) {
      const auto tp = td::build_team(g, t, td::PipelineOptions{});
      const td::TeamStats s = td::team_stats(*tp);
      const bool plus = t == td::Team::kPlus;
      const int seq = plus ? r.plus_seq : r.minus_seq;
      const int64_t sum = plus ? r.plus_sum : r.minus_sum;
      o.note << " 21K" << r.ranks << td::team_name(t)[0] << " " << s.seq_count << "/" << s.sum_xc;
      if (s.seq_count != seq || s.sum_xc != sum) {
        o.fail("21K" + std::to_string(r.ranks) + " " + td::team_name(t) + " expected " +
               std::to_string(seq) + "/" + std::to_string(sum));
      }
      for (double ms : {tp->view_ms, tp->decomposition_ms, tp->feasible_ms, tp->polytope_ms}) {
        if (ms > kStageLimitMs) o.fail("stage took " + std::to_string(ms) + " ms");
      }
    }
  }
  return o;
}

// 2. Game values.
Outcome game_values() {
  Outcome o;
  struct Row {
    td::GameSpec spec;
    double table;
    td::ArithmeticMode mode;
  };
  const std::vector<Row> rows{{kuhn(3), 0.0, td::ArithmeticMode::kExact},
                              {kuhn(4), -0.0417, td::ArithmeticMode::kExact},
                              {kuhn(6), -0.0236, td::ArithmeticMode::kFloat},
                              {goofspiel(true), 0.2524, td::ArithmeticMode::kFloat},
                              {goofspiel(false), 0.2534, td::ArithmeticMode::kFloat},
                              {liars_dice(3), 0.2840, td::ArithmeticMode::kFloat}};
  for (const Row& row : rows) {
    const auto t0 = std::chrono::steady_clock::now();
    td::PipelineOptions opt;
    opt.mode = row.mode;
    const td::RunReport r = td::run_solve(td::make_game(row.spec), row.spec.name(), opt);
    const double ms = ms_since(t0);
    const std::string name = row.spec.name();
    char buf[160];
    std::snprintf(buf, sizeof(buf), " %s=%s(%.5f, gap %.1e, %.0fs)", name.c_str(),
                  td::value_to_string(r.result.value).c_str(), r.result.value.approx,
                  r.result.gap.approx, ms / 1000);
    o.note << buf;
    if (std::abs(r.result.value.approx - row.table) > kValueTolerance) o.fail(name + " value");
    if (row.mode == td::ArithmeticMode::kExact && r.result.gap.exact != 0) o.fail(name + " gap");
    if (ms > kSolveLimitMs) o.fail(name + " over time");
  }
  return o;
}

// 3. Width-gap family.
Outcome width_gap_family() {
  Outcome o;
  for (int k = 1; k <= 6; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const td::GameTree g = td::make_width_gap_game(k);
    const auto tp = td::build_team(g, td::Team::kPlus, serial_options(), false);
    const td::WidthStats ws = td::width_stats(tp->dec);
    const td::ReachabilityStats rs = td::reachability_stats(*tp->sets, tp->dec, tp->view);
    const double ms = ms_since(t0);
    int p2_bags = 0;
    bool widths_ok = true;
    for (int b = 0; b < tp->dec.num_bags(); ++b) {
      bool p2 = false;
      for (int c : tp->dec.bags[b].c_minus) {
        p2 |= tp->view.is_decision(c) && g.infoset(tp->view.classes[c].infoset).player == 1;
      }
      if (!p2) continue;
      ++p2_bags;
      widths_ok &= rs.w[b] == 2;
    }
    o.note << " k=" << k << ":tw" << ws.treewidth;
    if (ws.treewidth != 6 * k - 1) o.fail("k=" + std::to_string(k) + " treewidth");
    if (p2_bags == 0 || !widths_ok) o.fail("k=" + std::to_string(k) + " reachable width");
    if (ms > kWidthGapLimitMs) o.fail("k=" + std::to_string(k) + " over time");
  }
  return o;
}

// 4. SAT games: value 1 iff satisfiable, separated by 1 - 1/(2m).
Outcome sat_classification() {
  Outcome o;
  std::mt19937_64 rng(2026);
  const auto t0 = std::chrono::steady_clock::now();
  int ok = 0;
  for (int i = 0; i < 20; ++i) {
    const bool want = i < 10;
    const td::Cnf cnf = tt::random_3cnf(rng, 4, 5, want);
    const Rational m = static_cast<long>(cnf.clauses.size());
    const tt::Built b = tt::build_both(td::make_sat_game(cnf));
    const Rational v = tt::solve_exact(b, false).value.exact;
    const bool above = v >= 1 - 1 / (2 * m);
    const bool bound = want ? v == 1 : v <= 1 - 1 / m;
    if (above == cnf.satisfiable() && bound) {
      ++ok;
    } else {
      o.fail("instance " + std::to_string(i) + " value " + td::format_rational(v));
    }
  }
  const double ms = ms_since(t0);
  o.note << " " << ok << "/20 classified in " << static_cast<int>(ms) << " ms";
  if (ms > kSatLimitMs) o.fail("over time");
  return o;
}

// 5. Pipeline value equals the brute-force oracle.
Outcome oracle_equivalence() {
  Outcome o;
  int ok = 0;
  for (int s = 1; s <= kRandomGames; ++s) {
    const td::GameTree g = tt::small_random_game(s);
    const Rational lp = tt::solve_exact(tt::build_both(g), false).value.exact;
    const Rational oracle = td::brute_force_value(g).value;
    if (lp == oracle) {
      ++ok;
    } else {
      o.fail("seed " + std::to_string(s) + ": " + td::format_rational(lp) + " vs " +
             td::format_rational(oracle));
    }
  }
  o.note << " " << ok << "/" << kRandomGames << " exact matches";
  return o;
}

// 6. Enumerated feasible sets equal restrictions of all pure plans.
Outcome feasible_set_equivalence() {
  Outcome o;
  int64_t bags = 0;
  for (int s = 1; s <= kRandomGames; ++s) {
    const td::GameTree g = tt::small_random_game(s);
    for (td::Team t : {td::Team::kPlus, td::Team::kMinus}) {
      const auto tp = td::build_team(g, t, td::PipelineOptions{}, false);
      const auto plans = tt::pure_plans(g, t);
      for (int b = 0; b < tp->dec.num_bags(); ++b, ++bags) {
        if (tt::local_set(tp->sets->sets[b]) != tt::restriction_set(plans, tp->view, tp->dec.bags[b])) {
          o.fail("seed " + std::to_string(s) + " " + td::team_name(t) + " bag " + std::to_string(b));
        }
      }
    }
  }
  o.note << " " << bags << " bags compared";
  return o;
}

bool infosets_in_single_bag(const td::PublicTreeDecomposition& dec, const td::TeamView& v) {
  for (const auto& classes : v.infoset_classes) {
    for (int c : classes) {
      if (dec.minus_bag[c] < 0 || dec.minus_bag[c] != dec.minus_bag[classes.front()]) return false;
    }
  }
  return true;
}

// 7. Decomposition validity.
Outcome decomposition_validity() {
  Outcome o;
  int checked = 0;
  auto check = [&](const td::GameTree& g, const std::string& name) {
    for (td::Team t : {td::Team::kPlus, td::Team::kMinus}) {
      const td::TeamView v = td::build_team_view(g, t);
      const td::PublicTreeDecomposition dec = td::build_decomposition(v);
      std::string why;
      if (!td::verify_decomposition(dec, v, &why)) o.fail(name + " " + td::team_name(t) + ": " + why);
      if (!infosets_in_single_bag(dec, v)) o.fail(name + " " + td::team_name(t) + " split infoset");
      ++checked;
    }
  };
  for (const auto& s : benchmarks()) check(td::make_game(s), s.name());
  for (int s = 1; s <= kRandomGames; ++s) check(tt::small_random_game(s), "random" + std::to_string(s));
  o.note << " " << checked << " team views";
  return o;
}

// 8. |X_C| bounds and reachable width 1 under common external information.
Outcome bound_audits() {
  Outcome o;
  for (const auto& s : benchmarks()) {
    const td::GameTree g = td::make_game(s);
    for (td::Team t : {td::Team::kPlus, td::Team::kMinus}) {
      const auto tp = td::build_team(g, t, td::PipelineOptions{}, false);
      const td::ReachabilityStats rs = td::reachability_stats(*tp->sets, tp->dec, tp->view);
      const std::string name = s.name() + " " + td::team_name(t);
      if (!rs.bounds_hold) o.fail(name + " bound");
      const bool common = s.family == td::Family::kGoofspiel || g.num_players(t) <= 1;
      if (common && rs.reachable_width != 1) {
        o.fail(name + " reachable width " + std::to_string(rs.reachable_width));
      }
      o.note << " " << s.name() << td::team_name(t)[0] << ":w" << rs.reachable_width;
    }
  }
  return o;
}

// 9. Junction-tree sampling reproduces bag marginals.
Outcome joint_sampling() {
  Outcome o;
  std::vector<td::GameTree> games{tt::paired_infoset_game()};
  for (uint64_t s = 101; games.size() < 5; ++s) {
    td::GameTree g = tt::small_random_game(s);
    if (tt::pure_plans(g, td::Team::kPlus).size() >= 3) games.push_back(std::move(g));
  }
  double min_p = 1.0;
  for (size_t i = 0; i < games.size(); ++i) {
    const td::GameTree& g = games[i];
    const auto tp = td::build_team(g, td::Team::kPlus, serial_options(), false);
    const auto plans = tt::pure_plans(g, td::Team::kPlus);
    const std::vector<std::vector<uint8_t>> mix{td::pure_plan_vector(tp->view, plans.front()),
                                                td::pure_plan_vector(tp->view, plans[plans.size() / 2]),
                                                td::pure_plan_vector(tp->view, plans.back())};
    const auto dists = tt::mixture_marginals(tp->dec, mix, {0.5, 0.3, 0.2});
    td::JointSampler sampler = td::sample_joint(tp->dec, tp->view.num_classes(), dists, 1000 + i);
    const int nb = tp->dec.num_bags();
    std::vector<std::map<std::vector<uint8_t>, int>> seen(nb);
    for (int k = 0; k < kSamplerDraws; ++k) {
      const td::JointDraw d = sampler.draw();
      for (int b = 0; b < nb; ++b) ++seen[b][td::restrict_to_bag(tp->dec.bags[b], d.x)];
    }
    for (int b = 0; b < nb; ++b) {
      double stat = 0;
      int covered = 0;
      for (size_t k = 0; k < dists[b].support.size(); ++k) {
        const double expect = kSamplerDraws * dists[b].probs[k];
        const double got = seen[b][dists[b].support[k]];
        covered += static_cast<int>(got);
        stat += (got - expect) * (got - expect) / expect;
      }
      if (covered != kSamplerDraws) o.fail("game " + std::to_string(i) + " drew outside the support");
      const double p = tt::chi_square_p(stat, static_cast<int>(dists[b].support.size()) - 1);
      min_p = std::min(min_p, p);
      if (p <= kChiSquareAlpha) o.fail("game " + std::to_string(i) + " bag " + std::to_string(b));
    }
  }
  o.note << " min p = " << min_p;
  return o;
}

// 10. LP size within 0.5x-2x of the reference sizes.
Outcome lp_sizes() {
  Outcome o;
  const struct {
    int ranks;
    int64_t lo, hi;
  } rows[] = {{3, 1193, 4772}, {4, 9405, 37620}};
  for (const auto& r : rows) {
    const int64_t nnz = td::lp_size(td::build_saddle_lp(td::make_game(kuhn(r.ranks)), td::PipelineOptions{}));
    o.note << " 21K" << r.ranks << " nnz " << nnz;
    if (nnz < r.lo || nnz > r.hi) o.fail("21K" + std::to_string(r.ranks) + " out of range");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Kuhn structural stats", structural_stats},
      {"game values", game_values},
      {"width-gap family", width_gap_family},
      {"SAT classification", sat_classification},
      {"oracle equivalence", oracle_equivalence},
      {"feasible-set equivalence", feasible_set_equivalence},
      {"decomposition validity", decomposition_validity},
      {"bound audits", bound_audits},
      {"junction-tree sampling", joint_sampling},
      {"LP size", lp_sizes}};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %s (%.1fs):%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                ms_since(t0) / 1000, o.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
