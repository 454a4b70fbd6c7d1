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

#include <cmath>

namespace td = teamdecomp;
namespace tt = teamdecomp::testing;
using td::Rational;

namespace {

// λ columns of a mixture of pure plans, weights summing to one.
std::vector<double> mixture_columns(const td::TeamPipeline& tp,
                                    const std::vector<std::vector<uint8_t>>& xs,
                                    const std::vector<double>& w) {
  const td::PolytopeDescription& d = tp.desc;
  std::vector<double> z(d.num_cols(), 0.0);
  for (size_t i = 0; i < xs.size(); ++i) {
    for (int b = 0; b < tp.dec.num_bags(); ++b) {
      const int64_t k = tp.sets->sets[b].find(td::restrict_to_bag(tp.dec.bags[b], xs[i]));
      REQUIRE(k >= 0);
      z[d.bag_offset[b] + k] += w[i];
    }
    for (int c : d.linked) z[d.link_col[c]] += w[i] * xs[i][c];
  }
  return z;
}

td::RealizationPlan point_plan(const td::TeamView& v, const std::vector<uint8_t>& x) {
  td::RealizationPlan p;
  p.team = v.team;
  p.values.assign(x.begin(), x.end());
  return p;
}

// Every team infoset plays uniformly at random.
td::RealizationPlan uniform_plan(const td::TeamView& v) {
  td::RealizationPlan p;
  p.team = v.team;
  p.values.assign(v.num_classes(), 0.0);
  p.values[v.root()] = 1.0;
  for (int c = 1; c < v.num_classes(); ++c) {
    const int par = v.classes[c].parent;
    p.values[c] = v.is_decision(par)
                      ? p.values[par] / static_cast<double>(v.classes[par].children.size())
                      : p.values[par];
  }
  return p;
}

std::vector<int> always(const td::GameTree& g, td::Team t, int action) {
  std::vector<int> out(g.num_infosets(), 0);
  for (int i = 0; i < g.num_infosets(); ++i) {
    if (g.infoset(i).team == t) out[i] = action;
  }
  return out;
}

}  // namespace

TEST_CASE("default arithmetic mode") {
  CHECK(td::default_mode(td::kExactModeNnzLimit - 1) == td::ArithmeticMode::kExact);
  CHECK(td::default_mode(td::kExactModeNnzLimit) == td::ArithmeticMode::kFloat);
}

TEST_CASE("matching pennies solves to 0") {
  const tt::Built b = tt::build_both(td::make_matching_pennies());
  const td::SolveResult r = tt::solve_exact(b);
  CHECK(r.value.exact == 0);
  CHECK(r.gap.exact == 0);
  CHECK(r.plan_plus.exact[b.plus->view.root()] == 1);
}

TEST_CASE("Kuhn 21K3 and 21K4 in exact mode") {
  // Reference values: 0 and -.0417; the latter is -1/24.
  const tt::Built k3 = tt::build_both(td::make_kuhn(2, 1, 3));
  const td::SolveResult r3 = tt::solve_exact(k3);
  CHECK(r3.value.exact == 0);
  CHECK(r3.gap.exact == 0);
  CHECK(td::check_plan(r3.plan_plus, k3.plus->view, 0));
  CHECK(td::check_plan(r3.plan_minus, k3.minus->view, 0));

  const tt::Built k4 = tt::build_both(td::make_kuhn(2, 1, 4));
  const td::SolveResult r4 = tt::solve_exact(k4);
  CHECK(r4.value.exact == Rational(-1, 24));
  CHECK(r4.gap.exact == 0);
}

TEST_CASE("Kuhn 21K3 in float mode") {
  const tt::Built b = tt::build_both(td::make_kuhn(2, 1, 3));
  td::GameSolveOptions o;
  o.mode = td::ArithmeticMode::kFloat;
  const td::SolveResult r = td::solve_saddle(b.plus->desc, b.plus->view, b.minus->desc,
                                             b.minus->view, b.payoff, o);
  CHECK(std::abs(r.value.approx) <= 1e-6);
  CHECK(r.gap.approx >= 0);
  CHECK(r.gap.approx <= 1e-6);
  std::string why;
  CHECK_MESSAGE(td::check_plan(r.plan_plus, b.plus->view, 1e-7, &why), why);
  CHECK(r.plan_plus.max_clamp <= td::kLambdaTolerance);
  // Best response to the equilibrium plan is the game value.
  const td::Value br =
      td::best_response_value(b.minus->desc, b.minus->view, b.payoff, r.plan_plus);
  CHECK(std::abs(br.approx - r.value.approx) <= 1e-6);
}

TEST_CASE("extract_plan on a point mass and on a two-plan mixture") {
  const td::GameTree g = tt::paired_infoset_game();
  const tt::Built b = tt::build_both(g);
  const td::TeamView& v = b.plus->view;
  std::vector<int> p0 = always(g, td::Team::kPlus, 0);
  std::vector<int> p1 = p0;
  p1[0] = 1;  // differs at the first infoset only
  const auto x0 = td::pure_plan_vector(v, p0), x1 = td::pure_plan_vector(v, p1);

  const td::RealizationPlan point = td::extract_plan(b.plus->desc, mixture_columns(*b.plus, {x0}, {1}));
  for (int c = 0; c < v.num_classes(); ++c) CHECK(point.at(c) == x0[c]);
  CHECK(point.max_clamp == 0);

  const td::RealizationPlan mix =
      td::extract_plan(b.plus->desc, mixture_columns(*b.plus, {x0, x1}, {0.5, 0.5}));
  CHECK(td::check_plan(mix, v, 1e-12));
  int halves = 0;
  for (int c = 0; c < v.num_classes(); ++c) {
    if (x0[c] != x1[c]) {
      CHECK(mix.at(c) == doctest::Approx(0.5));
      ++halves;
    } else {
      CHECK(mix.at(c) == doctest::Approx(x0[c]));
    }
  }
  CHECK(halves > 0);

  std::vector<Rational> exact(b.plus->desc.num_cols());
  const auto z = mixture_columns(*b.plus, {x0}, {1});
  for (size_t j = 0; j < z.size(); ++j) exact[j] = z[j];
  const td::RealizationPlan pe = td::extract_plan(b.plus->desc, exact);
  CHECK(pe.mode == td::ArithmeticMode::kExact);
  CHECK(td::check_plan(pe, v, 0));
}

TEST_CASE("extract_plan rejects columns that break the rows") {
  const tt::Built b = tt::build_both(tt::paired_infoset_game());
  std::vector<double> z(b.plus->desc.num_cols(), 0.0);
  try {
    td::extract_plan(b.plus->desc, z);
    FAIL("expected kInfeasibleLambda");
  } catch (const td::Error& e) {
    CHECK(e.code() == td::ErrorCode::kInfeasibleLambda);
  }
  z.assign(z.size(), 0.0);
  z[0] = -0.5;
  CHECK_THROWS_AS(td::extract_plan(b.plus->desc, z), td::Error);
}

TEST_CASE("check_plan catches broken flow") {
  const tt::Built b = tt::build_both(td::make_kuhn(2, 1, 3));
  td::RealizationPlan u = uniform_plan(b.plus->view);
  CHECK(td::check_plan(u, b.plus->view, 1e-12));
  u.values.back() += 0.25;
  std::string why;
  CHECK_FALSE(td::check_plan(u, b.plus->view, 1e-12, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("best responses") {
  const tt::Built pennies = tt::build_both(td::make_matching_pennies());
  const td::Value v = td::best_response_value(pennies.minus->desc, pennies.minus->view,
                                              pennies.payoff, uniform_plan(pennies.plus->view));
  CHECK(v.approx == doctest::Approx(0.0));

  // Always betting (or calling) is exploitable.
  const td::GameTree g = td::make_kuhn(2, 1, 3);
  const tt::Built k3 = tt::build_both(g);
  const auto x = td::pure_plan_vector(k3.plus->view, always(g, td::Team::kPlus, 1));
  const td::Value br = td::best_response_value(k3.minus->desc, k3.minus->view, k3.payoff,
                                               point_plan(k3.plus->view, x));
  CHECK(br.approx < -1e-3);

  // Brute-force best response over Minus's pure plans agrees.
  double best = 1e9;
  for (const auto& q : tt::pure_plans(g, td::Team::kMinus)) {
    const auto y = td::pure_plan_vector(k3.minus->view, q);
    double u = 0;
    for (const auto& t : k3.payoff.triples) u += t.coef.get_d() * x[t.plus_class] * y[t.minus_class];
    best = std::min(best, u);
  }
  CHECK(br.approx == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("equilibrium gap of uniform plans is positive") {
  const tt::Built b = tt::build_both(td::make_kuhn(2, 1, 3));
  const td::Value gap = td::equilibrium_gap(uniform_plan(b.plus->view), uniform_plan(b.minus->view),
                                            b.plus->desc, b.plus->view, b.minus->desc,
                                            b.minus->view, b.payoff);
  CHECK(gap.approx > 1e-3);
}

TEST_CASE("brute-force oracle") {
  const td::OracleResult pennies = td::brute_force_value(td::make_matching_pennies());
  CHECK(pennies.value == 0);
  CHECK(pennies.plus_pure == 2);
  CHECK(pennies.minus_pure == 2);

  td::Cnf cnf;
  cnf.num_vars = 1;
  cnf.clauses = {{1, 1, 1}, {-1, -1, -1}};
  CHECK(td::brute_force_value(td::make_sat_game(cnf)).value == Rational(1, 2));

  try {
    td::brute_force_value(td::make_kuhn(2, 1, 3));
    FAIL("expected kCapExceeded");
  } catch (const td::Error& e) {
    CHECK(e.code() == td::ErrorCode::kCapExceeded);
  }
}
