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

#include "teamdecomp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "teamdecomp/feasible_sets.hpp"

namespace teamdecomp {

ArithmeticMode default_mode(int64_t lp_nnz) {
  return lp_nnz < kExactModeNnzLimit ? ArithmeticMode::kExact : ArithmeticMode::kFloat;
}

namespace {

double abs(double v) { return std::fabs(v); }

template <class T>
bool plan_ok(const std::vector<T>& x, const TeamView& view, const T& tol,
             std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto differ = [&](const T& a, const T& b) { return abs(T(a - b)) > tol; };
  if (static_cast<int>(x.size()) != view.num_classes()) return fail("plan size mismatch");
  if (x.empty()) return true;
  if (differ(x[view.root()], T(1))) return fail("x(root) != 1");
  for (int c = 0; c < view.num_classes(); ++c) {
    if (x[c] < T(-tol) || x[c] > T(1 + tol)) {
      return fail("class " + std::to_string(c) + " outside [0, 1]");
    }
    const ViewClass& vc = view.classes[c];
    if (vc.children.empty()) continue;
    if (vc.kind == ClassKind::kTeamDecision) {
      T sum(0);
      for (int ch : vc.children) sum += x[ch];
      if (differ(sum, x[c])) return fail("flow broken at class " + std::to_string(c));
    } else {
      for (int ch : vc.children) {
        if (differ(x[ch], x[c])) {
          return fail("pass-through broken at class " + std::to_string(c));
        }
      }
    }
  }
  return true;
}

// Accumulates x(c) for every class from the λ block.
template <class T>
std::vector<T> link_sums(const PolytopeDescription& desc, const std::vector<T>& cols) {
  std::vector<T> x(desc.num_classes, T(0));
  const auto& sets = desc.sets->sets;
  std::vector<std::vector<int>> owned(sets.size());
  for (int c = 0; c < desc.num_classes; ++c) owned[desc.canon_bag[c]].push_back(c);
  for (size_t b = 0; b < sets.size(); ++b) {
    const LocalFeasibleSet& xs = sets[b];
    for (int64_t r = 0; r < xs.count(); ++r) {
      const T& lam = cols[desc.bag_offset[b] + r];
      if (lam == T(0)) continue;
      for (int c : owned[b]) {
        if (xs.bit(r, desc.canon_pos[c])) x[c] += lam;
      }
    }
  }
  return x;
}

}  // namespace

bool check_plan(const RealizationPlan& plan, const TeamView& view, double tol,
                std::string* why) {
  if (plan.mode == ArithmeticMode::kExact && tol == 0) {
    return plan_ok<Rational>(plan.exact, view, Rational(0), why);
  }
  return plan_ok<double>(plan.values, view, tol, why);
}

LpSolution solve(const SparseLP& lp, ArithmeticMode mode, SimplexOptions options) {
  options.mode = mode;
  return solve_lp(lp, options);
}

std::vector<BasisStatus> crash_basis(const SparseLP& lp, const PolytopeDescription& own,
                                     const TeamView& own_view,
                                     const PolytopeDescription* opponent) {
  const int64_t n = lp.num_cols(), m = lp.num_rows();
  if (lp.layout.own != own.team || lp.layout.own_cols != own.num_cols() ||
      lp.layout.own_rows != own.num_rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "crash basis: LP does not match the description");
  }
  if (opponent != nullptr && (lp.layout.dual_cols != opponent->num_rows() ||
                              lp.layout.coupling_rows != opponent->num_cols())) {
    throw Error(ErrorCode::kDimensionMismatch, "crash basis: LP does not match the opponent");
  }
  std::vector<BasisStatus> st(n + m, BasisStatus::kLower);
  for (int64_t j = own.num_cols(); j < n; ++j) {
    st[j] = lp.free[j] ? BasisStatus::kZero : BasisStatus::kLower;
  }
  const std::vector<int> first(own_view.infoset_classes.size(), 0);
  const std::vector<uint8_t> x = pure_plan_vector(own_view, first);
  const auto& sets = own.sets->sets;
  for (size_t b = 0; b < sets.size(); ++b) {
    const int64_t k = sets[b].find(restrict_to_bag(own.dec->bags[b], x));
    if (k < 0) return {};  // plan not in X_C: leave it to the slack basis
    st[own.bag_offset[b] + k] = BasisStatus::kBasic;
  }
  for (int64_t j = own.num_lambda; j < own.num_cols(); ++j) st[j] = BasisStatus::kBasic;
  for (int64_t r = 0; r < own.num_rows(); ++r) {
    if (own.kinds[r] == RowKind::kMarginal) st[n + r] = BasisStatus::kBasic;
  }
  const int64_t own_rows = own.num_rows();
  for (int64_t r = own_rows; r < m; ++r) st[n + r] = BasisStatus::kBasic;
  if (opponent == nullptr) return st;

  // Opponent link column c: row reads -(Kx)_c + v_link(c) <= 0; make it tight.
  const PolytopeDescription& opp = *opponent;
  const int64_t v0 = own.num_cols();
  const int64_t first_link_row = opp.num_rows() - static_cast<int64_t>(opp.linked.size());
  std::vector<double> v_link(opp.num_classes, 0.0);
  for (size_t k = 0; k < opp.linked.size(); ++k) {
    const int c = opp.linked[k];
    const int64_t j = opp.link_col[c];
    const int64_t row = own_rows + j;
    const int64_t dual = first_link_row + static_cast<int64_t>(k);
    if (opp.kinds[dual] != RowKind::kLink) return st;
    double own_part = 0;
    for (int64_t e = lp.row_start[row]; e < lp.row_start[row + 1]; ++e) {
      const int64_t col = lp.cols[e];
      if (col >= own.num_lambda && col < v0) {
        const int cls = own.linked[col - own.num_lambda];
        if (x[cls]) own_part += lp.vals[e].get_d();
      }
    }
    v_link[c] = -own_part;
    st[v0 + dual] = BasisStatus::kBasic;
    st[n + row] = BasisStatus::kUpper;
  }
  // Opponent bag b: v_norm(b) <= Σ v_link over each assignment's linked bits.
  std::vector<std::vector<int>> owned(opp.sets->sets.size());
  for (int c : opp.linked) owned[opp.canon_bag[c]].push_back(c);
  for (size_t b = 0; b < opp.sets->sets.size(); ++b) {
    const LocalFeasibleSet& xs = opp.sets->sets[b];
    int64_t best = 0;
    double best_val = 0;
    for (int64_t r = 0; r < xs.count(); ++r) {
      double s = 0;
      for (int c : owned[b]) {
        if (xs.bit(r, opp.canon_pos[c])) s += v_link[c];
      }
      if (r == 0 || s < best_val) {
        best = r;
        best_val = s;
      }
    }
    st[v0 + static_cast<int64_t>(b)] = BasisStatus::kBasic;  // normalization rows come first
    st[n + own_rows + opp.bag_offset[b] + best] = BasisStatus::kUpper;
  }
  return st;
}

RealizationPlan extract_plan(const PolytopeDescription& desc,
                             const std::vector<double>& columns) {
  if (static_cast<int64_t>(columns.size()) != desc.num_cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "column vector does not match the description");
  }
  std::vector<double> cols = columns;
  for (int64_t j = 0; j < desc.num_lambda; ++j) {
    if (cols[j] < -kLambdaTolerance) {
      throw Error(ErrorCode::kInfeasibleLambda, "negative lambda at column " + std::to_string(j));
    }
    if (cols[j] < kLambdaZero) cols[j] = 0;
  }
  for (int64_t r = 0; r < desc.num_rows(); ++r) {
    double s = -desc.rhs[r];
    for (int64_t k = desc.row_start[r]; k < desc.row_start[r + 1]; ++k) {
      s += desc.coefs[k] * cols[desc.cols[k]];
    }
    if (std::fabs(s) > kLambdaTolerance) {
      throw Error(ErrorCode::kInfeasibleLambda,
                  "row " + std::to_string(r) + " violated by " + std::to_string(s));
    }
  }
  RealizationPlan plan;
  plan.team = desc.team;
  plan.mode = ArithmeticMode::kFloat;
  plan.values = link_sums(desc, cols);
  for (double& v : plan.values) {
    const double c = std::clamp(v, 0.0, 1.0);
    plan.max_clamp = std::max(plan.max_clamp, std::fabs(c - v));
    v = c;
  }
  return plan;
}

RealizationPlan extract_plan(const PolytopeDescription& desc,
                             const std::vector<Rational>& columns) {
  if (static_cast<int64_t>(columns.size()) != desc.num_cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "column vector does not match the description");
  }
  for (int64_t j = 0; j < desc.num_lambda; ++j) {
    if (sgn(columns[j]) < 0) {
      throw Error(ErrorCode::kInfeasibleLambda, "negative lambda at column " + std::to_string(j));
    }
  }
  for (int64_t r = 0; r < desc.num_rows(); ++r) {
    Rational s = -desc.rhs[r];
    for (int64_t k = desc.row_start[r]; k < desc.row_start[r + 1]; ++k) {
      if (desc.coefs[k] > 0) {
        s += columns[desc.cols[k]];
      } else {
        s -= columns[desc.cols[k]];
      }
    }
    if (sgn(s) != 0) {
      throw Error(ErrorCode::kInfeasibleLambda, "row " + std::to_string(r) + " violated");
    }
  }
  RealizationPlan plan;
  plan.team = desc.team;
  plan.mode = ArithmeticMode::kExact;
  plan.exact = link_sums(desc, columns);
  plan.values.reserve(plan.exact.size());
  for (const auto& q : plan.exact) plan.values.push_back(q.get_d());
  return plan;
}

Value best_response_value(const PolytopeDescription& opponent, const TeamView& opponent_view,
                          const PayoffForm& payoff, const RealizationPlan& fixed) {
  if (opponent.team == fixed.team) {
    throw Error(ErrorCode::kInvalidArgument, "best response needs the other team's description");
  }
  const bool exact = fixed.mode == ArithmeticMode::kExact;
  const bool fixed_plus = fixed.team == Team::kPlus;
  std::vector<Rational> cost(opponent.num_classes);
  for (const PayoffTriple& t : payoff.triples) {
    const int fc = fixed_plus ? t.plus_class : t.minus_class;
    const int oc = fixed_plus ? t.minus_class : t.plus_class;
    if (fc < 0 || fc >= static_cast<int>(fixed.values.size()) || oc < 0 ||
        oc >= opponent.num_classes) {
      throw Error(ErrorCode::kDimensionMismatch, "payoff triple outside the plans");
    }
    const Rational w = exact ? Rational(fixed.exact[fc]) : Rational(fixed.values[fc]);
    cost[oc] += t.coef * w;
  }
  std::vector<std::pair<int, Rational>> costs;
  for (int c = 0; c < opponent.num_classes; ++c) {
    if (sgn(cost[c]) == 0) continue;
    costs.emplace_back(c, fixed_plus ? Rational(-cost[c]) : cost[c]);
  }
  const SparseLP lp = polytope_lp(opponent, costs);
  SimplexOptions opt;
  opt.start_basis = crash_basis(lp, opponent, opponent_view);
  const LpSolution sol =
      solve(lp, exact ? ArithmeticMode::kExact : ArithmeticMode::kFloat, opt);
  if (exact) return Value::of_exact(fixed_plus ? Rational(-sol.objective.exact) : sol.objective.exact);
  return Value::of_float(fixed_plus ? -sol.objective.approx : sol.objective.approx);
}

Value equilibrium_gap(const RealizationPlan& x, const RealizationPlan& y,
                      const PolytopeDescription& plus, const TeamView& plus_view,
                      const PolytopeDescription& minus, const TeamView& minus_view,
                      const PayoffForm& payoff) {
  if (x.team != Team::kPlus || y.team != Team::kMinus) {
    throw Error(ErrorCode::kInvalidArgument, "equilibrium_gap expects (plus, minus) plans");
  }
  const Value best_plus = best_response_value(plus, plus_view, payoff, y);
  const Value best_minus = best_response_value(minus, minus_view, payoff, x);
  if (best_plus.mode == ArithmeticMode::kExact && best_minus.mode == ArithmeticMode::kExact) {
    return Value::of_exact(best_plus.exact - best_minus.exact);
  }
  // Two float optima can cross by rounding; a larger crossing is a bug.
  const double gap = best_plus.approx - best_minus.approx;
  if (gap < -kLambdaTolerance) {
    throw Error(ErrorCode::kNumericalBreakdown, "negative equilibrium gap " + std::to_string(gap));
  }
  return Value::of_float(std::max(gap, 0.0));
}

SolveResult solve_saddle(const PolytopeDescription& plus, const TeamView& plus_view,
                         const PolytopeDescription& minus, const TeamView& minus_view,
                         const PayoffForm& payoff, const GameSolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const SparseLP lp = saddle_lp(plus, minus, payoff, Team::kPlus);
  SimplexOptions opt;
  opt.log = options.log;
  opt.start_basis = crash_basis(lp, plus, plus_view, &minus);
  const LpSolution sol = solve(lp, options.mode, opt);

  SolveResult res;
  res.mode = options.mode;
  res.value = sol.objective;
  res.iterations = sol.float_iterations + sol.exact_iterations;
  res.lp_nnz = lp_size(lp);
  const int64_t own_cols = lp.layout.own_cols;
  const int64_t own_rows = lp.layout.own_rows;
  if (options.mode == ArithmeticMode::kExact) {
    res.plan_plus = extract_plan(
        plus, std::vector<Rational>(sol.x_exact.begin(), sol.x_exact.begin() + own_cols));
    res.plan_minus = extract_plan(
        minus, std::vector<Rational>(sol.row_duals_exact.begin() + own_rows,
                                     sol.row_duals_exact.end()));
  } else {
    res.plan_plus =
        extract_plan(plus, std::vector<double>(sol.x.begin(), sol.x.begin() + own_cols));
    res.plan_minus = extract_plan(
        minus, std::vector<double>(sol.row_duals.begin() + own_rows, sol.row_duals.end()));
  }
  if (options.compute_gap) {
    res.gap = equilibrium_gap(res.plan_plus, res.plan_minus, plus, plus_view, minus,
                              minus_view, payoff);
  } else {
    res.gap = options.mode == ArithmeticMode::kExact ? Value::of_exact(0) : Value::of_float(0);
  }
  res.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  if (options.log) {
    std::fprintf(stderr, "  solve: value=%.10g iterations=%lld gap=%.3g %.0f ms\n",
                 res.value.approx, static_cast<long long>(res.iterations), res.gap.approx,
                 res.wall_ms);
  }
  return res;
}

}  // namespace teamdecomp
