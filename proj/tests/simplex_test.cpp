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
#include "teamdecomp/lp.hpp"
#include "teamdecomp/simplex.hpp"

#include <cmath>
#include <random>

namespace td = teamdecomp;
using td::Rational;

namespace {

struct Row {
  std::vector<std::pair<int, Rational>> terms;
  td::RowSense sense;
  Rational rhs;
};

td::SparseLP make_lp(const std::vector<Rational>& obj, const std::vector<Row>& rows,
                     std::vector<bool> free = {}) {
  td::SparseLP lp;
  for (size_t j = 0; j < obj.size(); ++j) lp.col_names.push_back("x" + std::to_string(j));
  lp.objective = obj;
  lp.free = free.empty() ? std::vector<bool>(obj.size(), false) : free;
  lp.row_start = {0};
  for (size_t r = 0; r < rows.size(); ++r) {
    lp.row_names.push_back("r" + std::to_string(r));
    for (const auto& [c, v] : rows[r].terms) {
      lp.cols.push_back(c);
      lp.vals.push_back(v);
    }
    lp.row_start.push_back(static_cast<int64_t>(lp.cols.size()));
    lp.sense.push_back(rows[r].sense);
    lp.rhs.push_back(rows[r].rhs);
  }
  return lp;
}

td::LpSolution run(const td::SparseLP& lp, td::ArithmeticMode mode) {
  td::SimplexOptions o;
  o.mode = mode;
  return td::solve_lp(lp, o);
}

td::ErrorCode code_of(const td::SparseLP& lp, td::ArithmeticMode mode) {
  try {
    run(lp, mode);
  } catch (const td::Error& e) {
    return e.code();
  }
  return td::ErrorCode::kInternal;
}

constexpr auto kLe = td::RowSense::kLe;
constexpr auto kEq = td::RowSense::kEq;
constexpr auto kGe = td::RowSense::kGe;

}  // namespace

TEST_CASE("two-constraint LP, both modes") {
  // max x + y  s.t.  x + 2y <= 4,  3x + y <= 6.
  const td::SparseLP lp = make_lp({1, 1}, {{{{0, 1}, {1, 2}}, kLe, 4}, {{{0, 3}, {1, 1}}, kLe, 6}});
  const td::LpSolution e = run(lp, td::ArithmeticMode::kExact);
  CHECK(e.objective.exact == Rational(14, 5));
  CHECK(e.x_exact[0] == Rational(8, 5));
  CHECK(e.x_exact[1] == Rational(6, 5));
  CHECK(e.row_duals_exact[0] == Rational(2, 5));
  CHECK(e.row_duals_exact[1] == Rational(1, 5));
  const td::LpSolution f = run(lp, td::ArithmeticMode::kFloat);
  CHECK(f.objective.approx == doctest::Approx(2.8).epsilon(1e-12));
  CHECK(f.row_duals[0] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("free column and a >= row") {
  // max -v  s.t.  v >= 2,  v free.
  const td::SparseLP lp = make_lp({-1}, {{{{0, 1}}, kGe, 2}}, {true});
  CHECK(run(lp, td::ArithmeticMode::kExact).objective.exact == -2);
  CHECK(run(lp, td::ArithmeticMode::kFloat).objective.approx == doctest::Approx(-2));
  // A free column can go negative: max -v  s.t.  v >= -3.
  const td::SparseLP neg = make_lp({-1}, {{{{0, 1}}, kGe, -3}}, {true});
  CHECK(run(neg, td::ArithmeticMode::kExact).x_exact[0] == -3);
}

TEST_CASE("Beale's cycling example terminates") {
  const td::SparseLP lp = make_lp(
      {Rational(3, 4), -20, Rational(1, 2), -6},
      {{{{0, Rational(1, 4)}, {1, -8}, {2, -1}, {3, 9}}, kLe, 0},
       {{{0, Rational(1, 2)}, {1, -12}, {2, Rational(-1, 2)}, {3, 3}}, kLe, 0},
       {{{2, 1}}, kLe, 1}});
  CHECK(run(lp, td::ArithmeticMode::kExact).objective.exact == Rational(5, 4));
  CHECK(run(lp, td::ArithmeticMode::kFloat).objective.approx == doctest::Approx(1.25));
}

TEST_CASE("equality system with a redundant row") {
  // x + y = 1 twice, max y.
  const td::SparseLP lp =
      make_lp({0, 1}, {{{{0, 1}, {1, 1}}, kEq, 1}, {{{0, 1}, {1, 1}}, kEq, 1}});
  CHECK(run(lp, td::ArithmeticMode::kExact).objective.exact == 1);
}

TEST_CASE("infeasible and unbounded LPs are reported") {
  const td::SparseLP infeasible = make_lp({1, 1}, {{{{0, 1}, {1, 1}}, kLe, -1}});
  const td::SparseLP unbounded = make_lp({1, 0}, {{{{0, 1}, {1, -1}}, kLe, 1}});
  for (auto mode : {td::ArithmeticMode::kExact, td::ArithmeticMode::kFloat}) {
    CHECK(code_of(infeasible, mode) == td::ErrorCode::kInfeasible);
    CHECK(code_of(unbounded, mode) == td::ErrorCode::kUnbounded);
  }
}

TEST_CASE("a malformed start basis falls back to the slack basis") {
  const td::SparseLP lp = make_lp({1, 1}, {{{{0, 1}, {1, 2}}, kLe, 4}, {{{0, 3}, {1, 1}}, kLe, 6}});
  td::SimplexOptions o;
  o.mode = td::ArithmeticMode::kFloat;
  o.start_basis = {td::BasisStatus::kBasic};
  CHECK(td::solve_lp(lp, o).objective.approx == doctest::Approx(2.8));
}

TEST_CASE("float and exact agree on random bounded LPs") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-4, 9), pick(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 5, m = 2 + trial % 4;
    std::vector<Rational> obj(n);
    for (auto& c : obj) c = coef(rng);
    std::vector<Row> rows;
    for (int r = 0; r < m; ++r) {
      Row row{{}, kLe, Rational(1 + pick(rng) * 3)};
      for (int j = 0; j < n; ++j) {
        const int a = coef(rng);
        if (a != 0) row.terms.emplace_back(j, Rational(a));
      }
      rows.push_back(row);
    }
    // Box every column so the LP is bounded.
    for (int j = 0; j < n; ++j) rows.push_back({{{j, 1}}, kLe, 5});
    const td::SparseLP lp = make_lp(obj, rows);
    const td::LpSolution e = run(lp, td::ArithmeticMode::kExact);
    const td::LpSolution f = run(lp, td::ArithmeticMode::kFloat);
    CHECK(std::abs(e.objective.exact.get_d() - f.objective.approx) < 1e-9);
    // Strong duality: bᵀy equals the optimum.
    Rational by = 0;
    for (int r = 0; r < lp.num_rows(); ++r) by += lp.rhs[r] * e.row_duals_exact[r];
    CHECK(by == e.objective.exact);
  }
}
