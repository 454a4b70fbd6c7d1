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

#ifndef TEAMDECOMP_SIMPLEX_HPP_
#define TEAMDECOMP_SIMPLEX_HPP_

#include <cstdint>
#include <vector>

#include "teamdecomp/common.hpp"
#include "teamdecomp/lp.hpp"

namespace teamdecomp {

enum class BasisStatus : int8_t { kBasic, kLower, kUpper, kZero };

struct SimplexOptions {
  ArithmeticMode mode = ArithmeticMode::kExact;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  int refactor_interval = 100;
  int64_t max_iterations = 0;  // 0 picks a limit from the LP size
  bool log = false;            // progress lines on stderr
  // Crash basis for the float phase (columns, then row logicals). Empty or
  // invalid falls back to the slack basis.
  std::vector<BasisStatus> start_basis;
};

struct LpSolution {
  ArithmeticMode mode = ArithmeticMode::kFloat;
  Value objective;
  std::vector<double> x;          // per column
  std::vector<double> row_duals;  // per row, duals of the maximization
  std::vector<Rational> x_exact;  // exact mode only
  std::vector<Rational> row_duals_exact;
  std::vector<BasisStatus> basis;  // columns, then row logicals
  int64_t float_iterations = 0;
  int64_t exact_iterations = 0;
  int refactorizations = 0;
  int perturbations = 0;
  double max_primal_infeasibility = 0;
};

// Bounded revised simplex. Float mode: Harris ratio test, partial Dantzig
// pricing, bound perturbation on stalls. Exact mode: warm-started from the
// float basis, then rational pivots under Bland's rule until the basis is
// verified optimal; falls back to a rational solve from the slack basis.
// Throws kInfeasible, kUnbounded or kNumericalBreakdown.
LpSolution solve_lp(const SparseLP& lp, const SimplexOptions& options = {});

}  // namespace teamdecomp

#endif  // TEAMDECOMP_SIMPLEX_HPP_
