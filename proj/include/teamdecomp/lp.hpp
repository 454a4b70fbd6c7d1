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

#ifndef TEAMDECOMP_LP_HPP_
#define TEAMDECOMP_LP_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "teamdecomp/common.hpp"
#include "teamdecomp/decomposition.hpp"
#include "teamdecomp/feasible_sets.hpp"
#include "teamdecomp/team_view.hpp"

namespace teamdecomp {

enum class RowKind { kNormalization, kMarginal, kLink };

// λ-polytope of one team: columns are λ (bag by bag, assignment order)
// followed by one x-link column per linked class. Every row reads
// Σ coef · col = rhs with coef ∈ {-1, +1} and rhs ∈ {0, 1}.
struct PolytopeDescription {
  Team team = Team::kPlus;
  int num_classes = 0;
  std::vector<int64_t> bag_offset;  // first λ column of each bag
  int64_t num_lambda = 0;
  std::vector<int> linked;      // linked classes, ascending
  std::vector<int> link_col;    // class -> column, or -1
  std::vector<int> canon_bag;   // class -> canonical bag
  std::vector<int> canon_pos;   // class -> position inside canonical bag

  std::vector<int64_t> row_start;  // CSR, size num_rows + 1
  std::vector<int64_t> cols;
  std::vector<int8_t> coefs;
  std::vector<int8_t> rhs;
  std::vector<RowKind> kinds;

  std::shared_ptr<const FeasibleSets> sets;
  const PublicTreeDecomposition* dec = nullptr;

  int64_t num_cols() const { return num_lambda + static_cast<int64_t>(linked.size()); }
  int64_t num_rows() const { return static_cast<int64_t>(rhs.size()); }
  int64_t nnz() const { return static_cast<int64_t>(cols.size()); }
};

// Throws kEmptyBag when a bag has no assignment. `dec` must outlive the
// description.
PolytopeDescription polytope_description(
    const PublicTreeDecomposition& dec, std::shared_ptr<const FeasibleSets> sets,
    const TeamView& view, const std::vector<int>& linked_classes);

enum class RowSense { kLe, kEq, kGe };

// Column ranges of a saddle LP. "Own" is the maximizing team of the LP.
struct SaddleLayout {
  Team own = Team::kPlus;
  int64_t own_cols = 0;       // λ + x-link columns of the own polytope
  int64_t dual_cols = 0;      // one free v per opponent polytope row
  int64_t own_rows = 0;       // own polytope rows
  int64_t coupling_rows = 0;  // one per opponent polytope column
};

// max objᵀ z  s.t.  rows,  z_j ≥ 0 unless free[j].
struct SparseLP {
  std::vector<std::string> col_names;
  std::vector<std::string> row_names;
  std::vector<Rational> objective;
  std::vector<bool> free;
  std::vector<int64_t> row_start;  // CSR, row-major canonical order
  std::vector<int64_t> cols;
  std::vector<Rational> vals;
  std::vector<RowSense> sense;
  std::vector<Rational> rhs;
  SaddleLayout layout;

  int64_t num_cols() const { return static_cast<int64_t>(col_names.size()); }
  int64_t num_rows() const { return static_cast<int64_t>(rhs.size()); }
};

int64_t lp_size(const SparseLP& lp);

// Checks names, shapes and the absence of stored zeros.
void check_lp(const SparseLP& lp);

// The LP whose optimum is the value for `perspective`: max over its own
// polytope of the dualized inner minimization over the opponent polytope.
// With perspective Minus the payoff is negated, so its optimum is minus the
// game value.
SparseLP saddle_lp(const PolytopeDescription& plus,
                   const PolytopeDescription& minus, const PayoffForm& payoff,
                   Team perspective = Team::kPlus);

// Plain LP over one polytope: max Σ cost_j · x_j over linked classes j.
SparseLP polytope_lp(const PolytopeDescription& desc,
                     const std::vector<std::pair<int, Rational>>& class_costs);

enum class ExportFormat { kLpText, kMps };

ExportFormat parse_export_format(const std::string& name);  // kInvalidArgument

std::string export_lp_text(const SparseLP& lp);

struct MpsExport {
  std::string mps;
  std::string name_map_json;  // {"columns": {...}, "rows": {...}}
};

MpsExport export_mps(const SparseLP& lp);

}  // namespace teamdecomp

#endif  // TEAMDECOMP_LP_HPP_
