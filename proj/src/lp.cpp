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

#include "teamdecomp/lp.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <utility>

namespace teamdecomp {

namespace {

class RowBuilder {
 public:
  void add(int64_t col, int8_t coef) { entries_.emplace_back(col, coef); }
  void finish(PolytopeDescription& d, RowKind kind, int8_t rhs) {
    std::sort(entries_.begin(), entries_.end());
    for (const auto& [c, v] : entries_) {
      d.cols.push_back(c);
      d.coefs.push_back(v);
    }
    d.row_start.push_back(static_cast<int64_t>(d.cols.size()));
    d.rhs.push_back(rhs);
    d.kinds.push_back(kind);
    entries_.clear();
  }

 private:
  std::vector<std::pair<int64_t, int8_t>> entries_;
};

}  // namespace

PolytopeDescription polytope_description(
    const PublicTreeDecomposition& dec, std::shared_ptr<const FeasibleSets> sets,
    const TeamView& view, const std::vector<int>& linked_classes) {
  if (!sets || static_cast<int>(sets->sets.size()) != dec.num_bags()) {
    throw Error(ErrorCode::kInvalidArgument, "feasible sets do not match the decomposition");
  }
  PolytopeDescription d;
  d.team = view.team;
  d.num_classes = view.num_classes();
  d.dec = &dec;
  d.sets = sets;
  const int nb = dec.num_bags();
  d.bag_offset.resize(nb + 1);
  for (int b = 0; b < nb; ++b) {
    const int64_t n = sets->sets[b].count();
    if (n == 0) {
      throw Error(ErrorCode::kEmptyBag, "bag " + std::to_string(b) + " has no feasible assignment");
    }
    d.bag_offset[b + 1] = d.bag_offset[b] + n;
  }
  d.num_lambda = d.bag_offset[nb];

  d.canon_bag.assign(d.num_classes, -1);
  d.canon_pos.assign(d.num_classes, -1);
  for (int c = 0; c < d.num_classes; ++c) {
    const int b = c == view.root() ? 0 : dec.plus_bag[c];
    if (b < 0) throw Error(ErrorCode::kInternal, "class " + std::to_string(c) + " has no bag");
    d.canon_bag[c] = b;
    d.canon_pos[c] = dec.bags[b].position(c);
  }
  d.linked = linked_classes;
  std::sort(d.linked.begin(), d.linked.end());
  d.linked.erase(std::unique(d.linked.begin(), d.linked.end()), d.linked.end());
  d.link_col.assign(d.num_classes, -1);
  for (size_t k = 0; k < d.linked.size(); ++k) {
    const int c = d.linked[k];
    if (c < 0 || c >= d.num_classes) {
      throw Error(ErrorCode::kDimensionMismatch, "linked class out of range");
    }
    d.link_col[c] = static_cast<int>(d.num_lambda + static_cast<int64_t>(k));
  }

  d.row_start.push_back(0);
  RowBuilder row;
  for (int b = 0; b < nb; ++b) {
    for (int64_t col = d.bag_offset[b]; col < d.bag_offset[b + 1]; ++col) row.add(col, 1);
    row.finish(d, RowKind::kNormalization, 1);
  }
  for (int b = 1; b < nb; ++b) {
    const Bag& bag = dec.bags[b];
    const LocalFeasibleSet& xc = sets->sets[b];
    const LocalFeasibleSet& xb = sets->sets[bag.parent];
    const int k = static_cast<int>(bag.c_minus.size());
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i) pos[i] = dec.bags[bag.parent].position(bag.c_minus[i]);
    using Keyed = std::pair<std::vector<uint8_t>, int64_t>;
    std::vector<Keyed> parent_rows, child_rows;
    parent_rows.reserve(xb.count());
    for (int64_t r = 0; r < xb.count(); ++r) {
      std::vector<uint8_t> key(k);
      for (int i = 0; i < k; ++i) key[i] = xb.bit(r, pos[i]);
      parent_rows.emplace_back(std::move(key), d.bag_offset[bag.parent] + r);
    }
    for (int64_t r = 0; r < xc.count(); ++r) {
      std::vector<uint8_t> key(k);
      for (int i = 0; i < k; ++i) key[i] = xc.bit(r, i);
      child_rows.emplace_back(std::move(key), d.bag_offset[b] + r);
    }
    std::sort(parent_rows.begin(), parent_rows.end());
    std::sort(child_rows.begin(), child_rows.end());
    size_t p = 0, q = 0;
    while (p < parent_rows.size() || q < child_rows.size()) {
      const std::vector<uint8_t>* key;
      if (q == child_rows.size() ||
          (p < parent_rows.size() && parent_rows[p].first < child_rows[q].first)) {
        key = &parent_rows[p].first;
      } else {
        key = &child_rows[q].first;
      }
      const std::vector<uint8_t> pattern = *key;
      while (p < parent_rows.size() && parent_rows[p].first == pattern) {
        row.add(parent_rows[p++].second, 1);
      }
      while (q < child_rows.size() && child_rows[q].first == pattern) {
        row.add(child_rows[q++].second, -1);
      }
      row.finish(d, RowKind::kMarginal, 0);
    }
  }
  for (int c : d.linked) {
    const int b = d.canon_bag[c];
    const LocalFeasibleSet& xs = sets->sets[b];
    for (int64_t r = 0; r < xs.count(); ++r) {
      if (xs.bit(r, d.canon_pos[c])) row.add(d.bag_offset[b] + r, -1);
    }
    row.add(d.link_col[c], 1);
    row.finish(d, RowKind::kLink, 0);
  }
  return d;
}

int64_t lp_size(const SparseLP& lp) { return static_cast<int64_t>(lp.vals.size()); }

void check_lp(const SparseLP& lp) {
  const int64_t n = lp.num_cols(), m = lp.num_rows();
  auto bad = [](const std::string& why) {
    throw Error(ErrorCode::kInternal, "malformed LP: " + why);
  };
  if (static_cast<int64_t>(lp.objective.size()) != n ||
      static_cast<int64_t>(lp.free.size()) != n) {
    bad("column arrays differ in length");
  }
  if (static_cast<int64_t>(lp.row_names.size()) != m ||
      static_cast<int64_t>(lp.sense.size()) != m ||
      static_cast<int64_t>(lp.row_start.size()) != m + 1) {
    bad("row arrays differ in length");
  }
  if (lp.cols.size() != lp.vals.size() ||
      lp.row_start.back() != static_cast<int64_t>(lp.vals.size())) {
    bad("triplet arrays differ in length");
  }
  for (int64_t r = 0; r < m; ++r) {
    for (int64_t k = lp.row_start[r]; k < lp.row_start[r + 1]; ++k) {
      if (lp.cols[k] < 0 || lp.cols[k] >= n) bad("column index out of range");
      if (k > lp.row_start[r] && lp.cols[k] <= lp.cols[k - 1]) bad("row not strictly sorted");
      if (sgn(lp.vals[k]) == 0) bad("stored zero");
    }
  }
  std::unordered_set<std::string> names;
  for (const auto& s : lp.col_names) {
    if (!names.insert(s).second) bad("duplicate name " + s);
  }
  for (const auto& s : lp.row_names) {
    if (!names.insert(s).second) bad("duplicate name " + s);
  }
}

namespace {

void add_polytope_columns(SparseLP& lp, const PolytopeDescription& d) {
  const std::string t = team_name(d.team);
  for (int b = 0; b + 1 < static_cast<int>(d.bag_offset.size()); ++b) {
    for (int64_t col = d.bag_offset[b]; col < d.bag_offset[b + 1]; ++col) {
      lp.col_names.push_back("lp_" + t + "_" + std::to_string(b) + "_" +
                             std::to_string(col - d.bag_offset[b]));
    }
  }
  for (int c : d.linked) lp.col_names.push_back("x_" + t + "_" + std::to_string(c));
  lp.objective.resize(lp.col_names.size());
  lp.free.resize(lp.col_names.size(), false);
}

void add_polytope_rows(SparseLP& lp, const PolytopeDescription& d) {
  const std::string t = team_name(d.team);
  if (lp.row_start.empty()) lp.row_start.push_back(0);
  for (int64_t r = 0; r < d.num_rows(); ++r) {
    for (int64_t k = d.row_start[r]; k < d.row_start[r + 1]; ++k) {
      lp.cols.push_back(d.cols[k]);
      lp.vals.emplace_back(d.coefs[k]);
    }
    lp.row_start.push_back(static_cast<int64_t>(lp.cols.size()));
    lp.sense.push_back(RowSense::kEq);
    lp.rhs.emplace_back(d.rhs[r]);
    lp.row_names.push_back("r_" + t + "_" + std::to_string(r));
  }
}

}  // namespace

SparseLP saddle_lp(const PolytopeDescription& plus,
                   const PolytopeDescription& minus, const PayoffForm& payoff,
                   Team perspective) {
  if (plus.team != Team::kPlus || minus.team != Team::kMinus) {
    throw Error(ErrorCode::kInvalidArgument, "saddle_lp expects (plus, minus) descriptions");
  }
  const PolytopeDescription& own = perspective == Team::kPlus ? plus : minus;
  const PolytopeDescription& opp = perspective == Team::kPlus ? minus : plus;
  // Opponent link column -> (own link column, coefficient) in own's payoff.
  std::vector<std::vector<std::pair<int64_t, Rational>>> coupling(opp.num_cols());
  for (const PayoffTriple& t : payoff.triples) {
    const int oc = perspective == Team::kPlus ? t.plus_class : t.minus_class;
    const int pc = perspective == Team::kPlus ? t.minus_class : t.plus_class;
    if (oc < 0 || oc >= own.num_classes || pc < 0 || pc >= opp.num_classes ||
        own.link_col[oc] < 0 || opp.link_col[pc] < 0) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "payoff triple (" + std::to_string(t.plus_class) + ", " +
                      std::to_string(t.minus_class) + ") is not covered by linked classes");
    }
    Rational coef = perspective == Team::kPlus ? t.coef : Rational(-t.coef);
    coupling[opp.link_col[pc]].emplace_back(own.link_col[oc], std::move(coef));
  }
  // Transpose of the opponent rows.
  std::vector<std::vector<std::pair<int64_t, int8_t>>> opp_cols(opp.num_cols());
  for (int64_t r = 0; r < opp.num_rows(); ++r) {
    for (int64_t k = opp.row_start[r]; k < opp.row_start[r + 1]; ++k) {
      opp_cols[opp.cols[k]].emplace_back(r, opp.coefs[k]);
    }
  }

  SparseLP lp;
  add_polytope_columns(lp, own);
  const int64_t v0 = lp.num_cols();
  for (int64_t r = 0; r < opp.num_rows(); ++r) {
    lp.col_names.push_back("v_" + std::to_string(r));
    lp.objective.emplace_back(opp.rhs[r]);
    lp.free.push_back(true);
  }
  add_polytope_rows(lp, own);
  const std::string ot = team_name(opp.team);
  for (int64_t j = 0; j < opp.num_cols(); ++j) {
    auto& terms = coupling[j];
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [col, coef] : terms) {
      if (sgn(coef) == 0) continue;
      lp.cols.push_back(col);
      lp.vals.push_back(-coef);
    }
    for (const auto& [r, coef] : opp_cols[j]) {
      lp.cols.push_back(v0 + r);
      lp.vals.emplace_back(coef);
    }
    lp.row_start.push_back(static_cast<int64_t>(lp.cols.size()));
    lp.sense.push_back(RowSense::kLe);
    lp.rhs.emplace_back(0);
    lp.row_names.push_back("d_" + ot + "_" + std::to_string(j));
  }
  lp.layout.own = own.team;
  lp.layout.own_cols = own.num_cols();
  lp.layout.dual_cols = opp.num_rows();
  lp.layout.own_rows = own.num_rows();
  lp.layout.coupling_rows = opp.num_cols();
  return lp;
}

SparseLP polytope_lp(const PolytopeDescription& desc,
                     const std::vector<std::pair<int, Rational>>& class_costs) {
  SparseLP lp;
  add_polytope_columns(lp, desc);
  for (const auto& [c, cost] : class_costs) {
    if (c < 0 || c >= desc.num_classes || desc.link_col[c] < 0) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "class " + std::to_string(c) + " has no link column");
    }
    lp.objective[desc.link_col[c]] += cost;
  }
  add_polytope_rows(lp, desc);
  lp.layout.own = desc.team;
  lp.layout.own_cols = desc.num_cols();
  lp.layout.own_rows = desc.num_rows();
  return lp;
}

}  // namespace teamdecomp
