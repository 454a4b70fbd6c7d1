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

#include <algorithm>
#include <string>
#include <vector>

#include "teamdecomp/solver.hpp"

namespace teamdecomp {

namespace {

int64_t pure_plan_count(const GameTree& game, Team team, int64_t cap) {
  int64_t count = 1;
  for (const Infoset& inf : game.infosets()) {
    if (inf.team != team) continue;
    const int64_t a = static_cast<int64_t>(inf.actions.size());
    if (count > cap / std::max<int64_t>(a, 1)) return cap + 1;
    count *= a;
  }
  return count;
}

// Terminal-reach bit patterns of every pure plan of `team`, deduplicated.
std::vector<std::vector<uint8_t>> reach_patterns(const GameTree& game, Team team,
                                                 const std::vector<int>& terminals) {
  std::vector<int> own;
  for (int i = 0; i < game.num_infosets(); ++i) {
    if (game.infoset(i).team == team) own.push_back(i);
  }
  std::vector<int> choice(game.num_infosets(), 0);
  std::vector<uint8_t> reach(game.num_nodes());
  std::vector<std::vector<uint8_t>> out;
  while (true) {
    reach[0] = 1;
    for (int h = 1; h < game.num_nodes(); ++h) {
      const Node& p = game.node(game.node(h).parent);
      bool r = reach[game.node(h).parent];
      if (r && p.kind == NodeKind::kDecision && p.team == team) {
        r = choice[p.infoset] == game.child_index(h);
      }
      reach[h] = r;
    }
    std::vector<uint8_t> pattern(terminals.size());
    for (size_t k = 0; k < terminals.size(); ++k) pattern[k] = reach[terminals[k]];
    out.push_back(std::move(pattern));
    // Mixed-radix increment over the team's infosets.
    size_t k = 0;
    for (; k < own.size(); ++k) {
      const int i = own[k];
      if (++choice[i] < static_cast<int>(game.infoset(i).actions.size())) break;
      choice[i] = 0;
    }
    if (k == own.size()) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

OracleResult brute_force_value(const GameTree& game, int64_t cap) {
  OracleResult res;
  res.plus_pure = pure_plan_count(game, Team::kPlus, cap);
  res.minus_pure = pure_plan_count(game, Team::kMinus, cap);
  for (const auto& [team, count] : {std::pair{Team::kPlus, res.plus_pure},
                                    std::pair{Team::kMinus, res.minus_pure}}) {
    if (count > cap) {
      throw Error(ErrorCode::kCapExceeded, std::string("team ") + team_name(team) +
                                               " has more than " + std::to_string(cap) +
                                               " pure plans");
    }
  }
  std::vector<int> terminals;
  for (int h = 0; h < game.num_nodes(); ++h) {
    if (game.node(h).kind == NodeKind::kTerminal) terminals.push_back(h);
  }
  const std::vector<Rational> chance = game.chance_reach();
  std::vector<Rational> weight(terminals.size());
  for (size_t k = 0; k < terminals.size(); ++k) {
    weight[k] = chance[terminals[k]] * game.node(terminals[k]).payoff;
  }
  const auto rows = reach_patterns(game, Team::kPlus, terminals);
  const auto cols = reach_patterns(game, Team::kMinus, terminals);
  res.plus_distinct = static_cast<int64_t>(rows.size());
  res.minus_distinct = static_cast<int64_t>(cols.size());

  // max v  s.t.  v - Σ_i p_i A_ij ≤ 0 for every column j,  Σ p_i = 1.
  const int64_t nr = res.plus_distinct, nc = res.minus_distinct;
  SparseLP lp;
  for (int64_t i = 0; i < nr; ++i) {
    lp.col_names.push_back("p_" + std::to_string(i));
    lp.objective.emplace_back(0);
    lp.free.push_back(false);
  }
  lp.col_names.push_back("v");
  lp.objective.emplace_back(1);
  lp.free.push_back(true);
  lp.row_start.push_back(0);
  for (int64_t j = 0; j < nc; ++j) {
    for (int64_t i = 0; i < nr; ++i) {
      Rational a = 0;
      for (size_t k = 0; k < terminals.size(); ++k) {
        if (rows[i][k] && cols[j][k]) a += weight[k];
      }
      if (sgn(a) == 0) continue;
      lp.cols.push_back(i);
      lp.vals.push_back(-a);
    }
    lp.cols.push_back(nr);
    lp.vals.emplace_back(1);
    lp.row_start.push_back(static_cast<int64_t>(lp.cols.size()));
    lp.sense.push_back(RowSense::kLe);
    lp.rhs.emplace_back(0);
    lp.row_names.push_back("c_" + std::to_string(j));
  }
  for (int64_t i = 0; i < nr; ++i) {
    lp.cols.push_back(i);
    lp.vals.emplace_back(1);
  }
  lp.row_start.push_back(static_cast<int64_t>(lp.cols.size()));
  lp.sense.push_back(RowSense::kEq);
  lp.rhs.emplace_back(1);
  lp.row_names.push_back("simplex");
  res.value = solve(lp, ArithmeticMode::kExact).objective.exact;
  return res;
}

}  // namespace teamdecomp
