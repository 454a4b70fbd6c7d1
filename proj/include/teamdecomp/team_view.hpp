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

#ifndef TEAMDECOMP_TEAM_VIEW_HPP_
#define TEAMDECOMP_TEAM_VIEW_HPP_

#include <cstdint>
#include <vector>

#include "teamdecomp/game.hpp"

namespace teamdecomp {

enum class ClassKind { kTeamDecision, kPassThrough };

struct ViewClass {
  ClassKind kind = ClassKind::kPassThrough;
  int infoset = -1;        // team decision classes only
  int parent = -1;
  int parent_action = -1;  // action index when the parent is a decision class
  int depth = 0;
  // Team sequence id; classes sharing it carry the same team sequence.
  int sequence = -1;
  bool padding = false;    // inserted to align an infoset's classes by depth
  std::vector<int> members;   // original node indices, ascending
  std::vector<int> children;  // decision: one per action in action order
};

// Quotient of the game tree as seen by one team. Sequence classes gather
// every non-team node with a given team sequence; decision classes gather a
// team infoset's nodes that share a team sequence. Classes are ordered
// breadth-first by depth, then by smallest associated node index.
struct TeamView {
  Team team = Team::kPlus;
  std::vector<ViewClass> classes;
  std::vector<int> node_class;  // ν: node -> class
  // Team infoset id -> decision classes (ascending). Empty for infosets of
  // the other team.
  std::vector<std::vector<int>> infoset_classes;
  int game_nodes = 0;
  uint64_t game_fingerprint = 0;

  int num_classes() const { return static_cast<int>(classes.size()); }
  int root() const { return 0; }
  bool is_decision(int c) const {
    return classes[c].kind == ClassKind::kTeamDecision;
  }
  // 1 + Σ over decision classes of |A(I)|: the number of team sequences.
  int sequence_count() const;
  int max_depth() const;
  int num_padding() const;
};

// Structural fingerprint of a game, used to tie views to their game.
uint64_t game_fingerprint(const GameTree& game);

TeamView build_team_view(const GameTree& game, Team team);

struct PayoffTriple {
  int plus_class = -1;
  int minus_class = -1;
  Rational coef;
};

// Bilinear payoff u(x, y) = Σ coef · x(plus_class) · y(minus_class).
// Triples are aggregated by class pair, sorted by (plus, minus), and zero
// coefficients are dropped.
struct PayoffForm {
  std::vector<PayoffTriple> triples;
  Rational checksum() const;
};

PayoffForm payoff_form(const GameTree& game, const TeamView& vp,
                       const TeamView& vm);

// Classes of `view` that contain at least one terminal.
std::vector<int> terminal_classes(const GameTree& game, const TeamView& view);

}  // namespace teamdecomp

#endif  // TEAMDECOMP_TEAM_VIEW_HPP_
