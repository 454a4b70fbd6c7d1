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

#ifndef TEAMDECOMP_GAME_HPP_
#define TEAMDECOMP_GAME_HPP_

#include <string>
#include <vector>

#include "teamdecomp/common.hpp"

namespace teamdecomp {

enum class NodeKind { kChance, kDecision, kTerminal };
enum class Team { kPlus, kMinus };

inline Team opponent(Team t) {
  return t == Team::kPlus ? Team::kMinus : Team::kPlus;
}
const char* team_name(Team t);  // "plus" / "minus"

struct Node {
  int parent = -1;
  std::string action;  // label of the edge from the parent
  NodeKind kind = NodeKind::kTerminal;
  int depth = 0;
  // Decision nodes.
  Team team = Team::kPlus;
  int player = -1;
  int infoset = -1;
  // Chance nodes: one probability per child, in child order.
  std::vector<Rational> probs;
  // Terminal nodes: payoff to team Plus.
  Rational payoff;
  std::vector<int> children;
};

struct Infoset {
  Team team = Team::kPlus;
  int player = -1;
  std::vector<int> nodes;
  std::vector<std::string> actions;
};

// Extensive-form team game. Node 0 is the root; nodes are stored in
// breadth-first order with children in emission order.
class GameTree {
 public:
  GameTree() = default;

  // Takes nodes with parent, action, kind and kind-specific fields set.
  // Fills children, depth and the infoset table. Throws kValidation for
  // structural problems that make the tree unusable (bad parent indices,
  // cycles, missing infoset ids); semantic checks live in validate().
  static GameTree from_nodes(std::vector<Node> nodes);

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int h) const { return nodes_[h]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int num_infosets() const { return static_cast<int>(infosets_.size()); }
  const Infoset& infoset(int id) const { return infosets_[id]; }
  const std::vector<Infoset>& infosets() const { return infosets_; }

  bool is_team_decision(int h, Team t) const {
    const Node& n = nodes_[h];
    return n.kind == NodeKind::kDecision && n.team == t;
  }
  // Index of `child` within its parent's children.
  int child_index(int child) const { return child_index_[child]; }
  int num_terminals() const;
  int max_depth() const;
  // Number of distinct players owning infosets for team `t`.
  int num_players(Team t) const;

  // Chance reach probability p(h): product of chance probabilities on the
  // root-to-h path.
  std::vector<Rational> chance_reach() const;

 private:
  std::vector<Node> nodes_;
  std::vector<Infoset> infosets_;
  std::vector<int> child_index_;
};

struct Violation {
  std::string kind;  // e.g. "thin-infoset", "perfect-recall"
  std::string message;
  int node = -1;
  int infoset = -1;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary(size_t max_items = 10) const;
};

ValidationReport validate(const GameTree& game);

struct SeqItem {
  int infoset = -1;
  int action = -1;  // index into the infoset's action list
  bool operator==(const SeqItem& o) const {
    return infoset == o.infoset && action == o.action;
  }
};
using Sequence = std::vector<SeqItem>;

// Team sequence: (infoset, action) pairs of team `team` strictly above
// `node`, root first.
Sequence team_sequence(const GameTree& game, Team team, int node);

// Same restricted to one player of the team.
Sequence player_sequence(const GameTree& game, Team team, int player,
                         int node);

}  // namespace teamdecomp

#endif  // TEAMDECOMP_GAME_HPP_
