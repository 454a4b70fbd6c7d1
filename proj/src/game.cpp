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

#include "teamdecomp/game.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>
#include <utility>

namespace teamdecomp {

const char* team_name(Team t) { return t == Team::kPlus ? "plus" : "minus"; }

GameTree GameTree::from_nodes(std::vector<Node> nodes) {
  if (nodes.empty()) throw Error(ErrorCode::kValidation, "game has no nodes");
  if (nodes[0].parent != -1) {
    throw Error(ErrorCode::kValidation, "node 0 must be the root");
  }
  GameTree g;
  const int n = static_cast<int>(nodes.size());
  g.child_index_.assign(n, -1);
  int max_infoset = -1;
  for (int h = 0; h < n; ++h) {
    Node& node = nodes[h];
    node.children.clear();
    if (h > 0) {
      if (node.parent < 0 || node.parent >= h) {
        throw Error(ErrorCode::kValidation,
                    "node " + std::to_string(h) +
                        " has parent index not preceding it");
      }
    }
    if (node.kind == NodeKind::kDecision) {
      if (node.infoset < 0) {
        throw Error(ErrorCode::kValidation,
                    "decision node " + std::to_string(h) + " has no infoset");
      }
      max_infoset = std::max(max_infoset, node.infoset);
    }
  }
  for (int h = 1; h < n; ++h) {
    Node& parent = nodes[nodes[h].parent];
    g.child_index_[h] = static_cast<int>(parent.children.size());
    parent.children.push_back(h);
    nodes[h].depth = parent.depth + 1;
  }
  nodes[0].depth = 0;
  g.infosets_.assign(max_infoset + 1, Infoset{});
  for (int h = 0; h < n; ++h) {
    const Node& node = nodes[h];
    if (node.kind != NodeKind::kDecision) continue;
    Infoset& info = g.infosets_[node.infoset];
    if (info.nodes.empty()) {
      info.team = node.team;
      info.player = node.player;
      for (int c : node.children) info.actions.push_back(nodes[c].action);
    }
    info.nodes.push_back(h);
  }
  g.nodes_ = std::move(nodes);
  return g;
}

int GameTree::num_terminals() const {
  int count = 0;
  for (const Node& n : nodes_) count += n.kind == NodeKind::kTerminal;
  return count;
}

int GameTree::max_depth() const {
  int d = 0;
  for (const Node& n : nodes_) d = std::max(d, n.depth);
  return d;
}

int GameTree::num_players(Team t) const {
  std::set<int> players;
  for (const Infoset& info : infosets_) {
    if (!info.nodes.empty() && info.team == t) players.insert(info.player);
  }
  return static_cast<int>(players.size());
}

std::vector<Rational> GameTree::chance_reach() const {
  std::vector<Rational> p(nodes_.size());
  p[0] = 1;
  for (size_t h = 1; h < nodes_.size(); ++h) {
    const Node& parent = nodes_[nodes_[h].parent];
    if (parent.kind == NodeKind::kChance) {
      p[h] = p[nodes_[h].parent] * parent.probs[child_index_[h]];
    } else {
      p[h] = p[nodes_[h].parent];
    }
  }
  return p;
}

std::string ValidationReport::summary(size_t max_items) const {
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (size_t i = 0; i < violations.size() && i < max_items; ++i) {
    os << "\n  [" << violations[i].kind << "] " << violations[i].message;
  }
  return os.str();
}

namespace {

void add(ValidationReport& r, const std::string& kind, const std::string& msg,
         int node = -1, int infoset = -1) {
  r.violations.push_back(Violation{kind, msg, node, infoset});
}

std::string at_node(int h) { return "node " + std::to_string(h); }
std::string at_infoset(int i) { return "infoset " + std::to_string(i); }

}  // namespace

ValidationReport validate(const GameTree& game) {
  ValidationReport r;
  const int n = game.num_nodes();
  for (int h = 0; h < n; ++h) {
    const Node& node = game.node(h);
    if (h > 0 && node.depth != game.node(node.parent).depth + 1) {
      add(r, "depth", at_node(h) + ": depth is not parent depth + 1", h);
    }
    std::unordered_set<std::string> labels;
    for (int c : node.children) {
      if (!labels.insert(game.node(c).action).second) {
        add(r, "duplicate-action",
            at_node(h) + ": duplicate action label '" + game.node(c).action +
                "'",
            h);
      }
    }
    switch (node.kind) {
      case NodeKind::kChance: {
        if (node.children.empty()) {
          add(r, "chance", at_node(h) + ": chance node without children", h);
        }
        if (node.probs.size() != node.children.size()) {
          add(r, "chance",
              at_node(h) + ": probability count differs from child count", h);
          break;
        }
        Rational sum = 0;
        for (const Rational& p : node.probs) {
          if (p < 0) add(r, "chance", at_node(h) + ": negative probability", h);
          sum += p;
        }
        if (sum != 1) {
          add(r, "chance",
              at_node(h) + ": probabilities sum to " + format_rational(sum),
              h);
        }
        break;
      }
      case NodeKind::kDecision:
        if (node.children.empty()) {
          add(r, "decision", at_node(h) + ": decision node without actions",
              h);
        }
        if (node.player < 0) {
          add(r, "decision", at_node(h) + ": missing player id", h);
        }
        break;
      case NodeKind::kTerminal:
        if (!node.children.empty()) {
          add(r, "terminal", at_node(h) + ": terminal node with children", h);
        }
        break;
    }
  }

  for (int i = 0; i < game.num_infosets(); ++i) {
    const Infoset& info = game.infoset(i);
    if (info.nodes.empty()) {
      add(r, "empty-infoset", at_infoset(i) + " has no nodes", -1, i);
      continue;
    }
    const Node& first = game.node(info.nodes[0]);
    for (int h : info.nodes) {
      const Node& node = game.node(h);
      if (node.team != first.team || node.player != first.player) {
        add(r, "infoset-owner",
            at_infoset(i) + ": nodes owned by different players", h, i);
      }
      if (node.depth != first.depth) {
        add(r, "thin-infoset",
            at_infoset(i) + ": nodes at depths " +
                std::to_string(first.depth) + " and " +
                std::to_string(node.depth),
            h, i);
      }
      bool same_actions = node.children.size() == info.actions.size();
      for (size_t a = 0; same_actions && a < info.actions.size(); ++a) {
        same_actions = game.node(node.children[a]).action == info.actions[a];
      }
      if (!same_actions) {
        add(r, "infoset-actions",
            at_infoset(i) + ": nodes with different action lists", h, i);
      }
    }
  }
  if (!r.ok()) return r;

  // Per-player perfect recall via sequence ids on a trie.
  std::set<std::pair<int, int>> owners;  // (team, player)
  for (const Infoset& info : game.infosets()) {
    owners.insert({static_cast<int>(info.team), info.player});
  }
  for (const auto& [team_id, player] : owners) {
    const Team team = static_cast<Team>(team_id);
    std::map<std::tuple<int, int, int>, int> trie;
    std::vector<int> seq(n, 0);
    for (int h = 1; h < n; ++h) {
      const Node& parent = game.node(game.node(h).parent);
      const int ps = seq[game.node(h).parent];
      if (parent.kind == NodeKind::kDecision && parent.team == team &&
          parent.player == player) {
        auto key = std::make_tuple(ps, parent.infoset, game.child_index(h));
        auto it = trie.find(key);
        if (it == trie.end()) {
          it = trie.emplace(key, static_cast<int>(trie.size()) + 1).first;
        }
        seq[h] = it->second;
      } else {
        seq[h] = ps;
      }
    }
    for (int i = 0; i < game.num_infosets(); ++i) {
      const Infoset& info = game.infoset(i);
      if (info.team != team || info.player != player) continue;
      for (int h : info.nodes) {
        if (seq[h] != seq[info.nodes[0]]) {
          add(r, "perfect-recall",
              at_infoset(i) + ": player " + std::to_string(player) +
                  " of team " + team_name(team) +
                  " has different sequences at nodes " +
                  std::to_string(info.nodes[0]) + " and " + std::to_string(h),
              h, i);
          break;
        }
      }
    }
  }
  return r;
}

namespace {

Sequence sequence_filtered(const GameTree& game, Team team, int player,
                           int node) {
  if (node < 0 || node >= game.num_nodes()) {
    throw Error(ErrorCode::kInvalidArgument,
                "node index " + std::to_string(node) + " out of range");
  }
  Sequence s;
  for (int h = node; game.node(h).parent >= 0; h = game.node(h).parent) {
    const Node& parent = game.node(game.node(h).parent);
    if (parent.kind == NodeKind::kDecision && parent.team == team &&
        (player < 0 || parent.player == player)) {
      s.push_back(SeqItem{parent.infoset, game.child_index(h)});
    }
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

Sequence team_sequence(const GameTree& game, Team team, int node) {
  return sequence_filtered(game, team, -1, node);
}

Sequence player_sequence(const GameTree& game, Team team, int player,
                         int node) {
  return sequence_filtered(game, team, player, node);
}

}  // namespace teamdecomp
