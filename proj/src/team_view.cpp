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

#include "teamdecomp/team_view.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <utility>

namespace teamdecomp {

int TeamView::sequence_count() const {
  int count = 1;
  for (const ViewClass& c : classes) {
    if (c.kind == ClassKind::kTeamDecision) {
      count += static_cast<int>(c.children.size());
    }
  }
  return count;
}

int TeamView::max_depth() const {
  int d = 0;
  for (const ViewClass& c : classes) d = std::max(d, c.depth);
  return d;
}

int TeamView::num_padding() const {
  int count = 0;
  for (const ViewClass& c : classes) count += c.padding;
  return count;
}

uint64_t game_fingerprint(const GameTree& game) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  };
  for (const Node& n : game.nodes()) {
    mix(static_cast<uint64_t>(n.parent + 1));
    mix(static_cast<uint64_t>(n.kind));
    if (n.kind == NodeKind::kDecision) {
      mix(static_cast<uint64_t>(n.team));
      mix(static_cast<uint64_t>(n.infoset));
    }
  }
  return h;
}

namespace {

struct RawClass {
  ClassKind kind = ClassKind::kPassThrough;
  int infoset = -1;
  int sequence = -1;
  int seq_len = 0;
  int parent = -1;
  int parent_action = -1;
  int depth = 0;
  int anchor = 0;
  bool padding = false;
  std::vector<int> members;
};

}  // namespace

TeamView build_team_view(const GameTree& game, Team team) {
  const int n = game.num_nodes();

  // Team sequences as ids on a trie; id 0 is the empty sequence.
  std::map<std::tuple<int, int, int>, int> trie;
  std::vector<int> trie_parent{-1}, trie_infoset{-1}, trie_action{-1},
      trie_len{0};
  std::vector<int> seq(n, 0);
  for (int h = 1; h < n; ++h) {
    const int p = game.node(h).parent;
    if (game.is_team_decision(p, team)) {
      auto key = std::make_tuple(seq[p], game.node(p).infoset,
                                 game.child_index(h));
      auto it = trie.find(key);
      if (it == trie.end()) {
        const int id = static_cast<int>(trie_parent.size());
        trie_parent.push_back(seq[p]);
        trie_infoset.push_back(game.node(p).infoset);
        trie_action.push_back(game.child_index(h));
        trie_len.push_back(trie_len[seq[p]] + 1);
        it = trie.emplace(key, id).first;
      }
      seq[h] = it->second;
    } else {
      seq[h] = seq[p];
    }
  }

  // Raw classes: one sequence class per trie id, one decision class per
  // (sequence, infoset).
  const int num_seqs = static_cast<int>(trie_parent.size());
  std::vector<RawClass> raw(num_seqs);
  for (int s = 0; s < num_seqs; ++s) {
    raw[s].sequence = s;
    raw[s].seq_len = trie_len[s];
    raw[s].anchor = n;
  }
  std::map<std::pair<int, int>, int> decision_of;
  std::vector<int> raw_of_node(n);
  for (int h = 0; h < n; ++h) {
    const int s = seq[h];
    raw[s].anchor = std::min(raw[s].anchor, h);
    if (game.is_team_decision(h, team)) {
      const int infoset = game.node(h).infoset;
      auto it = decision_of.find({s, infoset});
      if (it == decision_of.end()) {
        RawClass d;
        d.kind = ClassKind::kTeamDecision;
        d.infoset = infoset;
        d.sequence = s;
        d.seq_len = trie_len[s];
        d.parent = s;
        d.anchor = h;
        it = decision_of.emplace(std::make_pair(s, infoset),
                                 static_cast<int>(raw.size()))
                 .first;
        raw.push_back(std::move(d));
      }
      raw[it->second].members.push_back(h);
      raw_of_node[h] = it->second;
    } else {
      raw[s].members.push_back(h);
      raw_of_node[h] = s;
    }
  }
  for (int s = 1; s < num_seqs; ++s) {
    raw[s].parent = decision_of.at({trie_parent[s], trie_infoset[s]});
    raw[s].parent_action = trie_action[s];
  }

  // Depths: a team infoset's decision classes must sit at one depth so that
  // the public relation can align their ancestors. Raise shallower ones and
  // pad with pass-through classes below their sequence class.
  std::vector<int> topo(raw.size());
  std::iota(topo.begin(), topo.end(), 0);
  std::stable_sort(topo.begin(), topo.end(), [&](int a, int b) {
    return std::make_pair(raw[a].seq_len, raw[a].kind == ClassKind::kTeamDecision) <
           std::make_pair(raw[b].seq_len, raw[b].kind == ClassKind::kTeamDecision);
  });
  std::vector<std::vector<int>> by_infoset(game.num_infosets());
  for (size_t c = 0; c < raw.size(); ++c) {
    if (raw[c].kind == ClassKind::kTeamDecision) {
      by_infoset[raw[c].infoset].push_back(static_cast<int>(c));
    }
  }
  for (int c : topo) {
    raw[c].depth = raw[c].parent < 0 ? 0 : raw[raw[c].parent].depth + 1;
  }
  const int iteration_cap = 4 * (game.max_depth() + 2) + 8;
  for (int iter = 0;; ++iter) {
    if (iter > iteration_cap) {
      throw Error(ErrorCode::kInternal, "team-view depth alignment diverged");
    }
    bool changed = false;
    for (const auto& cls : by_infoset) {
      int m = 0;
      for (int c : cls) m = std::max(m, raw[c].depth);
      for (int c : cls) {
        if (raw[c].depth != m) {
          raw[c].depth = m;
          changed = true;
        }
      }
    }
    for (int c : topo) {
      if (raw[c].parent < 0) continue;
      const int want = raw[raw[c].parent].depth + 1;
      if (raw[c].kind == ClassKind::kTeamDecision) {
        if (raw[c].depth < want) {
          raw[c].depth = want;
          changed = true;
        }
      } else if (raw[c].depth != want) {
        raw[c].depth = want;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::map<std::pair<int, int>, int> padding_of;  // (seq class, depth)
  const size_t num_real = raw.size();
  for (size_t c = 0; c < num_real; ++c) {
    if (raw[c].kind != ClassKind::kTeamDecision) continue;
    const int s = raw[c].parent;
    int above = s;
    for (int d = raw[s].depth + 1; d < raw[c].depth; ++d) {
      auto it = padding_of.find({s, d});
      if (it == padding_of.end()) {
        RawClass pad;
        pad.sequence = raw[s].sequence;
        pad.seq_len = raw[s].seq_len;
        pad.parent = above;
        pad.depth = d;
        pad.anchor = raw[s].anchor;
        pad.padding = true;
        it = padding_of.emplace(std::make_pair(s, d),
                                static_cast<int>(raw.size()))
                 .first;
        raw.push_back(std::move(pad));
      }
      above = it->second;
    }
    raw[c].parent = above;
  }

  // Canonical order.
  std::vector<int> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  auto rank = [&](const RawClass& r) {
    if (r.kind == ClassKind::kTeamDecision) return 2;
    return r.padding ? 1 : 0;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::make_tuple(raw[a].depth, raw[a].anchor, rank(raw[a]), a) <
           std::make_tuple(raw[b].depth, raw[b].anchor, rank(raw[b]), b);
  });
  std::vector<int> new_id(raw.size());
  for (size_t i = 0; i < order.size(); ++i) new_id[order[i]] = static_cast<int>(i);

  TeamView view;
  view.team = team;
  view.game_nodes = n;
  view.game_fingerprint = game_fingerprint(game);
  view.classes.resize(raw.size());
  for (size_t i = 0; i < order.size(); ++i) {
    RawClass& r = raw[order[i]];
    ViewClass& c = view.classes[i];
    c.kind = r.kind;
    c.infoset = r.infoset;
    c.parent = r.parent < 0 ? -1 : new_id[r.parent];
    c.parent_action = r.parent_action;
    c.depth = r.depth;
    c.sequence = r.sequence;
    c.padding = r.padding;
    c.members = std::move(r.members);
  }
  if (view.classes.empty() || view.classes[0].parent != -1) {
    throw Error(ErrorCode::kInternal, "team view root is not first");
  }
  view.node_class.resize(n);
  for (int h = 0; h < n; ++h) view.node_class[h] = new_id[raw_of_node[h]];

  for (int c = 1; c < view.num_classes(); ++c) {
    view.classes[view.classes[c].parent].children.push_back(c);
  }
  for (ViewClass& c : view.classes) {
    if (c.kind != ClassKind::kTeamDecision) continue;
    std::sort(c.children.begin(), c.children.end(), [&](int a, int b) {
      return view.classes[a].parent_action < view.classes[b].parent_action;
    });
  }

  view.infoset_classes.assign(game.num_infosets(), {});
  for (int c = 0; c < view.num_classes(); ++c) {
    const ViewClass& vc = view.classes[c];
    if (vc.kind == ClassKind::kTeamDecision) {
      view.infoset_classes[vc.infoset].push_back(c);
    }
  }

  // Homogeneity.
  for (int c = 0; c < view.num_classes(); ++c) {
    const ViewClass& vc = view.classes[c];
    for (int h : vc.members) {
      const bool team_decision = game.is_team_decision(h, team);
      if (vc.kind == ClassKind::kTeamDecision &&
          (!team_decision || game.node(h).infoset != vc.infoset)) {
        throw Error(ErrorCode::kHeterogeneousClass,
                    "class " + std::to_string(c) + " mixes node " +
                        std::to_string(h) + " into infoset " +
                        std::to_string(vc.infoset));
      }
      if (vc.kind == ClassKind::kPassThrough && team_decision) {
        throw Error(ErrorCode::kHeterogeneousClass,
                    "pass-through class " + std::to_string(c) +
                        " contains team decision node " + std::to_string(h));
      }
    }
    if (vc.kind == ClassKind::kTeamDecision) {
      const size_t actions = game.infoset(vc.infoset).actions.size();
      if (vc.children.size() != actions) {
        throw Error(ErrorCode::kInternal,
                    "decision class " + std::to_string(c) +
                        " does not have one child per action");
      }
    }
  }
  return view;
}

Rational PayoffForm::checksum() const {
  Rational sum = 0;
  for (const PayoffTriple& t : triples) sum += t.coef;
  return sum;
}

PayoffForm payoff_form(const GameTree& game, const TeamView& vp,
                       const TeamView& vm) {
  if (vp.team != Team::kPlus || vm.team != Team::kMinus) {
    throw Error(ErrorCode::kProvenance, "payoff_form expects (Plus, Minus) views");
  }
  const uint64_t fp = game_fingerprint(game);
  if (vp.game_nodes != game.num_nodes() || vm.game_nodes != game.num_nodes() ||
      vp.game_fingerprint != fp || vm.game_fingerprint != fp) {
    throw Error(ErrorCode::kProvenance, "team views were built from another game");
  }
  const std::vector<Rational> reach = game.chance_reach();
  std::map<std::pair<int, int>, Rational> acc;
  for (int h = 0; h < game.num_nodes(); ++h) {
    const Node& node = game.node(h);
    if (node.kind != NodeKind::kTerminal) continue;
    acc[{vp.node_class[h], vm.node_class[h]}] += node.payoff * reach[h];
  }
  PayoffForm form;
  for (auto& [key, coef] : acc) {
    if (coef == 0) continue;
    form.triples.push_back(PayoffTriple{key.first, key.second, coef});
  }
  return form;
}

std::vector<int> terminal_classes(const GameTree& game, const TeamView& view) {
  std::vector<int> out;
  for (int h = 0; h < game.num_nodes(); ++h) {
    if (game.node(h).kind == NodeKind::kTerminal) {
      out.push_back(view.node_class[h]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace teamdecomp
