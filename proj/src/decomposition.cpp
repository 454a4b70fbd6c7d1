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

#include "teamdecomp/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <utility>

namespace teamdecomp {

int Bag::position(int c) const {
  auto it = std::lower_bound(c_minus.begin(), c_minus.end(), c);
  if (it != c_minus.end() && *it == c) return static_cast<int>(it - c_minus.begin());
  it = std::lower_bound(c_plus.begin(), c_plus.end(), c);
  if (it != c_plus.end() && *it == c) {
    return static_cast<int>(c_minus.size() + (it - c_plus.begin()));
  }
  return -1;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

}  // namespace

std::vector<std::vector<int>> public_partition(const TeamView& view) {
  const int n = view.num_classes();
  // Depth-indexed ancestor arrays; classes are in breadth-first order so a
  // parent always precedes its child.
  std::vector<std::vector<int>> anc(n);
  for (int c = 0; c < n; ++c) {
    const int p = view.classes[c].parent;
    if (p >= 0) anc[c] = anc[p];
    anc[c].push_back(c);
  }
  UnionFind uf(n);
  for (const auto& cls : view.infoset_classes) {
    if (cls.size() < 2) continue;
    const auto& first = anc[cls[0]];
    for (size_t j = 1; j < cls.size(); ++j) {
      const auto& other = anc[cls[j]];
      if (other.size() != first.size()) {
        throw Error(ErrorCode::kInternal,
                    "infoset classes at different team-view depths");
      }
      for (size_t d = 0; d < first.size(); ++d) uf.unite(first[d], other[d]);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int c = 0; c < n; ++c) groups[uf.find(c)].push_back(c);
  std::vector<std::vector<int>> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
  return out;
}

PublicTreeDecomposition build_decomposition(const TeamView& view) {
  const int n = view.num_classes();
  PublicTreeDecomposition dec;
  dec.public_node.assign(n, -1);
  dec.minus_bag.assign(n, -1);
  dec.plus_bag.assign(n, -1);
  const auto groups = public_partition(view);
  for (size_t g = 0; g < groups.size(); ++g) {
    std::vector<int> plus;
    for (int c : groups[g]) {
      dec.public_node[c] = static_cast<int>(g);
      const auto& ch = view.classes[c].children;
      plus.insert(plus.end(), ch.begin(), ch.end());
    }
    const bool is_root = groups[g].front() == view.root();
    if (plus.empty() && !is_root) continue;
    std::sort(plus.begin(), plus.end());
    Bag bag;
    bag.c_minus = groups[g];
    bag.c_plus = std::move(plus);
    const int id = static_cast<int>(dec.bags.size());
    for (int c : bag.c_minus) dec.minus_bag[c] = id;
    for (int c : bag.c_plus) {
      if (dec.plus_bag[c] != -1) {
        throw Error(ErrorCode::kInternal,
                    "class " + std::to_string(c) + " lies in two C+ sets");
      }
      dec.plus_bag[c] = id;
    }
    dec.bags.push_back(std::move(bag));
  }
  if (dec.bags.empty() || dec.bags[0].c_minus.front() != view.root()) {
    throw Error(ErrorCode::kInternal, "root bag missing");
  }
  for (int b = 1; b < dec.num_bags(); ++b) {
    Bag& bag = dec.bags[b];
    int parent = -1;
    for (int c : bag.c_minus) {
      const int pb = dec.plus_bag[c];
      if (pb < 0 || (parent >= 0 && pb != parent)) {
        throw Error(ErrorCode::kInternal,
                    "parent bag of bag " + std::to_string(b) + " is not unique");
      }
      parent = pb;
    }
    bag.parent = parent;
    dec.bags[parent].children.push_back(b);
  }
  std::deque<int> queue{0};
  int seen = 0;
  while (!queue.empty()) {
    const int b = queue.front();
    queue.pop_front();
    ++seen;
    Bag& bag = dec.bags[b];
    if (static_cast<int>(dec.levels.size()) <= bag.level) dec.levels.emplace_back();
    dec.levels[bag.level].push_back(b);
    for (int child : bag.children) {
      dec.bags[child].level = bag.level + 1;
      queue.push_back(child);
    }
  }
  if (seen != dec.num_bags()) {
    throw Error(ErrorCode::kInternal, "bag graph is not a tree");
  }
  for (auto& level : dec.levels) std::sort(level.begin(), level.end());
  return dec;
}

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

bool verify_decomposition(const PublicTreeDecomposition& dec,
                          const TeamView& view, std::string* why) {
  const int nb = dec.num_bags();
  const int n = view.num_classes();
  if (nb == 0) return fail(why, "no bags");
  int roots = 0, root = -1;
  for (int b = 0; b < nb; ++b) {
    const Bag& bag = dec.bags[b];
    if (bag.parent < 0) {
      ++roots;
      root = b;
    } else if (bag.parent >= nb || bag.parent == b) {
      return fail(why, "bag " + std::to_string(b) + " has a bad parent");
    }
    if (!std::is_sorted(bag.c_minus.begin(), bag.c_minus.end()) ||
        !std::is_sorted(bag.c_plus.begin(), bag.c_plus.end())) {
      return fail(why, "bag " + std::to_string(b) + " is not sorted");
    }
  }
  if (roots != 1) return fail(why, "bag graph has " + std::to_string(roots) + " roots");
  {
    std::vector<std::vector<int>> kids(nb);
    for (int b = 0; b < nb; ++b) {
      if (dec.bags[b].parent >= 0) kids[dec.bags[b].parent].push_back(b);
    }
    std::vector<bool> seen(nb, false);
    std::deque<int> queue{root};
    seen[root] = true;
    int count = 0;
    while (!queue.empty()) {
      const int b = queue.front();
      queue.pop_front();
      ++count;
      for (int c : kids[b]) {
        if (seen[c]) return fail(why, "bag graph has a cycle");
        seen[c] = true;
        queue.push_back(c);
      }
    }
    if (count != nb) return fail(why, "bag graph is disconnected");
  }

  std::vector<std::vector<int>> bags_of(n);
  for (int b = 0; b < nb; ++b) {
    for (int c : dec.bags[b].c_minus) {
      if (c < 0 || c >= n) return fail(why, "class index out of range");
      bags_of[c].push_back(b);
    }
    for (int c : dec.bags[b].c_plus) {
      if (c < 0 || c >= n) return fail(why, "class index out of range");
      bags_of[c].push_back(b);
    }
  }
  for (int c = 0; c < n; ++c) {
    auto& list = bags_of[c];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      return fail(why, "class " + std::to_string(c) + " repeated inside a bag");
    }
    if (list.empty()) return fail(why, "class " + std::to_string(c) + " in no bag");
    int edges = 0;
    for (int b : list) {
      const int p = dec.bags[b].parent;
      if (p >= 0 && dec.bags[p].position(c) >= 0) ++edges;
    }
    if (edges != static_cast<int>(list.size()) - 1) {
      return fail(why, "bags holding class " + std::to_string(c) +
                           " are not connected");
    }
  }

  auto covered = [&](const std::vector<int>& set) {
    for (int b : bags_of[set[0]]) {
      bool all = true;
      for (size_t i = 1; i < set.size() && all; ++i) {
        all = dec.bags[b].position(set[i]) >= 0;
      }
      if (all) return true;
    }
    return false;
  };
  for (int c = 0; c < n; ++c) {
    const auto& ch = view.classes[c].children;
    if (ch.empty()) continue;
    std::vector<int> edge{c};
    edge.insert(edge.end(), ch.begin(), ch.end());
    if (!covered(edge)) {
      return fail(why, "flow constraint of class " + std::to_string(c) +
                           " is in no bag");
    }
  }
  for (size_t i = 0; i < view.infoset_classes.size(); ++i) {
    const auto& cls = view.infoset_classes[i];
    if (cls.size() < 2) continue;
    std::vector<int> all(cls);
    for (int c : cls) {
      const auto& ch = view.classes[c].children;
      all.insert(all.end(), ch.begin(), ch.end());
    }
    if (covered(all)) continue;
    const size_t actions = view.classes[cls[0]].children.size();
    for (size_t a = 0; a < cls.size(); ++a) {
      for (size_t b = a + 1; b < cls.size(); ++b) {
        for (size_t k = 0; k < actions; ++k) {
          std::vector<int> edge{cls[a], cls[b],
                                view.classes[cls[a]].children[k],
                                view.classes[cls[b]].children[k]};
          if (!covered(edge)) {
            return fail(why, "infoset constraint of infoset " +
                                 std::to_string(i) + " is in no bag");
          }
        }
      }
    }
  }
  return true;
}

WidthStats width_stats(const PublicTreeDecomposition& dec) {
  WidthStats s;
  int largest = 0;
  for (const Bag& bag : dec.bags) {
    largest = std::max(largest, bag.size());
    const int degree =
        static_cast<int>(bag.children.size()) + (bag.parent >= 0 ? 1 : 0);
    s.max_degree = std::max(s.max_degree, degree);
    s.minus_sizes.push_back(static_cast<int>(bag.c_minus.size()));
    s.plus_sizes.push_back(static_cast<int>(bag.c_plus.size()));
  }
  s.treewidth = largest - 1;
  s.width = s.treewidth + s.max_degree;
  return s;
}

JointSampler::JointSampler(const PublicTreeDecomposition& dec, int num_classes,
                           std::vector<BagDistribution> dists, uint64_t seed,
                           double tolerance)
    : dec_(&dec),
      num_classes_(num_classes),
      dists_(std::move(dists)),
      cond_(dec.num_bags()),
      parent_pos_(dec.num_bags()),
      rng_(seed) {
  const int nb = dec.num_bags();
  if (static_cast<int>(dists_.size()) != nb) {
    throw Error(ErrorCode::kInvalidArgument, "one distribution per bag required");
  }
  for (int b = 0; b < nb; ++b) {
    const BagDistribution& d = dists_[b];
    if (d.support.size() != d.probs.size()) {
      throw Error(ErrorCode::kInvalidArgument, "support/probability size mismatch");
    }
    double total = 0;
    for (size_t k = 0; k < d.support.size(); ++k) {
      if (static_cast<int>(d.support[k].size()) != dec.bags[b].size()) {
        throw Error(ErrorCode::kInvalidArgument, "assignment length differs from bag size");
      }
      if (d.probs[k] < -tolerance) {
        throw Error(ErrorCode::kInvalidArgument, "negative probability");
      }
      total += d.probs[k];
    }
    if (std::abs(total - 1.0) > tolerance * std::max<size_t>(1, d.probs.size())) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bag " + std::to_string(b) + " distribution does not sum to 1");
    }
  }
  for (const auto& level : dec.levels) {
    order_.insert(order_.end(), level.begin(), level.end());
  }
  for (int b : order_) {
    const Bag& bag = dec.bags[b];
    const size_t k = bag.c_minus.size();
    Conditional& cond = cond_[b];
    std::map<std::vector<uint8_t>, std::pair<std::vector<int>, std::vector<double>>> groups;
    const BagDistribution& d = dists_[b];
    for (size_t i = 0; i < d.support.size(); ++i) {
      if (d.probs[i] <= 0) continue;
      std::vector<uint8_t> key;
      if (bag.parent >= 0) key.assign(d.support[i].begin(), d.support[i].begin() + k);
      auto& g = groups[key];
      g.first.push_back(static_cast<int>(i));
      g.second.push_back(d.probs[i]);
    }
    for (auto& [key, g] : groups) {
      cond.keys.push_back(key);
      cond.choices.push_back(g.first);
      std::vector<double> cum(g.second.size());
      std::partial_sum(g.second.begin(), g.second.end(), cum.begin());
      cond.cumulative.push_back(std::move(cum));
    }
    if (bag.parent < 0) continue;
    const Bag& pb = dec.bags[bag.parent];
    for (int c : bag.c_minus) {
      const int pos = pb.position(c);
      if (pos < 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "bag " + std::to_string(b) + " shares a class its parent lacks");
      }
      parent_pos_[b].push_back(pos);
    }
    std::map<std::vector<uint8_t>, double> from_parent, from_child;
    const BagDistribution& pd = dists_[bag.parent];
    for (size_t i = 0; i < pd.support.size(); ++i) {
      std::vector<uint8_t> key;
      for (int pos : parent_pos_[b]) key.push_back(pd.support[i][pos]);
      from_parent[key] += pd.probs[i];
    }
    for (size_t i = 0; i < d.support.size(); ++i) {
      std::vector<uint8_t> key(d.support[i].begin(), d.support[i].begin() + k);
      from_child[key] += d.probs[i];
    }
    auto check = [&](const std::map<std::vector<uint8_t>, double>& a,
                     const std::map<std::vector<uint8_t>, double>& other) {
      for (const auto& [key, p] : a) {
        auto it = other.find(key);
        const double q = it == other.end() ? 0.0 : it->second;
        if (std::abs(p - q) > tolerance) {
          throw Error(ErrorCode::kMarginalMismatch,
                      "bags " + std::to_string(bag.parent) + " and " +
                          std::to_string(b) + " disagree on a shared pattern (" +
                          std::to_string(p) + " vs " + std::to_string(q) + ")");
        }
      }
    };
    check(from_parent, from_child);
    check(from_child, from_parent);
  }
}

JointDraw JointSampler::draw() {
  JointDraw out;
  out.x.assign(num_classes_, 0);
  out.bag_choice.assign(dec_->num_bags(), -1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int b : order_) {
    const Bag& bag = dec_->bags[b];
    const Conditional& cond = cond_[b];
    size_t g = 0;
    if (bag.parent >= 0) {
      const auto& parent_choice =
          dists_[bag.parent].support[out.bag_choice[bag.parent]];
      std::vector<uint8_t> key;
      for (int pos : parent_pos_[b]) key.push_back(parent_choice[pos]);
      auto it = std::lower_bound(cond.keys.begin(), cond.keys.end(), key);
      if (it == cond.keys.end() || *it != key) {
        throw Error(ErrorCode::kMarginalMismatch,
                    "bag " + std::to_string(b) + " has no mass on a parent pattern");
      }
      g = static_cast<size_t>(it - cond.keys.begin());
    }
    const auto& cum = cond.cumulative[g];
    const double u = unit(rng_) * cum.back();
    size_t idx = static_cast<size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
    if (idx >= cum.size()) idx = cum.size() - 1;
    const int choice = cond.choices[g][idx];
    out.bag_choice[b] = choice;
    const auto& assignment = dists_[b].support[choice];
    for (size_t i = 0; i < bag.c_minus.size(); ++i) {
      out.x[bag.c_minus[i]] = assignment[i];
    }
    for (size_t i = 0; i < bag.c_plus.size(); ++i) {
      out.x[bag.c_plus[i]] = assignment[bag.c_minus.size() + i];
    }
  }
  return out;
}

JointSampler sample_joint(const PublicTreeDecomposition& dec, int num_classes,
                          std::vector<BagDistribution> dists, uint64_t seed,
                          double tolerance) {
  return JointSampler(dec, num_classes, std::move(dists), seed, tolerance);
}

}  // namespace teamdecomp
