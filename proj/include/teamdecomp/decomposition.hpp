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

#ifndef TEAMDECOMP_DECOMPOSITION_HPP_
#define TEAMDECOMP_DECOMPOSITION_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "teamdecomp/team_view.hpp"

namespace teamdecomp {

struct Bag {
  std::vector<int> c_minus;  // sorted class indices
  std::vector<int> c_plus;   // sorted children of c_minus members
  int parent = -1;
  std::vector<int> children;
  int level = 0;  // distance from the root bag

  int size() const { return static_cast<int>(c_minus.size() + c_plus.size()); }
  // Position of class c within C = C⁻ ++ C⁺, or -1.
  int position(int c) const;
};

// Bags exist for the root's public node and for every public node with at
// least one child. Leaf classes therefore appear only in their parent bag.
struct PublicTreeDecomposition {
  std::vector<Bag> bags;         // bag 0 is the root bag
  std::vector<int> public_node;  // class -> public node id
  std::vector<int> minus_bag;    // class -> bag holding it in C⁻, or -1
  std::vector<int> plus_bag;     // class -> bag holding it in C⁺, or -1
  std::vector<std::vector<int>> levels;  // bag ids grouped by level

  int num_bags() const { return static_cast<int>(bags.size()); }
};

// Connected components of the public relation, each sorted, ordered by
// (depth, smallest class).
std::vector<std::vector<int>> public_partition(const TeamView& view);

PublicTreeDecomposition build_decomposition(const TeamView& view);

// Checks tree shape, coverage of every flow and infoset hyperedge of the
// team-view constraint system, and connectivity of every class's bags.
// Only `bags` is consulted. On failure `why` (if given) says what broke.
bool verify_decomposition(const PublicTreeDecomposition& dec,
                          const TeamView& view, std::string* why = nullptr);

struct WidthStats {
  int treewidth = 0;   // max |C| - 1
  int max_degree = 0;  // bag-tree degree
  int width = 0;       // treewidth + max_degree
  std::vector<int> minus_sizes;
  std::vector<int> plus_sizes;
};

WidthStats width_stats(const PublicTreeDecomposition& dec);

// Distribution over assignments of one bag, each indexed like the bag
// (C⁻ then C⁺).
struct BagDistribution {
  std::vector<std::vector<uint8_t>> support;
  std::vector<double> probs;
};

struct JointDraw {
  std::vector<uint8_t> x;       // value per team-view class
  std::vector<int> bag_choice;  // support index chosen in each bag
};

// Junction-tree sampler: draw the root bag, then each child bag conditioned
// on the values it shares with its parent (exactly its C⁻).
class JointSampler {
 public:
  JointSampler(const PublicTreeDecomposition& dec, int num_classes,
               std::vector<BagDistribution> dists, uint64_t seed,
               double tolerance);
  JointDraw draw();

 private:
  struct Conditional {
    std::vector<std::vector<uint8_t>> keys;  // C⁻ patterns, sorted
    std::vector<std::vector<int>> choices;   // support indices per key
    std::vector<std::vector<double>> cumulative;
  };
  const PublicTreeDecomposition* dec_;
  int num_classes_;
  std::vector<BagDistribution> dists_;
  std::vector<Conditional> cond_;
  std::vector<std::vector<int>> parent_pos_;  // C⁻ positions inside parent
  std::vector<int> order_;
  std::mt19937_64 rng_;
};

// Throws kMarginalMismatch when a parent/child pair disagrees on the
// distribution of the child's C⁻ by more than `tolerance` per pattern.
JointSampler sample_joint(const PublicTreeDecomposition& dec, int num_classes,
                          std::vector<BagDistribution> dists, uint64_t seed,
                          double tolerance = 1e-9);

}  // namespace teamdecomp

#endif  // TEAMDECOMP_DECOMPOSITION_HPP_
