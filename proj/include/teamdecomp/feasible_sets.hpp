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

#ifndef TEAMDECOMP_FEASIBLE_SETS_HPP_
#define TEAMDECOMP_FEASIBLE_SETS_HPP_

#include <cstdint>
#include <vector>

#include "teamdecomp/common.hpp"
#include "teamdecomp/decomposition.hpp"

namespace teamdecomp {

inline constexpr int64_t kDefaultFeasibleCap = 50'000'000;

// X_C for one bag. Assignments are packed bit-vectors over C = C⁻ ++ C⁺;
// bit i lives in word i/64 at position 63 - i%64, so comparing words
// compares the bit strings lexicographically. Rows are sorted and unique.
struct LocalFeasibleSet {
  int bag = -1;
  int minus_size = 0;  // |C⁻|
  int width = 0;       // |C|
  int words = 0;       // words per assignment
  std::vector<uint64_t> data;

  int64_t count() const {
    return words == 0 ? 0 : static_cast<int64_t>(data.size()) / words;
  }
  const uint64_t* row(int64_t k) const { return data.data() + k * words; }
  bool bit(int64_t k, int i) const {
    return (row(k)[i >> 6] >> (63 - (i & 63))) & 1u;
  }
  std::vector<uint8_t> assignment(int64_t k) const;
  // Index of an assignment (indexed like the bag), or -1.
  int64_t find(const std::vector<uint8_t>& assignment) const;
};

struct FeasibleSets {
  std::vector<LocalFeasibleSet> sets;  // indexed by bag
  int64_t total = 0;                   // Σ_C |X_C|
  int64_t guard_hits = 0;              // times C⁻ = B⁻ fired
};

// Feasible-set enumeration over the whole decomposition. Throws kFeasibleSetExplosion
// once Σ_C |X_C| would exceed `cap`.
FeasibleSets enumerate_feasible(const PublicTreeDecomposition& dec,
                                const TeamView& view,
                                int64_t cap = kDefaultFeasibleCap);

// Bags of one level run concurrently under OpenMP. Output is identical to
// the serial version.
FeasibleSets enumerate_feasible_parallel(const PublicTreeDecomposition& dec,
                                         const TeamView& view,
                                         int64_t cap = kDefaultFeasibleCap);

struct ReachabilityStats {
  std::vector<int> w;          // per bag
  std::vector<int64_t> sizes;  // per bag |X_C|
  std::vector<BigInt> bounds;  // per bag Σ_{i ≤ w(C)} binom(|C⁺|, i)
  int reachable_width = 0;
  int64_t sum = 0;
  bool bounds_hold = true;
};

ReachabilityStats reachability_stats(const FeasibleSets& sets,
                                     const PublicTreeDecomposition& dec,
                                     const TeamView& view);

// 0/1 value per team-view class of the pure plan picking
// action_of_infoset[I] at every team infoset I.
std::vector<uint8_t> pure_plan_vector(const TeamView& view,
                                      const std::vector<int>& action_of_infoset);

// Restriction of a class vector to the bag's C⁻ ++ C⁺ order.
std::vector<uint8_t> restrict_to_bag(const Bag& bag, const std::vector<uint8_t>& x);

// Σ_{i=0}^{k} binom(n, i).
BigInt binomial_prefix(int n, int k);

// 3^t · 2^{t(n-1)}.
BigInt public_action_bound(int t, int n);

}  // namespace teamdecomp

#endif  // TEAMDECOMP_FEASIBLE_SETS_HPP_
