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

#include "teamdecomp/feasible_sets.hpp"

#include <algorithm>
#include <exception>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace teamdecomp {

std::vector<uint8_t> LocalFeasibleSet::assignment(int64_t k) const {
  std::vector<uint8_t> out(width);
  for (int i = 0; i < width; ++i) out[i] = bit(k, i) ? 1 : 0;
  return out;
}

int64_t LocalFeasibleSet::find(const std::vector<uint8_t>& a) const {
  if (static_cast<int>(a.size()) != width) return -1;
  std::vector<uint64_t> key(words, 0);
  for (int i = 0; i < width; ++i) {
    if (a[i]) key[i >> 6] |= uint64_t{1} << (63 - (i & 63));
  }
  int64_t lo = 0, hi = count();
  while (lo < hi) {
    const int64_t mid = (lo + hi) / 2;
    if (std::lexicographical_compare(row(mid), row(mid) + words, key.begin(), key.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count() && std::equal(key.begin(), key.end(), row(lo))) return lo;
  return -1;
}

std::vector<uint8_t> pure_plan_vector(const TeamView& view,
                                      const std::vector<int>& action_of_infoset) {
  std::vector<uint8_t> x(view.num_classes(), 0);
  if (x.empty()) return x;
  x[view.root()] = 1;
  for (int c = 0; c < view.num_classes(); ++c) {
    if (!x[c]) continue;
    const ViewClass& vc = view.classes[c];
    if (vc.kind == ClassKind::kTeamDecision) {
      const int a = action_of_infoset.at(vc.infoset);
      if (a < 0 || a >= static_cast<int>(vc.children.size())) {
        throw Error(ErrorCode::kInvalidArgument, "action index out of range");
      }
      x[vc.children[a]] = 1;
    } else {
      for (int ch : vc.children) x[ch] = 1;
    }
  }
  return x;
}

std::vector<uint8_t> restrict_to_bag(const Bag& bag, const std::vector<uint8_t>& x) {
  std::vector<uint8_t> out;
  out.reserve(bag.size());
  for (int c : bag.c_minus) out.push_back(x[c]);
  for (int c : bag.c_plus) out.push_back(x[c]);
  return out;
}

namespace {

inline void set_bit(uint64_t* row, int i) {
  row[i >> 6] |= uint64_t{1} << (63 - (i & 63));
}

inline bool get_bit(const uint64_t* row, int i) {
  return (row[i >> 6] >> (63 - (i & 63))) & 1u;
}

// Everything the enumeration needs about one bag, computed before expansion.
struct BagPlan {
  int bag = -1;
  int words = 0;
  int minus_words = 0;
  bool guard = false;  // C⁻ = B⁻: copy the parent set
  std::vector<std::vector<uint64_t>> patterns;  // deduplicated X_{C⁻}
  int64_t count = 0;                            // saturating
};

int64_t saturating_mul(int64_t a, int64_t b, int64_t limit) {
  if (a == 0 || b == 0) return 0;
  if (a > limit / b) return limit + 1;
  return std::min(a * b, limit + 1);
}

BagPlan plan_bag(const PublicTreeDecomposition& dec, const TeamView& view,
                 const std::vector<LocalFeasibleSet>& done, int b,
                 int64_t limit) {
  const Bag& bag = dec.bags[b];
  const int k = static_cast<int>(bag.c_minus.size());
  BagPlan plan;
  plan.bag = b;
  plan.words = (bag.size() + 63) / 64;
  plan.minus_words = (k + 63) / 64;
  if (bag.parent < 0) {
    std::vector<uint64_t> ones(plan.minus_words, 0);
    for (int i = 0; i < k; ++i) set_bit(ones.data(), i);
    plan.patterns.push_back(std::move(ones));
  } else {
    const Bag& pb = dec.bags[bag.parent];
    const LocalFeasibleSet& px = done[bag.parent];
    if (pb.c_minus == bag.c_minus) {
      plan.guard = true;
      plan.count = px.count();
      return plan;
    }
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i) pos[i] = pb.position(bag.c_minus[i]);
    plan.patterns.reserve(px.count());
    for (int64_t r = 0; r < px.count(); ++r) {
      std::vector<uint64_t> pat(plan.minus_words, 0);
      const uint64_t* row = px.row(r);
      for (int i = 0; i < k; ++i) {
        if (get_bit(row, pos[i])) set_bit(pat.data(), i);
      }
      plan.patterns.push_back(std::move(pat));
    }
    std::sort(plan.patterns.begin(), plan.patterns.end());
    plan.patterns.erase(std::unique(plan.patterns.begin(), plan.patterns.end()),
                        plan.patterns.end());
  }
  for (const auto& pat : plan.patterns) {
    std::vector<int> infosets;
    for (int i = 0; i < k; ++i) {
      const int c = bag.c_minus[i];
      if (get_bit(pat.data(), i) && view.is_decision(c)) {
        infosets.push_back(view.classes[c].infoset);
      }
    }
    std::sort(infosets.begin(), infosets.end());
    infosets.erase(std::unique(infosets.begin(), infosets.end()), infosets.end());
    int64_t n = 1;
    for (int I : infosets) {
      const int c = view.infoset_classes[I].front();
      n = saturating_mul(n, static_cast<int64_t>(view.classes[c].children.size()), limit);
    }
    plan.count = std::min(plan.count + n, limit + 1);
  }
  return plan;
}

LocalFeasibleSet expand_bag(const PublicTreeDecomposition& dec,
                            const TeamView& view,
                            const std::vector<LocalFeasibleSet>& done,
                            const BagPlan& plan) {
  const Bag& bag = dec.bags[plan.bag];
  const int k = static_cast<int>(bag.c_minus.size());
  LocalFeasibleSet out;
  out.bag = plan.bag;
  out.minus_size = k;
  out.width = bag.size();
  out.words = plan.words;
  if (plan.guard) {
    out.data = done[bag.parent].data;
    return out;
  }
  // Child positions per C⁻ entry.
  std::vector<std::vector<int>> child_pos(k);
  for (int i = 0; i < k; ++i) {
    for (int ch : view.classes[bag.c_minus[i]].children) {
      child_pos[i].push_back(bag.position(ch));
    }
  }
  const int words = plan.words;
  out.data.reserve(static_cast<size_t>(plan.count) * words);
  std::vector<uint64_t> base(words);
  for (const auto& pat : plan.patterns) {
    std::fill(base.begin(), base.end(), 0);
    // Infosets reached by this pattern, and for each the C⁻ entries that
    // follow its action.
    std::vector<int> infosets;
    std::vector<std::pair<int, int>> owner;  // (infoset, C⁻ index)
    for (int i = 0; i < k; ++i) {
      if (!get_bit(pat.data(), i)) continue;
      set_bit(base.data(), i);
      const int c = bag.c_minus[i];
      if (view.is_decision(c)) {
        infosets.push_back(view.classes[c].infoset);
        owner.emplace_back(view.classes[c].infoset, i);
      } else {
        for (int p : child_pos[i]) set_bit(base.data(), p);
      }
    }
    std::sort(infosets.begin(), infosets.end());
    infosets.erase(std::unique(infosets.begin(), infosets.end()), infosets.end());
    const int t = static_cast<int>(infosets.size());
    std::vector<int> radix(t), digit(t, 0);
    std::vector<std::vector<int>> entries(t);
    for (const auto& [I, i] : owner) {
      const int slot = static_cast<int>(
          std::lower_bound(infosets.begin(), infosets.end(), I) - infosets.begin());
      entries[slot].push_back(i);
    }
    for (int s = 0; s < t; ++s) {
      radix[s] = static_cast<int>(child_pos[entries[s][0]].size());
    }
    while (true) {
      const size_t at = out.data.size();
      out.data.insert(out.data.end(), base.begin(), base.end());
      uint64_t* row = out.data.data() + at;
      for (int s = 0; s < t; ++s) {
        for (int i : entries[s]) set_bit(row, child_pos[i][digit[s]]);
      }
      int s = t - 1;
      while (s >= 0 && ++digit[s] == radix[s]) digit[s--] = 0;
      if (s < 0) break;
    }
  }
  // Canonical order and dedup.
  const int64_t n = out.count();
  std::vector<int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const uint64_t* d = out.data.data();
  auto less = [&](int64_t a, int64_t b) {
    return std::lexicographical_compare(d + a * words, d + (a + 1) * words,
                                        d + b * words, d + (b + 1) * words);
  };
  if (!std::is_sorted(order.begin(), order.end(), less)) {
    std::sort(order.begin(), order.end(), less);
  }
  std::vector<uint64_t> sorted;
  sorted.reserve(out.data.size());
  for (int64_t r = 0; r < n; ++r) {
    const uint64_t* row = d + order[r] * words;
    if (r > 0 && std::equal(row, row + words, sorted.end() - words)) continue;
    sorted.insert(sorted.end(), row, row + words);
  }
  out.data = std::move(sorted);
  return out;
}

[[noreturn]] void explode(int bag, int64_t partial, int64_t cap) {
  throw Error(ErrorCode::kFeasibleSetExplosion,
              "feasible sets exceed cap " + std::to_string(cap) + " at bag " +
                  std::to_string(bag) + " (partial sum " +
                  std::to_string(partial) + ")");
}

void check_inputs(const PublicTreeDecomposition& dec, const TeamView& view) {
  if (static_cast<int>(dec.minus_bag.size()) != view.num_classes()) {
    throw Error(ErrorCode::kInvalidArgument, "decomposition was built for another view");
  }
}

}  // namespace

FeasibleSets enumerate_feasible(const PublicTreeDecomposition& dec,
                                const TeamView& view, int64_t cap) {
  check_inputs(dec, view);
  FeasibleSets out;
  out.sets.resize(dec.num_bags());
  // Parents precede children in bag order.
  for (int b = 0; b < dec.num_bags(); ++b) {
    BagPlan plan = plan_bag(dec, view, out.sets, b, cap);
    if (out.total + plan.count > cap) explode(b, out.total, cap);
    out.guard_hits += plan.guard ? 1 : 0;
    out.sets[b] = expand_bag(dec, view, out.sets, plan);
    out.total += out.sets[b].count();
  }
  return out;
}

FeasibleSets enumerate_feasible_parallel(const PublicTreeDecomposition& dec,
                                         const TeamView& view, int64_t cap) {
  check_inputs(dec, view);
  FeasibleSets out;
  out.sets.resize(dec.num_bags());
  for (const auto& level : dec.levels) {
    const int n = static_cast<int>(level.size());
    std::vector<BagPlan> plans(n);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      try {
        plans[i] = plan_bag(dec, view, out.sets, level[i], cap);
      } catch (...) {
#pragma omp critical
        failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    // Cap check in bag order keeps the error deterministic.
    int64_t running = out.total;
    for (int i = 0; i < n; ++i) {
      if (running + plans[i].count > cap) explode(level[i], running, cap);
      running += plans[i].count;
    }
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      try {
        out.sets[level[i]] = expand_bag(dec, view, out.sets, plans[i]);
      } catch (...) {
#pragma omp critical
        failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (int i = 0; i < n; ++i) {
      out.guard_hits += plans[i].guard ? 1 : 0;
      out.total += out.sets[level[i]].count();
    }
  }
  return out;
}

BigInt binomial_prefix(int n, int k) {
  BigInt sum = 0, term = 1;
  for (int i = 0; i <= std::min(n, k); ++i) {
    sum += term;
    term = term * (n - i) / (i + 1);
  }
  return sum;
}

BigInt public_action_bound(int t, int n) {
  if (t < 1 || n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "public_action_bound needs t, n >= 1");
  }
  BigInt three, two;
  mpz_ui_pow_ui(three.get_mpz_t(), 3, static_cast<unsigned long>(t));
  mpz_ui_pow_ui(two.get_mpz_t(), 2,
                static_cast<unsigned long>(t) * static_cast<unsigned long>(n - 1));
  return three * two;
}

ReachabilityStats reachability_stats(const FeasibleSets& sets,
                                     const PublicTreeDecomposition& dec,
                                     const TeamView& view) {
  const int nb = dec.num_bags();
  if (static_cast<int>(sets.sets.size()) != nb) {
    throw Error(ErrorCode::kInvalidArgument, "feasible sets do not match the decomposition");
  }
  ReachabilityStats s;
  s.w.assign(nb, 0);
  s.sizes.assign(nb, 0);
  s.bounds.resize(nb);
  for (const auto& level : dec.levels) {
    for (int b : level) {
      const Bag& bag = dec.bags[b];
      const LocalFeasibleSet& x = sets.sets[b];
      s.sizes[b] = x.count();
      s.sum += x.count();
      bool team_node = false;
      for (int c : bag.c_minus) team_node = team_node || view.is_decision(c);
      if (bag.parent < 0) {
        s.w[b] = 1;
      } else if (!team_node) {
        s.w[b] = s.w[bag.parent];
      } else {
        int w = 0;
        for (int64_t r = 0; r < x.count(); ++r) {
          int ones = 0;
          for (int i = x.minus_size; i < x.width; ++i) ones += x.bit(r, i);
          w = std::max(w, ones);
        }
        s.w[b] = w;
      }
      s.reachable_width = std::max(s.reachable_width, s.w[b]);
      s.bounds[b] = binomial_prefix(static_cast<int>(bag.c_plus.size()), s.w[b]);
      if (BigInt(static_cast<long>(s.sizes[b])) > s.bounds[b]) s.bounds_hold = false;
    }
  }
  return s;
}

}  // namespace teamdecomp
