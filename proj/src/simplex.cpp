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

#include "teamdecomp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "sparse_lu.hpp"

namespace teamdecomp {

namespace {

enum class Outcome { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kBreakdown };

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kOptimal: return "optimal";
    case Outcome::kInfeasible: return "infeasible";
    case Outcome::kUnbounded: return "unbounded";
    case Outcome::kIterationLimit: return "iteration limit";
    case Outcome::kBreakdown: return "numerical breakdown";
  }
  return "?";
}

constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr int kStallLimit = 60;
constexpr int kMaxPerturbations = 6;

// Computational form: minimize cᵀz over z = (x, r) with A x - r = 0 and
// bounds on every variable. Logical r_i carries the row's sense and rhs.
template <class T>
class Simplex {
 public:
  using S = Scalar<T>;

  Simplex(const SparseLP& lp, const SimplexOptions& opt)
      : opt_(opt),
        m_(static_cast<int>(lp.num_rows())),
        n_(static_cast<int>(lp.num_cols())),
        total_(m_ + n_) {
    exact_ = S::kExact;
    ftol_ = exact_ ? 0.0 : opt.feasibility_tol;
    htol_ = 0.5 * ftol_;
    dtol_ = exact_ ? 0.0 : opt.optimality_tol;
    std::vector<int64_t> count(n_ + 1, 0);
    for (int64_t k = 0; k < static_cast<int64_t>(lp.cols.size()); ++k) ++count[lp.cols[k] + 1];
    for (int j = 0; j < n_; ++j) count[j + 1] += count[j];
    col_start_ = count;
    col_row_.resize(lp.cols.size());
    col_val_.resize(lp.cols.size());
    std::vector<int64_t> fill(col_start_.begin(), col_start_.end() - 1);
    for (int r = 0; r < m_; ++r) {
      for (int64_t k = lp.row_start[r]; k < lp.row_start[r + 1]; ++k) {
        const int64_t at = fill[lp.cols[k]]++;
        col_row_[at] = r;
        col_val_[at] = S::from(lp.vals[k]);
      }
    }
    cost_.assign(total_, T(0));
    lo_.assign(total_, T(0));
    up_.assign(total_, T(0));
    has_lo_.assign(total_, 0);
    has_up_.assign(total_, 0);
    for (int j = 0; j < n_; ++j) {
      cost_[j] = -S::from(lp.objective[j]);
      has_lo_[j] = lp.free[j] ? 0 : 1;
    }
    for (int i = 0; i < m_; ++i) {
      const int j = n_ + i;
      const T b = S::from(lp.rhs[i]);
      if (lp.sense[i] != RowSense::kGe) {
        up_[j] = b;
        has_up_[j] = 1;
      }
      if (lp.sense[i] != RowSense::kLe) {
        lo_[j] = b;
        has_lo_[j] = 1;
      }
    }
    orig_lo_ = lo_;
    orig_up_ = up_;
    slack_basis();
  }

  void slack_basis() {
    status_.assign(total_, BasisStatus::kLower);
    head_.resize(m_);
    where_.assign(total_, -1);
    x_.assign(total_, T(0));
    for (int j = 0; j < n_; ++j) set_nonbasic_default(j);
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      where_[n_ + i] = i;
      status_[n_ + i] = BasisStatus::kBasic;
    }
  }

  // Returns false when the status vector does not describe a basis.
  bool load_basis(const std::vector<BasisStatus>& st) {
    if (static_cast<int>(st.size()) != total_) return false;
    int basics = 0;
    for (auto s : st) basics += s == BasisStatus::kBasic;
    if (basics != m_) return false;
    status_ = st;
    where_.assign(total_, -1);
    int k = 0;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == BasisStatus::kBasic) {
        head_[k] = j;
        where_[j] = k++;
      } else {
        place_nonbasic(j);
      }
    }
    return true;
  }

  Outcome run() {
    const int64_t limit = opt_.max_iterations > 0
                              ? opt_.max_iterations
                              : 50 * static_cast<int64_t>(total_) + 10000;
    refactor();
    if (opt_.log) {
      std::fprintf(stderr, "  simplex %s start: obj=%.10g infeas=%.3g\n", exact_ ? "exact" : "float",
                   objective_double(), sum_infeasibility());
    }
    std::vector<T> y(m_), alpha(m_);
    while (true) {
      if (iterations_ >= limit) return Outcome::kIterationLimit;
      if (lu_.num_updates() >= (exact_ ? 50 : opt_.refactor_interval)) refactor();
      const bool phase1 = infeasible_any();
      for (int k = 0; k < m_; ++k) y[k] = phase_cost(head_[k], phase1);
      lu_.btran(y);
      T d(0);
      const int q = exact_ ? price_bland(y, phase1, d) : price_partial(y, phase1, d);
      if (q < 0) {
        if (!fresh_) {
          refactor();
          continue;
        }
        if (perturbed_) {
          remove_perturbation();
          continue;
        }
        if (phase1) return Outcome::kInfeasible;
        duals_ = y;
        return Outcome::kOptimal;
      }
      const int dir = S::sign(d) < 0 ? 1 : -1;
      std::fill(alpha.begin(), alpha.end(), T(0));
      scatter_column(q, alpha);
      lu_.ftran(alpha);
      Step step;
      if (!ratio_test(q, dir, alpha, phase1, d, step)) {
        if (!fresh_) {
          refactor();
          continue;
        }
        if (phase1) return Outcome::kBreakdown;
        return Outcome::kUnbounded;
      }
      if (!exact_ && step.p >= 0 && std::fabs(S::to_double(alpha[step.p])) < 1e-11) {
        if (!fresh_) {
          refactor();
          continue;
        }
        return Outcome::kBreakdown;
      }
      apply(q, dir, alpha, step);
      ++iterations_;
      if (phase1) ++phase1_iterations_;
      fresh_ = false;
      if (!exact_) {
        stall_ = S::to_double(step.t) <= kDegenerateStep ? stall_ + 1 : 0;
        if (stall_ > kStallLimit && perturbations_ < kMaxPerturbations && !perturbed_) {
          perturb();
        }
      }
      if (opt_.log && iterations_ % 2000 == 0) {
        std::fprintf(stderr, "  simplex %s it=%lld (phase 1: %lld) phase=%d obj=%.10g infeas=%.3g stall=%d\n",
                     exact_ ? "exact" : "float", static_cast<long long>(iterations_),
                     static_cast<long long>(phase1_iterations_),
                     phase1 ? 1 : 2, objective_double(), sum_infeasibility(), stall_);
      }
    }
  }

  T objective() const {
    T z(0);
    for (int j = 0; j < n_; ++j) {
      if (!S::is_zero(cost_[j]) && !S::is_zero(x_[j])) z -= cost_[j] * x_[j];
    }
    return z;
  }
  double objective_double() const { return S::to_double(objective()); }
  const std::vector<T>& x() const { return x_; }
  const std::vector<T>& duals() const { return duals_; }
  const std::vector<BasisStatus>& status() const { return status_; }
  int64_t iterations() const { return iterations_; }
  int refactorizations() const { return refactorizations_; }
  int perturbations() const { return perturbations_; }
  int n() const { return n_; }
  int m() const { return m_; }

  double sum_infeasibility() const {
    double sum = 0;
    for (int k = 0; k < m_; ++k) {
      const int j = head_[k];
      const double v = S::to_double(x_[j]);
      if (has_lo_[j]) sum += std::max(0.0, S::to_double(lo_[j]) - v);
      if (has_up_[j]) sum += std::max(0.0, v - S::to_double(up_[j]));
    }
    return sum;
  }

  double max_infeasibility() const {
    double worst = 0;
    for (int j = 0; j < total_; ++j) {
      const double v = S::to_double(x_[j]);
      if (has_lo_[j]) worst = std::max(worst, S::to_double(orig_lo_[j]) - v);
      if (has_up_[j]) worst = std::max(worst, v - S::to_double(orig_up_[j]));
    }
    return worst;
  }

 private:
  struct Step {
    int p = -1;        // leaving basis position, -1 for a bound flip
    T t = T(0);
    bool to_upper = false;
  };

  void set_nonbasic_default(int j) {
    if (has_lo_[j]) {
      status_[j] = BasisStatus::kLower;
    } else if (has_up_[j]) {
      status_[j] = BasisStatus::kUpper;
    } else {
      status_[j] = BasisStatus::kZero;
    }
    place_nonbasic(j);
  }

  void place_nonbasic(int j) {
    switch (status_[j]) {
      case BasisStatus::kLower:
        if (!has_lo_[j]) return set_nonbasic_default(j);
        x_[j] = lo_[j];
        break;
      case BasisStatus::kUpper:
        if (!has_up_[j]) return set_nonbasic_default(j);
        x_[j] = up_[j];
        break;
      case BasisStatus::kZero:
        if (has_lo_[j] || has_up_[j]) {
          status_[j] = has_lo_[j] ? BasisStatus::kLower : BasisStatus::kUpper;
          return place_nonbasic(j);
        }
        x_[j] = T(0);
        break;
      case BasisStatus::kBasic:
        break;
    }
  }

  template <class F>
  void for_column(int j, F&& f) const {
    if (j < n_) {
      for (int64_t k = col_start_[j]; k < col_start_[j + 1]; ++k) f(col_row_[k], col_val_[k]);
    } else {
      f(j - n_, T(-1));
    }
  }

  void scatter_column(int j, std::vector<T>& v) const {
    for_column(j, [&](int i, const T& a) { v[i] = a; });
  }

  void refactor() {
    std::vector<SparseColumn<T>> cols(m_);
    for (int attempt = 0;; ++attempt) {
      for (int k = 0; k < m_; ++k) {
        cols[k].clear();
        for_column(head_[k], [&](int i, const T& a) { cols[k].emplace_back(i, a); });
      }
      auto def = lu_.factorize(m_, cols);
      ++refactorizations_;
      if (def.positions.empty()) break;
      if (attempt >= 3 || def.positions.size() != def.rows.size()) {
        throw Error(ErrorCode::kNumericalBreakdown, "basis repair failed");
      }
      for (size_t t = 0; t < def.positions.size(); ++t) {
        const int p = def.positions[t];
        const int out = head_[p];
        const int in = n_ + def.rows[t];
        if (where_[in] >= 0) {
          throw Error(ErrorCode::kNumericalBreakdown, "basis repair found a basic logical");
        }
        where_[out] = -1;
        status_[out] = nearest_bound(out);
        place_nonbasic(out);
        head_[p] = in;
        where_[in] = p;
        status_[in] = BasisStatus::kBasic;
      }
    }
    compute_primal();
    fresh_ = true;
  }

  BasisStatus nearest_bound(int j) const {
    if (has_lo_[j] && has_up_[j]) {
      const double v = S::to_double(x_[j]);
      return std::fabs(v - S::to_double(lo_[j])) <= std::fabs(v - S::to_double(up_[j]))
                 ? BasisStatus::kLower
                 : BasisStatus::kUpper;
    }
    if (has_lo_[j]) return BasisStatus::kLower;
    if (has_up_[j]) return BasisStatus::kUpper;
    return BasisStatus::kZero;
  }

  void compute_primal() {
    std::vector<T> rhs(m_, T(0));
    for (int j = 0; j < total_; ++j) {
      if (where_[j] >= 0 || S::is_zero(x_[j])) continue;
      const T xj = x_[j];
      for_column(j, [&](int i, const T& a) { rhs[i] -= a * xj; });
    }
    lu_.ftran(rhs);
    for (int k = 0; k < m_; ++k) x_[head_[k]] = rhs[k];
  }

  bool below(int j) const {
    if (!has_lo_[j]) return false;
    if (exact_) return x_[j] < lo_[j];
    return S::to_double(x_[j]) < S::to_double(lo_[j]) - ftol_;
  }
  bool above(int j) const {
    if (!has_up_[j]) return false;
    if (exact_) return x_[j] > up_[j];
    return S::to_double(x_[j]) > S::to_double(up_[j]) + ftol_;
  }

  bool infeasible_any() const {
    for (int k = 0; k < m_; ++k) {
      if (below(head_[k]) || above(head_[k])) return true;
    }
    return false;
  }

  T phase_cost(int j, bool phase1) const {
    if (!phase1) return cost_[j];
    if (below(j)) return T(-1);
    if (above(j)) return T(1);
    return T(0);
  }

  bool fixed(int j) const { return has_lo_[j] && has_up_[j] && lo_[j] == up_[j]; }

  T reduced_cost(int j, const std::vector<T>& y, bool phase1) const {
    T d = phase1 ? T(0) : cost_[j];
    for_column(j, [&](int i, const T& a) {
      if (!S::is_zero(y[i])) d -= y[i] * a;
    });
    return d;
  }

  bool eligible(int j, const T& d) const {
    const double dd = S::to_double(d);
    switch (status_[j]) {
      case BasisStatus::kBasic: return false;
      case BasisStatus::kLower: return exact_ ? S::sign(d) < 0 : dd < -dtol_;
      case BasisStatus::kUpper: return exact_ ? S::sign(d) > 0 : dd > dtol_;
      case BasisStatus::kZero: return exact_ ? !S::is_zero(d) : std::fabs(dd) > dtol_;
    }
    return false;
  }

  int price_bland(const std::vector<T>& y, bool phase1, T& d_out) const {
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == BasisStatus::kBasic || fixed(j)) continue;
      T d = reduced_cost(j, y, phase1);
      if (eligible(j, d)) {
        d_out = d;
        return j;
      }
    }
    return -1;
  }

  int price_partial(const std::vector<T>& y, bool phase1, T& d_out) {
    const int segment = std::max(512, total_ / 8);
    int best = -1;
    double best_mag = 0;
    T best_d(0);
    for (int scanned = 0; scanned < total_;) {
      const int j = cursor_;
      cursor_ = cursor_ + 1 == total_ ? 0 : cursor_ + 1;
      ++scanned;
      if (status_[j] != BasisStatus::kBasic && !fixed(j)) {
        T d = reduced_cost(j, y, phase1);
        if (eligible(j, d) && S::magnitude(d) > best_mag) {
          best = j;
          best_mag = S::magnitude(d);
          best_d = d;
        }
      }
      if (best >= 0 && scanned % segment == 0) break;
    }
    d_out = best_d;
    return best;
  }

  struct Candidate {
    int k;
    T ratio;        // exact distance / |delta|
    double harris;  // relaxed distance / |delta|
    bool to_upper;
  };

  bool ratio_test(int q, int dir, const std::vector<T>& alpha, bool phase1,
                  const T& d, Step& step) {
    std::vector<Candidate> hard;
    struct Breakpoint {
      double t;
      int k;
      bool to_upper;
      double slope;
    };
    std::vector<Breakpoint> bps;
    for (int k = 0; k < m_; ++k) {
      const T& a = alpha[k];
      if (S::is_zero(a)) continue;
      if (!exact_ && std::fabs(S::to_double(a)) <= kPivotTol) continue;
      const int j = head_[k];
      const T delta = dir > 0 ? T(-a) : T(a);
      const int sd = S::sign(delta);
      const T mag = sd > 0 ? delta : T(-delta);
      if (phase1 && below(j)) {
        if (sd > 0) {
          if (exact_) {
            hard.push_back({k, T((lo_[j] - x_[j]) / mag), 0.0, false});
          } else {
            bps.push_back({S::to_double(T((lo_[j] - x_[j]) / mag)), k, false,
                           S::to_double(mag)});
            if (has_up_[j]) {
              hard.push_back({k, T((up_[j] - x_[j]) / mag),
                              (S::to_double(T(up_[j] - x_[j])) + htol_) / S::to_double(mag),
                              true});
            }
          }
        }
        continue;
      }
      if (phase1 && above(j)) {
        if (sd < 0) {
          if (exact_) {
            hard.push_back({k, T((x_[j] - up_[j]) / mag), 0.0, true});
          } else {
            bps.push_back({S::to_double(T((x_[j] - up_[j]) / mag)), k, true,
                           S::to_double(mag)});
            if (has_lo_[j]) {
              hard.push_back({k, T((x_[j] - lo_[j]) / mag),
                              (S::to_double(T(x_[j] - lo_[j])) + htol_) / S::to_double(mag),
                              false});
            }
          }
        }
        continue;
      }
      if (sd < 0 && has_lo_[j]) {
        T dist = x_[j] - lo_[j];
        // The relaxed bound keeps the signed distance so violations never
        // accumulate past htol_.
        const double relaxed = std::max(0.0, S::to_double(dist) + htol_) / S::to_double(mag);
        if (S::sign(dist) < 0) dist = T(0);
        hard.push_back({k, T(dist / mag), relaxed, false});
      } else if (sd > 0 && has_up_[j]) {
        T dist = up_[j] - x_[j];
        // The relaxed bound keeps the signed distance so violations never
        // accumulate past htol_.
        const double relaxed = std::max(0.0, S::to_double(dist) + htol_) / S::to_double(mag);
        if (S::sign(dist) < 0) dist = T(0);
        hard.push_back({k, T(dist / mag), relaxed, true});
      }
    }
    const bool can_flip = has_lo_[q] && has_up_[q];
    const T flip = can_flip ? T(up_[q] - lo_[q]) : T(0);

    if (exact_) {
      int best = -1;
      for (int c = 0; c < static_cast<int>(hard.size()); ++c) {
        if (best < 0 || hard[c].ratio < hard[best].ratio ||
            (hard[c].ratio == hard[best].ratio && head_[hard[c].k] < head_[hard[best].k])) {
          best = c;
        }
      }
      if (can_flip && (best < 0 || flip < hard[best].ratio)) {
        step.p = -1;
        step.t = flip;
        return true;
      }
      if (best < 0) return false;
      step.p = hard[best].k;
      step.t = hard[best].ratio;
      step.to_upper = hard[best].to_upper;
      return true;
    }

    // Harris pass 1.
    double bound = std::numeric_limits<double>::infinity();
    for (const auto& c : hard) bound = std::min(bound, c.harris);
    if (can_flip) bound = std::min(bound, S::to_double(flip));
    // Phase 1 may pass breakpoints while the infeasibility keeps falling.
    if (!bps.empty()) {
      std::sort(bps.begin(), bps.end(), [](const Breakpoint& a, const Breakpoint& b) {
        return a.t < b.t;
      });
      double slope = -std::fabs(S::to_double(d));
      for (size_t b = 0; b < bps.size(); ++b) {
        if (bps[b].t > bound) break;
        slope += bps[b].slope;
        if (slope >= 0 || (b + 1 == bps.size() && hard.empty() && !can_flip)) {
          step.p = bps[b].k;
          step.t = T(std::max(0.0, bps[b].t));
          step.to_upper = bps[b].to_upper;
          return true;
        }
      }
    }
    if (can_flip && S::to_double(flip) <= bound) {
      bool basic_first = false;
      for (const auto& c : hard) basic_first = basic_first || S::to_double(c.ratio) < S::to_double(flip);
      if (!basic_first) {
        step.p = -1;
        step.t = flip;
        return true;
      }
    }
    if (hard.empty()) return false;
    // Harris pass 2: largest pivot among candidates within the bound.
    int best = -1;
    double best_mag = -1;
    for (int c = 0; c < static_cast<int>(hard.size()); ++c) {
      if (S::to_double(hard[c].ratio) > bound) continue;
      const double mag = std::fabs(S::to_double(alpha[hard[c].k]));
      if (mag > best_mag) {
        best = c;
        best_mag = mag;
      }
    }
    if (best < 0) return false;
    step.p = hard[best].k;
    step.t = hard[best].ratio;
    if (S::sign(step.t) < 0) step.t = T(0);
    step.to_upper = hard[best].to_upper;
    return true;
  }

  void apply(int q, int dir, const std::vector<T>& alpha, const Step& step) {
    const T move = dir > 0 ? step.t : T(-step.t);
    if (!S::is_zero(move)) {
      x_[q] += move;
      for (int k = 0; k < m_; ++k) {
        if (!S::is_zero(alpha[k])) x_[head_[k]] -= alpha[k] * move;
      }
    }
    if (step.p < 0) {
      status_[q] = status_[q] == BasisStatus::kLower ? BasisStatus::kUpper : BasisStatus::kLower;
      place_nonbasic(q);
      return;
    }
    const int out = head_[step.p];
    status_[out] = step.to_upper ? BasisStatus::kUpper : BasisStatus::kLower;
    place_nonbasic(out);
    where_[out] = -1;
    head_[step.p] = q;
    where_[q] = step.p;
    status_[q] = BasisStatus::kBasic;
    lu_.update(step.p, alpha);
  }

  void perturb() {
    std::mt19937_64 rng(0x7ea3dec0 + perturbations_);
    std::uniform_real_distribution<double> unit(1.0, 2.0);
    const double base = 1e-7 * std::pow(0.1, perturbations_);
    // Only basic bounds widen, so the current point stays feasible.
    for (int k = 0; k < m_; ++k) {
      const int j = head_[k];
      if (has_lo_[j]) lo_[j] -= T(base * (1 + std::fabs(S::to_double(lo_[j]))) * unit(rng));
      if (has_up_[j]) up_[j] += T(base * (1 + std::fabs(S::to_double(up_[j]))) * unit(rng));
    }
    perturbed_ = true;
    ++perturbations_;
    stall_ = 0;
  }

  void remove_perturbation() {
    lo_ = orig_lo_;
    up_ = orig_up_;
    for (int j = 0; j < total_; ++j) {
      if (where_[j] < 0) place_nonbasic(j);
    }
    perturbed_ = false;
    refactor();
  }

  SimplexOptions opt_;
  int m_, n_, total_;
  bool exact_ = false;
  double ftol_ = 0, dtol_ = 0;
  double htol_ = 0;  // Harris relaxation, below ftol_ so rounding stays feasible
  int64_t phase1_iterations_ = 0;
  std::vector<int64_t> col_start_;
  std::vector<int> col_row_;
  std::vector<T> col_val_;
  std::vector<T> cost_, lo_, up_, orig_lo_, orig_up_, x_, duals_;
  std::vector<char> has_lo_, has_up_;
  std::vector<int> head_, where_;
  std::vector<BasisStatus> status_;
  SparseLU<T> lu_;
  bool fresh_ = false;
  bool perturbed_ = false;
  int perturbations_ = 0;
  int refactorizations_ = 0;
  int stall_ = 0;
  int cursor_ = 0;
  int64_t iterations_ = 0;
};

[[noreturn]] void fail(Outcome o, const char* mode) {
  const std::string msg = std::string(mode) + " simplex: " + outcome_name(o);
  switch (o) {
    case Outcome::kInfeasible: throw Error(ErrorCode::kInfeasible, msg);
    case Outcome::kUnbounded: throw Error(ErrorCode::kUnbounded, msg);
    default: throw Error(ErrorCode::kNumericalBreakdown, msg);
  }
}

}  // namespace

LpSolution solve_lp(const SparseLP& lp, const SimplexOptions& options) {
  check_lp(lp);
  LpSolution sol;
  sol.mode = options.mode;
  const int n = static_cast<int>(lp.num_cols());
  const int m = static_cast<int>(lp.num_rows());

  Simplex<double> fs(lp, options);
  if (!options.start_basis.empty() && !fs.load_basis(options.start_basis)) fs.slack_basis();
  Outcome fo = Outcome::kBreakdown;
  try {
    fo = fs.run();
  } catch (const Error& e) {
    if (options.mode == ArithmeticMode::kFloat) throw;
  }
  sol.float_iterations = fs.iterations();
  sol.refactorizations = fs.refactorizations();
  sol.perturbations = fs.perturbations();
  if (options.mode == ArithmeticMode::kFloat) {
    if (fo != Outcome::kOptimal) fail(fo, "float");
    sol.objective = Value::of_float(fs.objective_double());
    sol.x.assign(fs.x().begin(), fs.x().begin() + n);
    sol.row_duals.resize(m);
    for (int i = 0; i < m; ++i) sol.row_duals[i] = -fs.duals()[i];
    sol.basis = fs.status();
    sol.max_primal_infeasibility = fs.max_infeasibility();
    return sol;
  }

  // Exact: verify (and if needed repair) the float basis with rational pivots.
  Simplex<Rational> es(lp, options);
  bool warm = fo == Outcome::kOptimal && es.load_basis(fs.status());
  Outcome eo;
  try {
    eo = es.run();
  } catch (const Error&) {
    if (!warm) throw;
    eo = Outcome::kBreakdown;
  }
  if (eo != Outcome::kOptimal && warm) {
    Simplex<Rational> cold(lp, options);
    eo = cold.run();
    es = std::move(cold);
  }
  if (eo != Outcome::kOptimal) fail(eo, "exact");
  sol.exact_iterations = es.iterations();
  sol.refactorizations += es.refactorizations();
  const Rational z = es.objective();
  sol.objective = Value::of_exact(z);
  sol.x_exact.assign(es.x().begin(), es.x().begin() + n);
  sol.x.resize(n);
  for (int j = 0; j < n; ++j) sol.x[j] = sol.x_exact[j].get_d();
  sol.row_duals_exact.resize(m);
  sol.row_duals.resize(m);
  for (int i = 0; i < m; ++i) {
    sol.row_duals_exact[i] = -es.duals()[i];
    sol.row_duals[i] = sol.row_duals_exact[i].get_d();
  }
  sol.basis = es.status();
  return sol;
}

}  // namespace teamdecomp
