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

#include "sparse_lu.hpp"

#include <algorithm>
#include <limits>

namespace teamdecomp {

namespace {

constexpr double kDropTol = 1e-14;
constexpr double kPivotAbsTol = 1e-11;
constexpr int kSearchLimit = 4;

template <class T>
bool negligible(const T& v) {
  if constexpr (Scalar<T>::kExact) {
    return Scalar<T>::is_zero(v);
  } else {
    return std::fabs(v) < kDropTol;
  }
}

template <class T>
const T* find_entry(const SparseColumn<T>& row, int col) {
  for (const auto& e : row) {
    if (e.first == col) return &e.second;
  }
  return nullptr;
}

}  // namespace

template <class T>
typename SparseLU<T>::Deficiency SparseLU<T>::factorize(
    int m, const std::vector<SparseColumn<T>>& columns, double threshold) {
  using S = Scalar<T>;
  m_ = m;
  rank_ = 0;
  piv_row_.clear();
  piv_col_.clear();
  piv_val_.clear();
  l_start_.assign(1, 0);
  u_start_.assign(1, 0);
  l_idx_.clear();
  u_idx_.clear();
  l_val_.clear();
  u_val_.clear();
  eta_pos_.clear();
  eta_piv_.clear();
  eta_start_.assign(1, 0);
  eta_idx_.clear();
  eta_val_.clear();
  work_.assign(m, T(0));

  std::vector<SparseColumn<T>> rows(m);
  std::vector<std::vector<int>> col_rows(m);
  for (int k = 0; k < m; ++k) {
    for (const auto& [i, v] : columns[k]) {
      if (S::is_zero(v)) continue;
      rows[i].emplace_back(k, v);
      col_rows[k].push_back(i);
    }
  }
  std::vector<int> row_cnt(m), col_cnt(m);
  std::vector<char> row_active(m, 1), col_active(m, 1);
  std::vector<std::vector<int>> col_bucket(m + 1), row_bucket(m + 1);
  for (int k = 0; k < m; ++k) {
    col_cnt[k] = static_cast<int>(col_rows[k].size());
    row_cnt[k] = static_cast<int>(rows[k].size());
    col_bucket[col_cnt[k]].push_back(k);
    row_bucket[row_cnt[k]].push_back(k);
  }
  auto push_col = [&](int k) {
    if (col_cnt[k] <= m) col_bucket[col_cnt[k]].push_back(k);
  };
  auto push_row = [&](int i) {
    if (row_cnt[i] <= m) row_bucket[row_cnt[i]].push_back(i);
  };
  auto col_max = [&](int k) {
    double mx = 0;
    for (int i : col_rows[k]) {
      if (!row_active[i]) continue;
      if (const T* v = find_entry(rows[i], k)) mx = std::max(mx, S::magnitude(*v));
    }
    return mx;
  };
  std::vector<int> mark(m, -1);
  SparseColumn<T> urow;

  for (int step = 0; step < m; ++step) {
    int best_r = -1, best_c = -1;
    int64_t best_m = std::numeric_limits<int64_t>::max();
    double best_mag = 0;
    int examined = 0;
    auto consider = [&](int r, int c, const T& v, double cmax) {
      const double mag = S::magnitude(v);
      if (S::is_zero(v)) return;
      if (!S::kExact && (mag < kPivotAbsTol || mag < threshold * cmax)) return;
      const int64_t mk = static_cast<int64_t>(row_cnt[r] - 1) * (col_cnt[c] - 1);
      if (mk < best_m || (mk == best_m && mag > best_mag)) {
        best_m = mk;
        best_mag = mag;
        best_r = r;
        best_c = c;
      }
    };
    for (int cnt = 1; cnt <= m; ++cnt) {
      auto& cb = col_bucket[cnt];
      for (size_t t = 0; t < cb.size();) {
        const int k = cb[t];
        if (!col_active[k] || col_cnt[k] != cnt) {
          cb[t] = cb.back();
          cb.pop_back();
          continue;
        }
        const double cmax = S::kExact ? 0.0 : col_max(k);
        for (int i : col_rows[k]) {
          if (!row_active[i]) continue;
          if (const T* v = find_entry(rows[i], k)) consider(i, k, *v, cmax);
        }
        ++examined;
        ++t;
        if (best_r >= 0 && (best_m <= static_cast<int64_t>(cnt - 1) * (cnt - 1) ||
                            examined >= kSearchLimit)) {
          break;
        }
      }
      if (best_r >= 0 && (best_m <= static_cast<int64_t>(cnt - 1) * (cnt - 1) ||
                          examined >= kSearchLimit)) {
        break;
      }
      auto& rb = row_bucket[cnt];
      for (size_t t = 0; t < rb.size();) {
        const int i = rb[t];
        if (!row_active[i] || row_cnt[i] != cnt) {
          rb[t] = rb.back();
          rb.pop_back();
          continue;
        }
        for (const auto& [k, v] : rows[i]) {
          consider(i, k, v, S::kExact ? 0.0 : col_max(k));
        }
        ++examined;
        ++t;
        if (best_r >= 0 && (best_m <= static_cast<int64_t>(cnt - 1) * cnt ||
                            examined >= kSearchLimit)) {
          break;
        }
      }
      if (best_r >= 0 && (best_m <= static_cast<int64_t>(cnt) * cnt ||
                          examined >= kSearchLimit)) {
        break;
      }
    }
    if (best_r < 0) break;  // singular

    const int r = best_r, c = best_c;
    const T piv = *find_entry(rows[r], c);
    piv_row_.push_back(r);
    piv_col_.push_back(c);
    piv_val_.push_back(piv);
    urow.clear();
    for (const auto& e : rows[r]) {
      if (e.first != c) urow.push_back(e);
    }
    for (const auto& [k, v] : urow) {
      u_idx_.push_back(k);
      u_val_.push_back(v);
    }
    u_start_.push_back(static_cast<int64_t>(u_idx_.size()));
    row_active[r] = 0;
    for (const auto& e : rows[r]) --col_cnt[e.first];
    col_active[c] = 0;

    for (int i : col_rows[c]) {
      if (!row_active[i]) continue;
      auto& row = rows[i];
      size_t at = row.size();
      for (size_t q = 0; q < row.size(); ++q) {
        if (row[q].first == c) {
          at = q;
          break;
        }
      }
      if (at == row.size()) continue;
      const T l = row[at].second / piv;
      row[at] = row.back();
      row.pop_back();
      --row_cnt[i];
      l_idx_.push_back(i);
      l_val_.push_back(l);
      if (!urow.empty()) {
        for (size_t q = 0; q < row.size(); ++q) mark[row[q].first] = static_cast<int>(q);
        bool dropped = false;
        for (const auto& [k, u] : urow) {
          if (mark[k] >= 0) {
            T& slot = row[mark[k]].second;
            slot -= l * u;
            if (negligible(slot)) dropped = true;
          } else {
            row.emplace_back(k, T(-(l * u)));
            col_rows[k].push_back(i);
            ++col_cnt[k];
            ++row_cnt[i];
          }
        }
        for (const auto& e : row) mark[e.first] = -1;
        if (dropped) {
          size_t w = 0;
          for (size_t q = 0; q < row.size(); ++q) {
            if (negligible(row[q].second)) {
              --col_cnt[row[q].first];
              --row_cnt[i];
            } else {
              row[w++] = row[q];
            }
          }
          row.resize(w);
        }
      }
      push_row(i);
    }
    l_start_.push_back(static_cast<int64_t>(l_idx_.size()));
    for (const auto& e : urow) push_col(e.first);
    ++rank_;
  }

  Deficiency def;
  if (rank_ < m) {
    for (int k = 0; k < m; ++k) {
      if (col_active[k]) def.positions.push_back(k);
      if (row_active[k]) def.rows.push_back(k);
    }
  }
  return def;
}

template <class T>
void SparseLU<T>::ftran(std::vector<T>& b) const {
  using S = Scalar<T>;
  for (int k = 0; k < rank_; ++k) {
    const T& br = b[piv_row_[k]];
    if (S::is_zero(br)) continue;
    const T pivot_value = br;
    for (int64_t e = l_start_[k]; e < l_start_[k + 1]; ++e) {
      b[l_idx_[e]] -= l_val_[e] * pivot_value;
    }
  }
  for (int k = rank_ - 1; k >= 0; --k) {
    T s = b[piv_row_[k]];
    for (int64_t e = u_start_[k]; e < u_start_[k + 1]; ++e) {
      const T& xj = work_[u_idx_[e]];
      if (!S::is_zero(xj)) s -= u_val_[e] * xj;
    }
    if (!S::is_zero(s)) s /= piv_val_[k];
    work_[piv_col_[k]] = s;
  }
  b.swap(work_);
  for (size_t e = 0; e < eta_pos_.size(); ++e) {
    const int p = eta_pos_[e];
    if (S::is_zero(b[p])) continue;
    b[p] /= eta_piv_[e];
    const T bp = b[p];
    for (int64_t q = eta_start_[e]; q < eta_start_[e + 1]; ++q) {
      b[eta_idx_[q]] -= eta_val_[q] * bp;
    }
  }
}

template <class T>
void SparseLU<T>::btran(std::vector<T>& c) const {
  using S = Scalar<T>;
  for (size_t e = eta_pos_.size(); e-- > 0;) {
    const int p = eta_pos_[e];
    T s = c[p];
    for (int64_t q = eta_start_[e]; q < eta_start_[e + 1]; ++q) {
      const T& ci = c[eta_idx_[q]];
      if (!S::is_zero(ci)) s -= eta_val_[q] * ci;
    }
    if (!S::is_zero(s)) s /= eta_piv_[e];
    c[p] = s;
  }
  for (int k = 0; k < rank_; ++k) {
    T z = c[piv_col_[k]];
    if (!S::is_zero(z)) {
      z /= piv_val_[k];
      for (int64_t e = u_start_[k]; e < u_start_[k + 1]; ++e) {
        c[u_idx_[e]] -= u_val_[e] * z;
      }
    }
    work_[piv_row_[k]] = z;
  }
  for (int k = rank_ - 1; k >= 0; --k) {
    T s(0);
    for (int64_t e = l_start_[k]; e < l_start_[k + 1]; ++e) {
      const T& wi = work_[l_idx_[e]];
      if (!S::is_zero(wi)) s += l_val_[e] * wi;
    }
    if (!S::is_zero(s)) work_[piv_row_[k]] -= s;
  }
  c.swap(work_);
}

template <class T>
void SparseLU<T>::update(int p, const std::vector<T>& alpha) {
  eta_pos_.push_back(p);
  eta_piv_.push_back(alpha[p]);
  for (int i = 0; i < m_; ++i) {
    if (i == p || negligible(alpha[i])) continue;
    eta_idx_.push_back(i);
    eta_val_.push_back(alpha[i]);
  }
  eta_start_.push_back(static_cast<int64_t>(eta_idx_.size()));
}

template class SparseLU<double>;
template class SparseLU<Rational>;

}  // namespace teamdecomp
