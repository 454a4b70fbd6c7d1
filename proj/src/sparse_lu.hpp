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

// Markowitz sparse LU of a simplex basis with product-form updates.
// Templated on the scalar: double uses threshold pivoting, Rational takes
// any nonzero pivot.

#ifndef TEAMDECOMP_SRC_SPARSE_LU_HPP_
#define TEAMDECOMP_SRC_SPARSE_LU_HPP_

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "teamdecomp/common.hpp"

namespace teamdecomp {

template <class T>
struct Scalar;

template <>
struct Scalar<double> {
  static constexpr bool kExact = false;
  static double from(const Rational& q) { return q.get_d(); }
  static double to_double(double v) { return v; }
  static double magnitude(double v) { return std::fabs(v); }
  static bool is_zero(double v) { return v == 0.0; }
  static int sign(double v) { return (v > 0) - (v < 0); }
};

template <>
struct Scalar<Rational> {
  static constexpr bool kExact = true;
  static Rational from(const Rational& q) { return q; }
  static double to_double(const Rational& v) { return v.get_d(); }
  static double magnitude(const Rational& v) { return std::fabs(v.get_d()); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static int sign(const Rational& v) { return sgn(v); }
};

template <class T>
using SparseColumn = std::vector<std::pair<int, T>>;

template <class T>
class SparseLU {
 public:
  struct Deficiency {
    std::vector<int> positions;  // basis positions left without a pivot
    std::vector<int> rows;       // rows left without a pivot
  };

  // columns[k] holds the entries of basis position k.
  Deficiency factorize(int m, const std::vector<SparseColumn<T>>& columns,
                       double threshold = 0.1);

  // b is indexed by row on entry and by basis position on exit.
  void ftran(std::vector<T>& b) const;
  // c is indexed by basis position on entry and by row on exit.
  void btran(std::vector<T>& c) const;

  // Basis position p replaced by a column whose ftran image is alpha.
  void update(int p, const std::vector<T>& alpha);

  int num_updates() const { return static_cast<int>(eta_pos_.size()); }
  int64_t factor_nnz() const {
    return static_cast<int64_t>(l_val_.size() + u_val_.size());
  }
  int64_t eta_nnz() const { return static_cast<int64_t>(eta_val_.size()); }

 private:
  int m_ = 0;
  int rank_ = 0;
  std::vector<int> piv_row_, piv_col_;
  std::vector<T> piv_val_;
  std::vector<int64_t> l_start_, u_start_;
  std::vector<int> l_idx_, u_idx_;
  std::vector<T> l_val_, u_val_;
  std::vector<int> eta_pos_;
  std::vector<T> eta_piv_;
  std::vector<int64_t> eta_start_;
  std::vector<int> eta_idx_;
  std::vector<T> eta_val_;
  mutable std::vector<T> work_;
};

extern template class SparseLU<double>;
extern template class SparseLU<Rational>;

}  // namespace teamdecomp

#endif  // TEAMDECOMP_SRC_SPARSE_LU_HPP_
