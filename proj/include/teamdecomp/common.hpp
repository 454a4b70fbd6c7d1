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

#ifndef TEAMDECOMP_COMMON_HPP_
#define TEAMDECOMP_COMMON_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace teamdecomp {

using Rational = mpq_class;
using BigInt = mpz_class;

enum class ErrorCode {
  kInvalidArgument,
  kValidation,
  kParse,
  kIo,
  kHeterogeneousClass,
  kProvenance,
  kInternal,
  kFeasibleSetExplosion,
  kEmptyBag,
  kDimensionMismatch,
  kMarginalMismatch,
  kInfeasible,
  kUnbounded,
  kNumericalBreakdown,
  kInfeasibleLambda,
  kCapExceeded,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

enum class ArithmeticMode { kExact, kFloat };

const char* mode_name(ArithmeticMode mode);

// Accepts "n", "-n", "n/d". Denominator must be positive.
Rational parse_rational(const std::string& text);
// Always "n/d" with d > 0 and gcd(n, d) = 1.
std::string format_rational(const Rational& q);

// A value carried in either arithmetic mode. `approx` is always set.
struct Value {
  ArithmeticMode mode = ArithmeticMode::kFloat;
  Rational exact;
  double approx = 0.0;

  static Value of_exact(const Rational& q) {
    return Value{ArithmeticMode::kExact, q, q.get_d()};
  }
  static Value of_float(double d) {
    return Value{ArithmeticMode::kFloat, Rational(0), d};
  }
};

std::string value_to_string(const Value& v);

}  // namespace teamdecomp

#endif  // TEAMDECOMP_COMMON_HPP_
