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

#include "teamdecomp/common.hpp"

#include <cctype>
#include <cstdio>

namespace teamdecomp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kValidation: return "Validation";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kHeterogeneousClass: return "HeterogeneousClass";
    case ErrorCode::kProvenance: return "Provenance";
    case ErrorCode::kInternal: return "InternalError";
    case ErrorCode::kFeasibleSetExplosion: return "FeasibleSetExplosion";
    case ErrorCode::kEmptyBag: return "EmptyBag";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kMarginalMismatch: return "MarginalMismatch";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kUnbounded: return "Unbounded";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kInfeasibleLambda: return "InfeasibleLambda";
    case ErrorCode::kCapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

const char* mode_name(ArithmeticMode mode) {
  return mode == ArithmeticMode::kExact ? "exact" : "float";
}

namespace {

bool is_integer_literal(const std::string& s, bool allow_sign) {
  if (s.empty()) return false;
  size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const size_t slash = text.find('/');
  std::string num = slash == std::string::npos ? text : text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
    throw Error(ErrorCode::kParse, "malformed rational '" + text + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  Rational q;
  q.get_num() = BigInt(num, 10);
  q.get_den() = BigInt(den, 10);
  if (q.get_den() == 0) {
    throw Error(ErrorCode::kParse, "zero denominator in '" + text + "'");
  }
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string value_to_string(const Value& v) {
  if (v.mode == ArithmeticMode::kExact) return format_rational(v.exact);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v.approx);
  return buf;
}

}  // namespace teamdecomp
