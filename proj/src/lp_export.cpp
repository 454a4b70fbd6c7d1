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

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "teamdecomp/lp.hpp"

namespace teamdecomp {

ExportFormat parse_export_format(const std::string& name) {
  if (name == "lp-text" || name == "lp") return ExportFormat::kLpText;
  if (name == "mps") return ExportFormat::kMps;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown export format '" + name + "' (expected lp-text or mps)");
}

namespace {

std::string num(const Rational& q) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", q.get_d());
  return buf;
}

// "+ 3 x" / "- 3 x", coefficient magnitude written even when it is 1.
void term(std::ostream& os, const Rational& q, const std::string& name, bool first) {
  const bool neg = sgn(q) < 0;
  if (first) {
    os << (neg ? "- " : "");
  } else {
    os << (neg ? " - " : " + ");
  }
  os << num(abs(q)) << " " << name;
}

constexpr int kTermsPerLine = 6;

}  // namespace

std::string export_lp_text(const SparseLP& lp) {
  check_lp(lp);
  std::ostringstream os;
  os << "Maximize\n obj:";
  int written = 0;
  for (int64_t j = 0; j < lp.num_cols(); ++j) {
    if (sgn(lp.objective[j]) == 0) continue;
    if (written > 0 && written % kTermsPerLine == 0) os << "\n ";
    os << (written == 0 ? " " : "");
    term(os, lp.objective[j], lp.col_names[j], written == 0);
    ++written;
  }
  if (written == 0 && lp.num_cols() > 0) os << " 0 " << lp.col_names[0];
  os << "\nSubject To\n";
  for (int64_t r = 0; r < lp.num_rows(); ++r) {
    os << " " << lp.row_names[r] << ":";
    int n = 0;
    for (int64_t k = lp.row_start[r]; k < lp.row_start[r + 1]; ++k, ++n) {
      if (n > 0 && n % kTermsPerLine == 0) os << "\n  ";
      os << (n == 0 ? " " : "");
      term(os, lp.vals[k], lp.col_names[lp.cols[k]], n == 0);
    }
    if (n == 0) os << " 0 " << lp.col_names[0];
    switch (lp.sense[r]) {
      case RowSense::kLe: os << " <= "; break;
      case RowSense::kEq: os << " = "; break;
      case RowSense::kGe: os << " >= "; break;
    }
    os << num(lp.rhs[r]) << "\n";
  }
  os << "Bounds\n";
  for (int64_t j = 0; j < lp.num_cols(); ++j) {
    if (lp.free[j]) os << " " << lp.col_names[j] << " free\n";
  }
  os << "End\n";
  return os.str();
}

namespace {

std::string mangle(char prefix, int64_t index) {
  static const char kDigits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string s(7, '0');
  for (int i = 6; i >= 0 && index > 0; --i, index /= 36) s[i] = kDigits[index % 36];
  if (index > 0) throw Error(ErrorCode::kInvalidArgument, "too many names for fixed MPS");
  return std::string(1, prefix) + s;
}

// Fixed-format record; fields start at columns 2, 5, 15, 25, 40, 50.
std::string record(const std::string& f1, const std::string& f2,
                   const std::string& f3 = "", const std::string& f4 = "") {
  std::string line = " " + f1;
  line.resize(4, ' ');
  line += f2;
  if (f3.empty()) return line;
  line.resize(14, ' ');
  line += f3;
  line.resize(24, ' ');
  line += f4;
  return line;
}

}  // namespace

MpsExport export_mps(const SparseLP& lp) {
  check_lp(lp);
  const int64_t n = lp.num_cols(), m = lp.num_rows();
  std::vector<std::string> cname(n), rname(m);
  nlohmann::ordered_json map;
  map["columns"] = nlohmann::ordered_json::object();
  map["rows"] = nlohmann::ordered_json::object();
  for (int64_t j = 0; j < n; ++j) {
    cname[j] = mangle('C', j);
    map["columns"][cname[j]] = lp.col_names[j];
  }
  for (int64_t r = 0; r < m; ++r) {
    rname[r] = mangle('R', r);
    map["rows"][rname[r]] = lp.row_names[r];
  }
  // Column-major entries.
  std::vector<std::vector<std::pair<int64_t, const Rational*>>> by_col(n);
  for (int64_t r = 0; r < m; ++r) {
    for (int64_t k = lp.row_start[r]; k < lp.row_start[r + 1]; ++k) {
      by_col[lp.cols[k]].emplace_back(r, &lp.vals[k]);
    }
  }
  std::ostringstream os;
  os << "NAME          TEAMDCMP\n";
  os << "OBJSENSE\n    MAX\n";
  os << "ROWS\n";
  os << record("N", "OBJ") << "\n";
  for (int64_t r = 0; r < m; ++r) {
    const char* s = lp.sense[r] == RowSense::kLe ? "L" : lp.sense[r] == RowSense::kEq ? "E" : "G";
    os << record(s, rname[r]) << "\n";
  }
  os << "COLUMNS\n";
  for (int64_t j = 0; j < n; ++j) {
    bool any = false;
    if (sgn(lp.objective[j]) != 0) {
      os << record("", cname[j], "OBJ", num(lp.objective[j])) << "\n";
      any = true;
    }
    for (const auto& [r, v] : by_col[j]) {
      os << record("", cname[j], rname[r], num(*v)) << "\n";
      any = true;
    }
    if (!any) os << record("", cname[j], "OBJ", "0") << "\n";
  }
  os << "RHS\n";
  for (int64_t r = 0; r < m; ++r) {
    if (sgn(lp.rhs[r]) != 0) os << record("", "RHS", rname[r], num(lp.rhs[r])) << "\n";
  }
  os << "BOUNDS\n";
  for (int64_t j = 0; j < n; ++j) {
    if (lp.free[j]) os << record("FR", "BND", cname[j]) << "\n";
  }
  os << "ENDATA\n";
  return MpsExport{os.str(), map.dump(1) + "\n"};
}

}  // namespace teamdecomp
