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

// teamdecomp: gen | validate | stats | solve | export | oracle.
// JSON goes to stdout, human summaries to stderr.
// Exit codes: 0 ok, 1 internal, 2 bad flags or input, 3 cap exceeded,
// 4 solver failure.

#include <omp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "teamdecomp/generators.hpp"
#include "teamdecomp/lp.hpp"
#include "teamdecomp/pipeline.hpp"
#include "teamdecomp/solver.hpp"

namespace td = teamdecomp;
using json = nlohmann::ordered_json;

namespace {

int exit_code(td::ErrorCode c) {
  switch (c) {
    case td::ErrorCode::kInvalidArgument:
    case td::ErrorCode::kValidation:
    case td::ErrorCode::kParse:
    case td::ErrorCode::kIo:
    case td::ErrorCode::kHeterogeneousClass:
    case td::ErrorCode::kProvenance:
      return 2;
    case td::ErrorCode::kFeasibleSetExplosion:
    case td::ErrorCode::kCapExceeded:
      return 3;
    case td::ErrorCode::kInfeasible:
    case td::ErrorCode::kUnbounded:
    case td::ErrorCode::kNumericalBreakdown:
    case td::ErrorCode::kInfeasibleLambda:
      return 4;
    default:
      return 1;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw td::Error(td::ErrorCode::kIo, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw td::Error(td::ErrorCode::kIo, "write failed for " + path);
}

// "1,2,-3;-1,2,3" -> clauses.
td::Cnf parse_cnf(const std::string& text, int vars) {
  td::Cnf cnf;
  std::stringstream clauses(text);
  std::string clause;
  int max_var = 0;
  while (std::getline(clauses, clause, ';')) {
    std::vector<int> lits;
    std::stringstream ls(clause);
    std::string lit;
    while (std::getline(ls, lit, ',')) {
      try {
        size_t used = 0;
        const int v = std::stoi(lit, &used);
        if (used != lit.size()) throw std::invalid_argument(lit);
        lits.push_back(v);
        max_var = std::max(max_var, std::abs(v));
      } catch (const std::exception&) {
        throw td::Error(td::ErrorCode::kInvalidArgument, "bad literal '" + lit + "' in --cnf");
      }
    }
    cnf.clauses.push_back(lits);
  }
  cnf.num_vars = vars > 0 ? vars : max_var;
  cnf.check();
  return cnf;
}

struct GenFlags {
  std::string family = "kuhn";
  int m = 2, n = 1, ranks = 3, bets = 1, suits = 2, faces = 3, k = 1, vars = 0;
  bool no_raise = false, limited = false;
  std::string cnf;
  std::string out;
};

td::GameSpec spec_from(const GenFlags& f) {
  td::GameSpec s;
  s.family = td::parse_family(f.family);
  s.m = f.m;
  s.n = f.n;
  s.ranks = f.ranks;
  s.max_bets = f.bets;
  s.suits = f.suits;
  s.no_raise = f.no_raise;
  s.faces = f.faces;
  s.limited = f.limited;
  s.k = f.k;
  if (s.family == td::Family::kSat) {
    if (f.cnf.empty()) throw td::Error(td::ErrorCode::kInvalidArgument, "--cnf is required");
    s.cnf = parse_cnf(f.cnf, f.vars);
  }
  return s;
}

td::PipelineOptions pipeline_options(const std::string& mode, bool serial, bool verbose) {
  td::PipelineOptions o;
  o.cap = td::cap_from_env();
  o.parallel = !serial;
  o.log = verbose;
  if (mode == "exact") {
    o.mode = td::ArithmeticMode::kExact;
  } else if (mode == "float") {
    o.mode = td::ArithmeticMode::kFloat;
  } else if (mode != "auto") {
    throw td::Error(td::ErrorCode::kInvalidArgument, "--mode must be exact, float or auto");
  }
  return o;
}

struct Outcome {
  int code = 0;
  std::string json;
  std::string error;
};

// Runs `f` for every input, up to `jobs` at a time; prints one JSON value
// (an array when there are several inputs). Returns the worst exit code.
template <class F>
int run_inputs(const std::vector<std::string>& inputs, int jobs, F f) {
  std::vector<Outcome> out(inputs.size());
  const int n = static_cast<int>(inputs.size());
  const int threads = std::max(1, std::min(jobs, n));
  if (threads > 1) omp_set_max_active_levels(1);
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
  for (int i = 0; i < n; ++i) {
    try {
      out[i].json = f(inputs[i]);
    } catch (const td::Error& e) {
      out[i].code = exit_code(e.code());
      out[i].error = std::string(td::error_code_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
      out[i].code = 1;
      out[i].error = e.what();
    }
  }
  int worst = 0;
  json all = json::array();
  for (int i = 0; i < n; ++i) {
    if (out[i].code != 0) {
      std::cerr << "error: " << inputs[i] << ": " << out[i].error << "\n";
      worst = std::max(worst, out[i].code);
      all.push_back({{"input", inputs[i]}, {"error", out[i].error}});
    } else {
      all.push_back(json::parse(out[i].json));
    }
  }
  std::cout << (n == 1 ? all[0] : all).dump(2) << "\n";
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Team correlated equilibria via public tree decompositions"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a benchmark game as EFG-JSON");
  cmd_gen->add_option("--family", gen.family,
                      "kuhn, leduc, liarsdice, goofspiel, sat, widthgap, pennies");
  cmd_gen->add_option("--m", gen.m, "Players on team Plus");
  cmd_gen->add_option("--n", gen.n, "Players on team Minus");
  cmd_gen->add_option("--ranks", gen.ranks, "Card ranks (kuhn, leduc, goofspiel)");
  cmd_gen->add_option("--bets", gen.bets, "Max bets per round (leduc)");
  cmd_gen->add_option("--suits", gen.suits, "Suits (leduc)");
  cmd_gen->add_flag("--no-raise", gen.no_raise, "Leduc variant without raises");
  cmd_gen->add_option("--faces", gen.faces, "Die faces (liarsdice)");
  cmd_gen->add_flag("--limited", gen.limited, "Limited-information goofspiel");
  cmd_gen->add_option("--k", gen.k, "Width-gap parameter");
  cmd_gen->add_option("--cnf", gen.cnf, "Clauses for sat, e.g. \"1,2,-3;-1,2,3\"");
  cmd_gen->add_option("--vars", gen.vars, "Variable count for sat");
  cmd_gen->add_option("--out", gen.out, "Output path")->required();

  std::vector<std::string> inputs;
  std::string team = "both", mode = "auto", report, format = "lp-text", out;
  int jobs = 1;
  bool serial = false, verbose = false, no_timing = false, plans = false, no_gap = false;
  int64_t oracle_cap = td::kDefaultOracleCap;

  auto* cmd_validate = app.add_subcommand("validate", "Check an EFG-JSON file");
  cmd_validate->add_option("--in", inputs, "Input games")->required();

  auto* cmd_stats = app.add_subcommand("stats", "Structural statistics");
  cmd_stats->add_option("--in", inputs, "Input games")->required();
  cmd_stats->add_option("--team", team, "plus, minus or both");
  cmd_stats->add_option("--jobs", jobs, "Inputs processed concurrently");
  cmd_stats->add_flag("--serial", serial, "Serial feasible-set enumeration");

  auto* cmd_solve = app.add_subcommand("solve", "Solve for the team correlated equilibrium");
  cmd_solve->add_option("--in", inputs, "Input games")->required();
  cmd_solve->add_option("--mode", mode, "exact, float or auto");
  cmd_solve->add_option("--report", report, "Also write the report here (single input)");
  cmd_solve->add_option("--jobs", jobs, "Inputs processed concurrently");
  cmd_solve->add_flag("--no-timing", no_timing, "Omit wall times");
  cmd_solve->add_flag("--plans", plans, "Include realization plans");
  cmd_solve->add_flag("--no-gap", no_gap, "Skip the best-response gap check");
  cmd_solve->add_flag("--serial", serial, "Serial feasible-set enumeration");
  cmd_solve->add_flag("-v,--verbose", verbose, "Progress on stderr");

  auto* cmd_export = app.add_subcommand("export", "Write the saddle-point LP");
  cmd_export->add_option("--in", inputs, "Input game")->required()->expected(1);
  cmd_export->add_option("--format", format, "lp-text or mps");
  cmd_export->add_option("--out", out, "Output path")->required();

  auto* cmd_oracle = app.add_subcommand("oracle", "Brute-force value over pure plans");
  cmd_oracle->add_option("--in", inputs, "Input games")->required();
  cmd_oracle->add_option("--cap", oracle_cap, "Max pure plans per team");
  cmd_oracle->add_option("--jobs", jobs, "Inputs processed concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cmd_gen) {
      const td::GameSpec spec = spec_from(gen);
      const td::GameTree g = td::make_game(spec);
      td::save_efg(g, gen.out);
      json j;
      j["schema"] = td::kReportSchema;
      j["name"] = spec.name();
      j["out"] = gen.out;
      j["nodes"] = g.num_nodes();
      j["terminals"] = g.num_terminals();
      j["infosets"] = g.num_infosets();
      std::cout << j.dump(2) << "\n";
      std::cerr << spec.name() << ": " << g.num_nodes() << " nodes written to " << gen.out << "\n";
      return 0;
    }
    if (*cmd_validate) {
      return run_inputs(inputs, 1, [](const std::string& path) {
        const td::GameTree g = td::load_efg(path);
        json j;
        j["schema"] = td::kReportSchema;
        j["input"] = path;
        j["valid"] = true;
        j["nodes"] = g.num_nodes();
        j["terminals"] = g.num_terminals();
        return j.dump();
      });
    }
    if (*cmd_stats) {
      if (team != "plus" && team != "minus" && team != "both") {
        throw td::Error(td::ErrorCode::kInvalidArgument, "--team must be plus, minus or both");
      }
      const td::PipelineOptions opt = pipeline_options("auto", serial, false);
      return run_inputs(inputs, jobs, [&](const std::string& path) {
        const td::GameTree g = td::load_efg(path);
        json j;
        j["schema"] = td::kReportSchema;
        j["input"] = path;
        for (td::Team t : {td::Team::kPlus, td::Team::kMinus}) {
          if (team != "both" && team != td::team_name(t)) continue;
          const auto tp = td::build_team(g, t, opt, false);
          const td::TeamStats s = td::team_stats(*tp);
          json one = json::parse(td::stats_to_json(s));
          one.erase("schema");
          std::cerr << path << " " << td::team_name(t) << ": #Seq " << s.seq_count
                    << ", sum |X_C| " << s.sum_xc << ", treewidth " << s.treewidth << "\n";
          if (team == "both") {
            j[td::team_name(t)] = one;
          } else {
            for (auto& [k, v] : one.items()) j[k] = v;
          }
        }
        return j.dump();
      });
    }
    if (*cmd_solve) {
      if (!report.empty() && inputs.size() != 1) {
        throw td::Error(td::ErrorCode::kInvalidArgument, "--report needs a single --in");
      }
      td::PipelineOptions opt = pipeline_options(mode, serial, verbose);
      opt.compute_gap = !no_gap;
      return run_inputs(inputs, jobs, [&](const std::string& path) {
        const td::GameTree g = td::load_efg(path);
        const td::RunReport r = td::run_solve(g, path, opt);
        const std::string text = td::report_to_json(r, !no_timing, plans);
        if (!report.empty()) write_file(report, text + "\n");
        std::cerr << path << ": value " << td::value_to_string(r.result.value) << " ("
                  << r.result.value.approx << "), gap " << r.result.gap.approx << "\n";
        return text;
      });
    }
    if (*cmd_export) {
      const td::ExportFormat fmt = td::parse_export_format(format);
      const td::GameTree g = td::load_efg(inputs[0]);
      td::PipelineOptions opt;
      opt.cap = td::cap_from_env();
      const td::SparseLP lp = td::build_saddle_lp(g, opt);
      json j;
      j["schema"] = td::kReportSchema;
      j["input"] = inputs[0];
      j["format"] = format;
      j["out"] = out;
      j["rows"] = lp.num_rows();
      j["cols"] = lp.num_cols();
      j["nnz"] = td::lp_size(lp);
      if (fmt == td::ExportFormat::kLpText) {
        write_file(out, td::export_lp_text(lp));
      } else {
        const td::MpsExport e = td::export_mps(lp);
        write_file(out, e.mps);
        write_file(out + ".names.json", e.name_map_json);
        j["name_map"] = out + ".names.json";
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*cmd_oracle) {
      return run_inputs(inputs, jobs, [&](const std::string& path) {
        const td::GameTree g = td::load_efg(path);
        const td::OracleResult r = td::brute_force_value(g, oracle_cap);
        json j;
        j["schema"] = td::kReportSchema;
        j["input"] = path;
        j["value"] = td::format_rational(r.value);
        j["value_float"] = r.value.get_d();
        j["pure_plans"] = {{"plus", r.plus_pure}, {"minus", r.minus_pure}};
        j["matrix"] = {{"rows", r.plus_distinct}, {"cols", r.minus_distinct}};
        return j.dump();
      });
    }
  } catch (const td::Error& e) {
    std::cerr << "error: " << td::error_code_name(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
