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

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "teamdecomp/generators.hpp"

namespace teamdecomp {

using nlohmann::json;

namespace {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::kChance: return "chance";
    case NodeKind::kDecision: return "decision";
    case NodeKind::kTerminal: return "terminal";
  }
  return "?";
}

[[noreturn]] void parse_fail(size_t index, const std::string& field,
                             const std::string& why) {
  throw Error(ErrorCode::kParse, "nodes[" + std::to_string(index) + "]." +
                                     field + ": " + why);
}

const json& field(const json& obj, size_t index, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) parse_fail(index, name, "missing");
  return *it;
}

Rational rational_field(const json& v, size_t index, const std::string& name) {
  if (!v.is_string()) parse_fail(index, name, "expected rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    parse_fail(index, name, e.what());
  }
}

}  // namespace

std::string efg_to_json(const GameTree& game) {
  std::ostringstream os;
  os << "{\"nodes\": [\n";
  for (int h = 0; h < game.num_nodes(); ++h) {
    const Node& n = game.node(h);
    json j = json::object();
    j["parent"] = n.parent < 0 ? json(nullptr) : json(n.parent);
    j["action"] = n.action;
    j["kind"] = kind_name(n.kind);
    if (n.kind == NodeKind::kDecision) {
      j["team"] = team_name(n.team);
      j["player"] = n.player;
      j["infoset"] = n.infoset;
    } else if (n.kind == NodeKind::kChance) {
      json probs = json::array();
      for (const Rational& p : n.probs) probs.push_back(format_rational(p));
      j["probs"] = probs;
    } else {
      j["payoff"] = format_rational(n.payoff);
    }
    os << "  " << j.dump() << (h + 1 < game.num_nodes() ? ",\n" : "\n");
  }
  os << "]}\n";
  return os.str();
}

GameTree efg_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw Error(ErrorCode::kParse, "top level must be an object with a \"nodes\" array");
  }
  const json& arr = doc["nodes"];
  if (arr.empty()) throw Error(ErrorCode::kParse, "\"nodes\" array is empty");
  std::vector<Node> nodes;
  nodes.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& o = arr[i];
    if (!o.is_object()) parse_fail(i, "", "node must be an object");
    Node n;
    const json& parent = field(o, i, "parent");
    if (parent.is_null()) {
      n.parent = -1;
    } else if (parent.is_number_integer()) {
      n.parent = parent.get<int>();
    } else {
      parse_fail(i, "parent", "expected integer or null");
    }
    const json& action = field(o, i, "action");
    if (!action.is_string()) parse_fail(i, "action", "expected string");
    n.action = action.get<std::string>();
    const json& kind = field(o, i, "kind");
    if (!kind.is_string()) parse_fail(i, "kind", "expected string");
    const std::string k = kind.get<std::string>();
    if (k == "chance") {
      n.kind = NodeKind::kChance;
      const json& probs = field(o, i, "probs");
      if (!probs.is_array()) parse_fail(i, "probs", "expected array");
      for (size_t a = 0; a < probs.size(); ++a) {
        n.probs.push_back(
            rational_field(probs[a], i, "probs[" + std::to_string(a) + "]"));
      }
    } else if (k == "decision") {
      n.kind = NodeKind::kDecision;
      const json& team = field(o, i, "team");
      if (team == "plus") {
        n.team = Team::kPlus;
      } else if (team == "minus") {
        n.team = Team::kMinus;
      } else {
        parse_fail(i, "team", "expected \"plus\" or \"minus\"");
      }
      const json& player = field(o, i, "player");
      const json& infoset = field(o, i, "infoset");
      if (!player.is_number_integer() || player.get<int>() < 0) {
        parse_fail(i, "player", "expected non-negative integer");
      }
      if (!infoset.is_number_integer() || infoset.get<int>() < 0) {
        parse_fail(i, "infoset", "expected non-negative integer");
      }
      n.player = player.get<int>();
      n.infoset = infoset.get<int>();
    } else if (k == "terminal") {
      n.kind = NodeKind::kTerminal;
      n.payoff = rational_field(field(o, i, "payoff"), i, "payoff");
    } else {
      parse_fail(i, "kind", "unknown kind '" + k + "'");
    }
    if (i == 0 && n.parent != -1) parse_fail(i, "parent", "root must have null parent");
    if (i > 0 && n.parent == -1) parse_fail(i, "parent", "only node 0 may be the root");
    nodes.push_back(std::move(n));
  }
  GameTree game = GameTree::from_nodes(std::move(nodes));
  ValidationReport report = validate(game);
  if (!report.ok()) {
    throw Error(ErrorCode::kValidation, "invalid game: " + report.summary());
  }
  return game;
}

void save_efg(const GameTree& game, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << efg_to_json(game);
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

GameTree load_efg(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return efg_from_json(buf.str());
}

}  // namespace teamdecomp
