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

#ifndef TEAMDECOMP_GENERATORS_HPP_
#define TEAMDECOMP_GENERATORS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "teamdecomp/game.hpp"

namespace teamdecomp {

// 3-CNF. Literals are signed 1-based variable indices (-2 is "not x2").
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  void check() const;  // throws kInvalidArgument
  bool satisfied_by(const std::vector<bool>& assignment) const;
  bool satisfiable() const;  // exhaustive
};

enum class Family {
  kKuhn,
  kLeduc,
  kLiarsDice,
  kGoofspiel,
  kSat,
  kWidthGap,
  kMatchingPennies,
};

const char* family_name(Family f);
Family parse_family(const std::string& name);  // throws kInvalidArgument

struct GameSpec {
  Family family = Family::kKuhn;
  int m = 2;  // |Team Plus|
  int n = 1;  // |Team Minus|
  int ranks = 3;
  int max_bets = 1;
  int suits = 2;
  bool no_raise = false;
  int faces = 3;
  bool limited = false;
  int k = 1;
  Cnf cnf;

  // Short name in the "mnXp" scheme, e.g. "21K3", "21GL", "21L133".
  std::string name() const;
};

GameTree make_game(const GameSpec& spec);

// Multiplayer Kuhn poker: ante 1, one bet of size 1; after a bet every
// other player responds fold/call once; highest live card wins.
GameTree make_kuhn(int m, int n, int r);

// Multiplayer Leduc poker with r ranks and c indistinguishable suits, at most
// b raises per round, raise sizes 2 and 4, ante 1.
GameTree make_leduc(int m, int n, int b, int r, int c, bool no_raise);

// One f-sided die per player. Bids (quantity, face) are ordered face-major;
// the player calling a true bid loses. The loser scores -1 and the other
// player in the call +1.
GameTree make_liars_dice(int m, int n, int f);

// Seating for Liar's Dice: the last 2n seats alternate Plus/Minus.
std::vector<Team> liars_dice_seats(int m, int n);

// Goofspiel with r prize cards revealed in random order and sequential
// hidden bids. Ties split the prize; payoff is the point difference to the
// table mean. The limited variant reveals only the set of top bidders.
GameTree make_goofspiel(int m, int n, int r, bool limited);

GameTree make_sat_game(const Cnf& cnf);
GameTree make_width_gap_game(int k);
GameTree make_matching_pennies();

struct RandomGameParams {
  int max_depth = 6;
  int max_branching = 3;
  int max_nodes = 200;
  int max_players_per_team = 2;
  int64_t max_pure_strategies = 10000;  // Π_I |A(I)| per team
  double terminal_prob = 0.25;
  double chance_prob = 0.25;
  double merge_prob = 0.6;  // chance to merge compatible nodes into one infoset
  int payoff_range = 3;
};

// Deterministic given (params, seed). Always passes validate().
GameTree make_random_game(const RandomGameParams& params, uint64_t seed);

// EFG-JSON.
std::string efg_to_json(const GameTree& game);
GameTree efg_from_json(const std::string& text);  // validates
void save_efg(const GameTree& game, const std::string& path);
GameTree load_efg(const std::string& path);

}  // namespace teamdecomp

#endif  // TEAMDECOMP_GENERATORS_HPP_
