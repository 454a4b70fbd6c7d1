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

#include "teamdecomp/generators.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>
#include <utility>

namespace teamdecomp {

void Cnf::check() const {
  if (num_vars < 1) {
    throw Error(ErrorCode::kInvalidArgument, "cnf needs at least one variable");
  }
  if (clauses.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cnf needs at least one clause");
  }
  for (const auto& clause : clauses) {
    if (clause.size() != 3) {
      throw Error(ErrorCode::kInvalidArgument, "clauses must have 3 literals");
    }
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > num_vars) {
        throw Error(ErrorCode::kInvalidArgument,
                    "literal " + std::to_string(lit) + " out of range");
      }
    }
  }
}

bool Cnf::satisfied_by(const std::vector<bool>& assignment) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      if (assignment[std::abs(lit) - 1] == (lit > 0)) sat = true;
    }
    if (!sat) return false;
  }
  return true;
}

bool Cnf::satisfiable() const {
  std::vector<bool> a(num_vars);
  for (uint64_t mask = 0; mask < (uint64_t{1} << num_vars); ++mask) {
    for (int v = 0; v < num_vars; ++v) a[v] = (mask >> v) & 1;
    if (satisfied_by(a)) return true;
  }
  return false;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::kKuhn: return "kuhn";
    case Family::kLeduc: return "leduc";
    case Family::kLiarsDice: return "liarsdice";
    case Family::kGoofspiel: return "goofspiel";
    case Family::kSat: return "sat";
    case Family::kWidthGap: return "widthgap";
    case Family::kMatchingPennies: return "pennies";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::kKuhn, Family::kLeduc, Family::kLiarsDice,
                   Family::kGoofspiel, Family::kSat, Family::kWidthGap,
                   Family::kMatchingPennies}) {
    if (name == family_name(f)) return f;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown family '" + name + "'");
}

std::string GameSpec::name() const {
  const std::string mn = std::to_string(m) + std::to_string(n);
  switch (family) {
    case Family::kKuhn: return mn + "K" + std::to_string(ranks);
    case Family::kLeduc:
      return mn + (no_raise ? "L'" : "L") + std::to_string(max_bets) +
             std::to_string(ranks) + std::to_string(suits);
    case Family::kLiarsDice: return mn + "D" + std::to_string(faces);
    case Family::kGoofspiel: return mn + (limited ? "GL" : "G");
    case Family::kSat:
      return "SAT" + std::to_string(cnf.num_vars) + "x" +
             std::to_string(cnf.clauses.size());
    case Family::kWidthGap: return "WG" + std::to_string(k);
    case Family::kMatchingPennies: return "MP";
  }
  return "?";
}

GameTree make_game(const GameSpec& s) {
  switch (s.family) {
    case Family::kKuhn: return make_kuhn(s.m, s.n, s.ranks);
    case Family::kLeduc:
      return make_leduc(s.m, s.n, s.max_bets, s.ranks, s.suits, s.no_raise);
    case Family::kLiarsDice: return make_liars_dice(s.m, s.n, s.faces);
    case Family::kGoofspiel: return make_goofspiel(s.m, s.n, s.ranks, s.limited);
    case Family::kSat: return make_sat_game(s.cnf);
    case Family::kWidthGap: return make_width_gap_game(s.k);
    case Family::kMatchingPennies: return make_matching_pennies();
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown family");
}

namespace {

template <class State>
struct Expansion {
  NodeKind kind = NodeKind::kTerminal;
  Team team = Team::kPlus;
  int player = 0;
  std::string infokey;
  std::vector<std::string> actions;
  std::vector<Rational> probs;
  std::vector<State> children;
  Rational payoff;
};

// Breadth-first construction; infoset ids follow first appearance.
template <class State, class Expand>
GameTree build_bfs(State root, Expand expand) {
  struct Item {
    int parent;
    std::string action;
    State state;
  };
  std::deque<Item> queue;
  queue.push_back(Item{-1, "", std::move(root)});
  std::vector<Node> nodes;
  std::map<std::tuple<int, int, std::string>, int> infosets;
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    Expansion<State> e = expand(item.state);
    Node node;
    node.parent = item.parent;
    node.action = std::move(item.action);
    node.kind = e.kind;
    const int id = static_cast<int>(nodes.size());
    if (e.kind == NodeKind::kDecision) {
      node.team = e.team;
      node.player = e.player;
      auto key = std::make_tuple(static_cast<int>(e.team), e.player, e.infokey);
      auto it = infosets.find(key);
      if (it == infosets.end()) {
        it = infosets.emplace(key, static_cast<int>(infosets.size())).first;
      }
      node.infoset = it->second;
    } else if (e.kind == NodeKind::kChance) {
      node.probs = std::move(e.probs);
    } else {
      node.payoff = e.payoff;
    }
    for (size_t i = 0; i < e.children.size(); ++i) {
      queue.push_back(Item{id, e.actions[i], std::move(e.children[i])});
    }
    nodes.push_back(std::move(node));
  }
  return GameTree::from_nodes(std::move(nodes));
}

// Team and within-team player id of seat p when Plus holds seats [0, m).
std::pair<Team, int> seat_of(int p, int m) {
  return p < m ? std::make_pair(Team::kPlus, p)
               : std::make_pair(Team::kMinus, p - m);
}

std::string join_ints(const std::vector<int>& v, const char* sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

void permutations(int r, int len, std::vector<int>& cur, std::vector<bool>& used,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int c = 0; c < r; ++c) {
    if (used[c]) continue;
    used[c] = true;
    cur.push_back(c);
    permutations(r, len, cur, used, out);
    cur.pop_back();
    used[c] = false;
  }
}

}  // namespace

GameTree make_kuhn(int m, int n, int r) {
  const int num = m + n;
  if (m < 0 || n < 0 || num < 2) {
    throw Error(ErrorCode::kInvalidArgument, "kuhn needs m + n >= 2");
  }
  if (r < num) {
    throw Error(ErrorCode::kInvalidArgument,
                "kuhn needs r >= m + n (" + std::to_string(num) + " cards)");
  }
  struct State {
    std::vector<int> cards;
    std::string hist;
  };
  std::vector<std::vector<int>> deals;
  {
    std::vector<int> cur;
    std::vector<bool> used(r);
    permutations(r, num, cur, used, deals);
  }
  auto showdown = [&](const std::vector<int>& cards, int bettor,
                      const std::vector<int>& callers) {
    std::vector<int> contrib(num, 1);
    std::vector<int> live;
    if (bettor >= 0) {
      contrib[bettor] += 1;
      live.push_back(bettor);
      for (int c : callers) {
        contrib[c] += 1;
        live.push_back(c);
      }
    } else {
      live.resize(num);
      std::iota(live.begin(), live.end(), 0);
    }
    int winner = live[0];
    for (int p : live) {
      if (cards[p] > cards[winner]) winner = p;
    }
    const int pot = std::accumulate(contrib.begin(), contrib.end(), 0);
    int plus = 0;
    for (int p = 0; p < m; ++p) plus += (p == winner ? pot : 0) - contrib[p];
    return Rational(plus);
  };
  auto expand = [&](const State& st) {
    Expansion<State> e;
    if (st.cards.empty()) {
      e.kind = NodeKind::kChance;
      const Rational p(1, static_cast<long>(deals.size()));
      for (const auto& d : deals) {
        e.actions.push_back(join_ints(d, ","));
        e.probs.push_back(p);
        e.children.push_back(State{d, ""});
      }
      return e;
    }
    const int len = static_cast<int>(st.hist.size());
    const size_t first_bet = st.hist.find('b');
    const int cur = len % num;
    if (first_bet == std::string::npos) {
      if (len == num) {
        e.payoff = showdown(st.cards, -1, {});
        return e;
      }
      e.actions = {"c", "b"};
    } else {
      const int fb = static_cast<int>(first_bet);
      if (len - fb - 1 == num - 1) {
        std::vector<int> callers;
        for (int k = fb + 1; k < len; ++k) {
          if (st.hist[k] == 'c') callers.push_back(k % num);
        }
        e.payoff = showdown(st.cards, fb % num, callers);
        return e;
      }
      e.actions = {"f", "c"};
    }
    e.kind = NodeKind::kDecision;
    std::tie(e.team, e.player) = seat_of(cur, m);
    e.infokey = std::to_string(st.cards[cur]) + "|" + st.hist;
    for (const auto& a : e.actions) e.children.push_back(State{st.cards, st.hist + a});
    return e;
  };
  return build_bfs(State{}, expand);
}

GameTree make_leduc(int m, int n, int b, int r, int c, bool no_raise) {
  const int num = m + n;
  if (m < 0 || n < 0 || num < 2 || r < 1 || c < 1 || b < 1 ||
      c * r < num + 1) {
    throw Error(ErrorCode::kInvalidArgument, "leduc parameters out of range");
  }
  struct State {
    std::vector<int> cards;  // empty before the deal
    int board = -1;
    int round = 0;
    std::string hist;
    std::vector<int> contrib;
    std::vector<bool> folded;
    int raises = 0;
    int pending = 0;
    int cur = 0;
  };
  auto active_count = [&](const State& s) {
    int k = 0;
    for (int p = 0; p < num; ++p) k += !s.folded[p];
    return k;
  };
  auto next_active = [&](const State& s, int from) {
    for (int d = 1; d <= num; ++d) {
      const int p = (from + d) % num;
      if (!s.folded[p]) return p;
    }
    return from;
  };
  auto payoff = [&](const State& s) {
    std::vector<int> live;
    for (int p = 0; p < num; ++p) {
      if (!s.folded[p]) live.push_back(p);
    }
    std::vector<int> winners;
    if (live.size() == 1) {
      winners = live;
    } else {
      auto strength = [&](int p) {
        return (s.cards[p] == s.board ? 1000 : 0) + s.cards[p];
      };
      int best = -1;
      for (int p : live) best = std::max(best, strength(p));
      for (int p : live) {
        if (strength(p) == best) winners.push_back(p);
      }
    }
    const int pot = std::accumulate(s.contrib.begin(), s.contrib.end(), 0);
    Rational plus = 0;
    for (int p = 0; p < m; ++p) {
      bool won = std::find(winners.begin(), winners.end(), p) != winners.end();
      plus += (won ? Rational(pot, static_cast<long>(winners.size())) : Rational(0)) -
              s.contrib[p];
    }
    return plus;
  };
  // Ordered private deals with multiset weights.
  std::vector<std::vector<int>> deals;
  std::vector<Rational> deal_probs;
  {
    std::vector<int> left(r, c), cur;
    std::function<void(Rational)> rec = [&](Rational p) {
      if (static_cast<int>(cur.size()) == num) {
        deals.push_back(cur);
        deal_probs.push_back(p);
        return;
      }
      const int total = std::accumulate(left.begin(), left.end(), 0);
      for (int k = 0; k < r; ++k) {
        if (!left[k]) continue;
        Rational q = p * Rational(left[k], total);
        --left[k];
        cur.push_back(k);
        rec(q);
        cur.pop_back();
        ++left[k];
      }
    };
    rec(Rational(1));
  }
  auto start_round = [&](State s) {
    s.raises = 0;
    s.pending = active_count(s);
    s.cur = s.folded[0] ? next_active(s, 0) : 0;
    return s;
  };
  auto expand = [&](const State& st) {
    Expansion<State> e;
    if (st.cards.empty()) {
      e.kind = NodeKind::kChance;
      for (size_t i = 0; i < deals.size(); ++i) {
        State s;
        s.cards = deals[i];
        s.contrib.assign(num, 1);
        s.folded.assign(num, false);
        e.actions.push_back(join_ints(deals[i], ","));
        e.probs.push_back(deal_probs[i]);
        e.children.push_back(start_round(s));
      }
      return e;
    }
    if (active_count(st) == 1 || (st.pending == 0 && st.round == 1)) {
      e.payoff = payoff(st);
      return e;
    }
    if (st.pending == 0 && st.round == 0) {
      e.kind = NodeKind::kChance;
      std::vector<int> left(r, c);
      for (int p = 0; p < num; ++p) --left[st.cards[p]];
      const int total = std::accumulate(left.begin(), left.end(), 0);
      for (int k = 0; k < r; ++k) {
        if (!left[k]) continue;
        State s = st;
        s.board = k;
        s.round = 1;
        s.hist += "/";
        e.actions.push_back(std::to_string(k));
        e.probs.push_back(Rational(left[k], total));
        e.children.push_back(start_round(s));
      }
      return e;
    }
    e.kind = NodeKind::kDecision;
    const int p = st.cur;
    std::tie(e.team, e.player) = seat_of(p, m);
    const int high = *std::max_element(st.contrib.begin(), st.contrib.end());
    const bool facing = st.contrib[p] < high;
    const bool can_raise =
        st.raises < b && !(no_raise && e.team == Team::kPlus);
    const int size = st.round == 0 ? 2 : 4;
    auto after = [&](State s) {
      s.cur = next_active(s, p);
      return s;
    };
    if (facing) {
      State f = st;
      f.folded[p] = true;
      f.pending -= 1;
      f.hist += "f";
      e.actions.push_back("f");
      e.children.push_back(after(f));
    }
    {
      State k = st;
      k.contrib[p] = high;
      k.pending -= 1;
      k.hist += "c";
      e.actions.push_back("c");
      e.children.push_back(after(k));
    }
    if (can_raise) {
      State s = st;
      s.contrib[p] = high + size;
      s.raises += 1;
      s.pending = active_count(s) - 1;
      s.hist += "r";
      e.actions.push_back("r");
      e.children.push_back(after(s));
    }
    e.infokey = std::to_string(st.cards[p]) + "|" + std::to_string(st.board) +
                "|" + st.hist;
    return e;
  };
  return build_bfs(State{}, expand);
}

std::vector<Team> liars_dice_seats(int m, int n) {
  const int num = m + n;
  std::vector<Team> seats(num, Team::kPlus);
  for (int k = 0; k < 2 * n; ++k) {
    seats[num - 2 * n + k] = (k % 2 == 0) ? Team::kPlus : Team::kMinus;
  }
  return seats;
}

GameTree make_liars_dice(int m, int n, int f) {
  if (f < 2 || n < 1 || m < n) {
    throw Error(ErrorCode::kInvalidArgument,
                "liar's dice needs f >= 2 and m >= n >= 1");
  }
  const int num = m + n;
  const std::vector<Team> seats = liars_dice_seats(m, n);
  std::vector<int> player_id(num);
  {
    int plus = 0, minus = 0;
    for (int p = 0; p < num; ++p) {
      player_id[p] = seats[p] == Team::kPlus ? plus++ : minus++;
    }
  }
  struct Bid {
    int quantity, face;
  };
  std::vector<Bid> bids;
  for (int face = 1; face <= f; ++face) {
    for (int q = 1; q <= num; ++q) bids.push_back(Bid{q, face});
  }
  const int kCall = -1;
  struct State {
    std::vector<int> dice;
    std::vector<int> hist;  // bid indices, kCall last when called
  };
  std::vector<std::vector<int>> rolls;
  {
    std::vector<int> cur(num, 1);
    for (;;) {
      rolls.push_back(cur);
      int i = num - 1;
      while (i >= 0 && cur[i] == f) cur[i--] = 1;
      if (i < 0) break;
      ++cur[i];
    }
  }
  auto expand = [&](const State& st) {
    Expansion<State> e;
    if (st.dice.empty()) {
      e.kind = NodeKind::kChance;
      const Rational p(1, static_cast<long>(rolls.size()));
      for (const auto& roll : rolls) {
        e.actions.push_back(join_ints(roll, ""));
        e.probs.push_back(p);
        e.children.push_back(State{roll, {}});
      }
      return e;
    }
    const int len = static_cast<int>(st.hist.size());
    if (len > 0 && st.hist.back() == kCall) {
      const int bidder = (len - 2) % num;
      const int caller = (len - 1) % num;
      const Bid& bid = bids[st.hist[len - 2]];
      int count = 0;
      for (int d : st.dice) count += d == bid.face;
      const int loser = count >= bid.quantity ? caller : bidder;
      const int winner = loser == caller ? bidder : caller;
      int plus = 0;
      if (seats[loser] == Team::kPlus) plus -= 1;
      if (seats[winner] == Team::kPlus) plus += 1;
      e.payoff = plus;
      return e;
    }
    const int cur = len % num;
    e.kind = NodeKind::kDecision;
    e.team = seats[cur];
    e.player = player_id[cur];
    e.infokey = std::to_string(st.dice[cur]) + "|" + join_ints(st.hist, ",");
    const int last = len ? st.hist.back() : -1;
    for (int k = last + 1; k < static_cast<int>(bids.size()); ++k) {
      State s = st;
      s.hist.push_back(k);
      e.actions.push_back(std::to_string(bids[k].quantity) + "x" +
                          std::to_string(bids[k].face));
      e.children.push_back(std::move(s));
    }
    if (len > 0) {
      State s = st;
      s.hist.push_back(kCall);
      e.actions.push_back("call");
      e.children.push_back(std::move(s));
    }
    return e;
  };
  return build_bfs(State{}, expand);
}

GameTree make_goofspiel(int m, int n, int r, bool limited) {
  const int num = m + n;
  if (r < 2 || m < 0 || n < 0 || num < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "goofspiel needs r >= 2 and at least two players");
  }
  struct State {
    std::vector<int> prizes;
    std::vector<std::vector<int>> bids;  // completed rounds
    std::vector<int> cur;                // bids of the current round so far
  };
  auto top_bidders = [](const std::vector<int>& round) {
    const int high = *std::max_element(round.begin(), round.end());
    std::vector<int> top;
    for (size_t q = 0; q < round.size(); ++q) {
      if (round[q] == high) top.push_back(static_cast<int>(q));
    }
    return top;
  };
  auto payoff = [&](const State& s) {
    std::vector<Rational> pts(num, Rational(0));
    for (size_t k = 0; k < s.bids.size(); ++k) {
      const std::vector<int> top = top_bidders(s.bids[k]);
      for (int q : top) pts[q] += Rational(s.prizes[k], static_cast<long>(top.size()));
    }
    Rational total = 0;
    for (const auto& p : pts) total += p;
    const Rational mean = total / num;
    Rational plus = 0;
    for (int p = 0; p < m; ++p) plus += pts[p] - mean;
    return plus;
  };
  auto expand = [&](const State& st) {
    Expansion<State> e;
    if (static_cast<int>(st.bids.size()) == r) {
      e.payoff = payoff(st);
      return e;
    }
    if (st.prizes.size() == st.bids.size()) {
      e.kind = NodeKind::kChance;
      std::vector<int> rest;
      for (int card = 1; card <= r; ++card) {
        if (std::find(st.prizes.begin(), st.prizes.end(), card) == st.prizes.end()) {
          rest.push_back(card);
        }
      }
      for (int card : rest) {
        State s = st;
        s.prizes.push_back(card);
        e.actions.push_back(std::to_string(card));
        e.probs.push_back(Rational(1, static_cast<long>(rest.size())));
        e.children.push_back(std::move(s));
      }
      return e;
    }
    const int p = static_cast<int>(st.cur.size());
    e.kind = NodeKind::kDecision;
    std::tie(e.team, e.player) = seat_of(p, m);
    std::vector<int> used;
    for (const auto& round : st.bids) used.push_back(round[p]);
    std::string key = "p" + join_ints(st.prizes, ",");
    if (limited) {
      key += "|u" + join_ints(used, ",") + "|t";
      for (const auto& round : st.bids) key += "[" + join_ints(top_bidders(round), ",") + "]";
    } else {
      key += "|b";
      for (const auto& round : st.bids) key += "[" + join_ints(round, ",") + "]";
    }
    e.infokey = key;
    for (int card = 1; card <= r; ++card) {
      if (std::find(used.begin(), used.end(), card) != used.end()) continue;
      State s = st;
      s.cur.push_back(card);
      if (static_cast<int>(s.cur.size()) == num) {
        s.bids.push_back(s.cur);
        s.cur.clear();
      }
      e.actions.push_back(std::to_string(card));
      e.children.push_back(std::move(s));
    }
    return e;
  };
  return build_bfs(State{}, expand);
}

GameTree make_sat_game(const Cnf& cnf) {
  cnf.check();
  // stage 0: nature picks a clause; 1: P1 picks a literal; 2: P2 picks a
  // value for that literal's variable; 3: terminal.
  struct State {
    int stage = 0;
    int clause = -1;
    int literal = -1;
    bool value = false;
  };
  const long m = static_cast<long>(cnf.clauses.size());
  auto expand = [&](const State& st) {
    Expansion<State> e;
    switch (st.stage) {
      case 0:
        e.kind = NodeKind::kChance;
        for (long k = 0; k < m; ++k) {
          e.actions.push_back("c" + std::to_string(k));
          e.probs.push_back(Rational(1, m));
          e.children.push_back(State{1, static_cast<int>(k), -1, false});
        }
        break;
      case 1:
        e.kind = NodeKind::kDecision;
        e.team = Team::kPlus;
        e.player = 0;
        e.infokey = "c" + std::to_string(st.clause);
        for (int k = 0; k < 3; ++k) {
          e.actions.push_back("l" + std::to_string(k));
          e.children.push_back(State{2, st.clause, k, false});
        }
        break;
      case 2: {
        const int lit = cnf.clauses[st.clause][st.literal];
        e.kind = NodeKind::kDecision;
        e.team = Team::kPlus;
        e.player = 1;
        e.infokey = "x" + std::to_string(std::abs(lit));
        e.actions = {"T", "F"};
        e.children.push_back(State{3, st.clause, st.literal, true});
        e.children.push_back(State{3, st.clause, st.literal, false});
        break;
      }
      default: {
        const int lit = cnf.clauses[st.clause][st.literal];
        e.payoff = (st.value == (lit > 0)) ? 1 : 0;
        break;
      }
    }
    return e;
  };
  return build_bfs(State{}, expand);
}

GameTree make_width_gap_game(int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "width-gap needs k >= 1");
  // stage 0: t1; 1: P1 action; 2: t2; 3: P2 action; 4: terminal.
  struct State {
    int stage = 0;
    int t1 = -1;
    int a = -1;
    int t2 = -1;
  };
  auto expand = [&](const State& st) {
    Expansion<State> e;
    switch (st.stage) {
      case 0:
      case 2:
        e.kind = NodeKind::kChance;
        for (int t = 0; t < 2; ++t) {
          State s = st;
          (st.stage == 0 ? s.t1 : s.t2) = t;
          s.stage += 1;
          e.actions.push_back("t" + std::to_string(t));
          e.probs.push_back(Rational(1, 2));
          e.children.push_back(s);
        }
        break;
      case 1:
        e.kind = NodeKind::kDecision;
        e.team = Team::kPlus;
        e.player = 0;
        e.infokey = "t1=" + std::to_string(st.t1);
        for (int a = 0; a < k; ++a) {
          State s = st;
          s.a = a;
          s.stage = 2;
          e.actions.push_back("a" + std::to_string(a));
          e.children.push_back(s);
        }
        break;
      case 3:
        e.kind = NodeKind::kDecision;
        e.team = Team::kPlus;
        e.player = 1;
        e.infokey = "t2=" + std::to_string(st.t2);
        for (int b = 0; b < 2; ++b) {
          State s = st;
          s.stage = 4;
          e.actions.push_back("b" + std::to_string(b));
          e.children.push_back(s);
        }
        break;
      default:
        e.payoff = 0;
        break;
    }
    return e;
  };
  return build_bfs(State{}, expand);
}

GameTree make_matching_pennies() {
  struct State {
    int stage = 0;
    int first = -1;
    int second = -1;
  };
  auto expand = [](const State& st) {
    Expansion<State> e;
    if (st.stage == 2) {
      e.payoff = st.first == st.second ? 1 : -1;
      return e;
    }
    e.kind = NodeKind::kDecision;
    e.team = st.stage == 0 ? Team::kPlus : Team::kMinus;
    e.player = 0;
    e.infokey = "";
    e.actions = {"H", "T"};
    for (int a = 0; a < 2; ++a) {
      State s = st;
      (st.stage == 0 ? s.first : s.second) = a;
      s.stage += 1;
      e.children.push_back(s);
    }
    return e;
  };
  return build_bfs(State{}, expand);
}

GameTree make_random_game(const RandomGameParams& params, uint64_t seed) {
  for (uint64_t attempt = 0;; ++attempt) {
    std::mt19937_64 rng(seed * 1000003ull + attempt);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform_int = [&](int lo, int hi) {
      return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    const int plus_players = uniform_int(1, params.max_players_per_team);
    const int minus_players = uniform_int(1, params.max_players_per_team);
    const int total_players = plus_players + minus_players;

    std::vector<Node> nodes(1);
    std::deque<int> queue{0};
    while (!queue.empty()) {
      const int h = queue.front();
      queue.pop_front();
      Node& node = nodes[h];
      const int depth = h == 0 ? 0 : nodes[node.parent].depth + 1;
      node.depth = depth;
      const int remaining = params.max_nodes - static_cast<int>(nodes.size()) -
                            static_cast<int>(queue.size());
      const int arity = uniform_int(2, params.max_branching);
      const bool leaf = depth >= params.max_depth || remaining < arity ||
                        (h > 0 && unit(rng) < params.terminal_prob);
      if (leaf) {
        node.kind = NodeKind::kTerminal;
        node.payoff = uniform_int(-params.payoff_range, params.payoff_range);
        continue;
      }
      if (unit(rng) < params.chance_prob) {
        node.kind = NodeKind::kChance;
        std::vector<int> w(arity);
        int total = 0;
        for (int& x : w) total += (x = uniform_int(1, 3));
        for (int x : w) node.probs.push_back(Rational(x, total));
      } else {
        node.kind = NodeKind::kDecision;
        const int who = uniform_int(0, total_players - 1);
        node.team = who < plus_players ? Team::kPlus : Team::kMinus;
        node.player = who < plus_players ? who : who - plus_players;
      }
      for (int a = 0; a < arity; ++a) {
        Node child;
        child.parent = h;
        child.action = "a" + std::to_string(a);
        queue.push_back(static_cast<int>(nodes.size()));
        nodes.push_back(std::move(child));
        nodes[h].children.push_back(static_cast<int>(nodes.size()) - 1);
      }
    }

    // Infosets, depth by depth: nodes of one player merge only when they
    // share depth, the player's own sequence and the action count.
    const int n = static_cast<int>(nodes.size());
    int next_infoset = 0;
    int max_depth = 0;
    for (const Node& nd : nodes) max_depth = std::max(max_depth, nd.depth);
    std::vector<int> child_index(n, 0);
    for (int h = 0; h < n; ++h) {
      for (size_t a = 0; a < nodes[h].children.size(); ++a) {
        child_index[nodes[h].children[a]] = static_cast<int>(a);
      }
    }
    // Flattened (infoset, action) pairs of one player above h.
    auto player_seq = [&](int h, Team team, int player) {
      std::vector<int> s;
      for (int x = h; nodes[x].parent >= 0; x = nodes[x].parent) {
        const Node& p = nodes[nodes[x].parent];
        if (p.kind == NodeKind::kDecision && p.team == team && p.player == player) {
          s.push_back(p.infoset);
          s.push_back(child_index[x]);
        }
      }
      std::reverse(s.begin(), s.end());
      return s;
    };
    for (int d = 0; d <= max_depth; ++d) {
      std::map<std::tuple<int, int, std::vector<int>, size_t>, std::vector<int>> groups;
      for (int h = 0; h < n; ++h) {
        const Node& nd = nodes[h];
        if (nd.depth != d || nd.kind != NodeKind::kDecision) continue;
        groups[{static_cast<int>(nd.team), nd.player,
                player_seq(h, nd.team, nd.player), nd.children.size()}]
            .push_back(h);
      }
      // Deterministic group order: by first node index.
      std::vector<std::vector<int>> ordered;
      for (auto& [key, members] : groups) ordered.push_back(members);
      std::sort(ordered.begin(), ordered.end());
      for (auto& members : ordered) {
        std::vector<int> open;  // infosets of this group open for merging
        for (int h : members) {
          if (!open.empty() && unit(rng) < params.merge_prob) {
            nodes[h].infoset = open[uniform_int(0, static_cast<int>(open.size()) - 1)];
          } else {
            nodes[h].infoset = next_infoset++;
            open.push_back(nodes[h].infoset);
          }
        }
      }
    }
    // Renumber infosets by first node index.
    std::map<int, int> renumber;
    for (int h = 0; h < n; ++h) {
      if (nodes[h].kind != NodeKind::kDecision) continue;
      if (!renumber.count(nodes[h].infoset)) {
        const int id = static_cast<int>(renumber.size());
        renumber[nodes[h].infoset] = id;
      }
    }
    for (Node& nd : nodes) {
      if (nd.kind == NodeKind::kDecision) nd.infoset = renumber[nd.infoset];
    }
    GameTree game = GameTree::from_nodes(std::move(nodes));

    bool ok = true;
    for (Team t : {Team::kPlus, Team::kMinus}) {
      double count = 1.0;
      bool any = false;
      for (const Infoset& info : game.infosets()) {
        if (info.team != t) continue;
        any = true;
        count *= static_cast<double>(info.actions.size());
      }
      if (!any || count > static_cast<double>(params.max_pure_strategies)) {
        ok = false;
      }
    }
    if (ok && validate(game).ok()) return game;
  }
}

}  // namespace teamdecomp
