#pragma once

// Snapshots rebuilt from published example positions. Scores come from
// integer reward sums (sum / visits) so every printed four-decimal score and
// every percentage matches tests/oracles/explain_goldens.py.

#include <string>
#include <vector>

#include "xmcts/snapshot.h"

namespace xmcts::golden {

inline MoveStats stat(std::string notation, std::int64_t visits, std::int64_t sum, bool bounds = true) {
  MoveStats m;
  m.notation = std::move(notation);
  m.visits = visits;
  m.score = visits > 0 ? static_cast<double>(sum) / static_cast<double>(visits) : 0.0;
  if (bounds) m.bounds = BoundsView{};
  return m;
}

inline MoveStats solved(MoveStats m, double value, int distance_plies) {
  m.solved = true;
  m.solved_value = value;
  m.solved_distance_plies = distance_plies;
  m.bounds = BoundsView{value, value};
  return m;
}

// Breakthrough, score bounded: a proven win three plies deep.
inline TurnSnapshot breakthrough_proven_win() {
  TurnSnapshot s;
  s.game = "breakthrough";
  s.iterations_performed = 1599;
  s.previous_turn_score = 0.3072;
  s.features.solver = true;
  s.move_stats.push_back(solved(stat("H6-H7", 204, 94), 1.0, 3));
  s.move_stats.push_back(stat("B2-C3", 17, -5));
  s.move_stats.push_back(stat("D6-C7", 155, 61));
  s.move_stats.push_back(stat("A2-A3", 9, 1));  // lowest slight advantage, 55.56%
  for (int i = 0; i < 13; ++i) s.move_stats.push_back(stat("F" + std::to_string(i) + "-X", 20, 6));
  for (int i = 0; i < 5; ++i) s.move_stats.push_back(stat("G" + std::to_string(i) + "-X", 10, 0));
  s.move_stats.push_back(stat("C2-C3", 10, -4));
  s.principal_variation = {"E3-E2", "H7-G8"};
  s.rationale = ChoiceRationale::kProvenWin;
  return s;
}

// Gomoku, score bounded with GRAVE: the robust child is not the best mean.
inline TurnSnapshot gomoku_grave() {
  TurnSnapshot s;
  s.game = "gomoku";
  s.iterations_performed = 4671;
  s.previous_turn_score = 0.0980;
  s.features.solver = true;
  s.features.grave = true;
  auto with_amaf = [](MoveStats m, std::int64_t v, double score) {
    m.amaf = AmafView{v, score};
    return m;
  };
  s.move_stats.push_back(with_amaf(stat("K12+Marker1", 1111, 109), 1923, 0.1014));
  s.move_stats.push_back(with_amaf(stat("E12+Marker1", 95, 3), 1204, 0.0880));
  s.move_stats.push_back(with_amaf(stat("K14+Marker1", 5, -3), 1090, 0.0165));
  s.move_stats.push_back(with_amaf(stat("M14+Marker1", 3, 3), 1500, 0.0426));
  int k = 0;
  auto name = [&k] { return "Z" + std::to_string(++k) + "+Marker1"; };
  for (int i = 0; i < 88; ++i) s.move_stats.push_back(with_amaf(stat(name(), 4, 3), 500, 0.0));  // 87.50%
  s.move_stats.push_back(with_amaf(stat(name(), 875, 88), 500, 0.0));                          // 55.03%
  for (int i = 0; i < 4; ++i) s.move_stats.push_back(with_amaf(stat(name(), 10, 2), 500, 0.0));  // 60.00%
  s.move_stats.push_back(with_amaf(stat(name(), 1000, 99), 500, 0.0));                         // 54.95%
  for (int i = 0; i < 19; ++i) s.move_stats.push_back(with_amaf(stat(name(), 20, 0), 500, 0.0));
  s.move_stats.push_back(with_amaf(stat(name(), 8, -1), 500, 0.0));  // 43.75%
  for (int i = 0; i < 20; ++i) s.move_stats.push_back(with_amaf(stat(name(), 10, -3), 500, 0.0));
  for (int i = 0; i < 83; ++i) s.move_stats.push_back(with_amaf(stat(name(), 4, -4), 500, 0.0));
  return s;
}

// MiniShogi numbers, score bounded; the board itself plays no part here.
inline TurnSnapshot minishogi() {
  TurnSnapshot s;
  s.game = "minishogi";
  s.iterations_performed = 206;
  s.previous_turn_score = 0.1250;
  s.features.solver = true;
  s.move_stats = {stat("D2-C3", 31, 11), stat("D1-E2", 11, -1), stat("D2-C1", 14, 0),  stat("B1-B2", 28, 8),
                  stat("E1-E3", 7, -3),  stat("B1-C2", 17, 1),  stat("D2-E3", 8, -2),  stat("A1-A2", 9, 1),
                  stat("C1-C2", 10, 2),  stat("E1-D2", 5, 0),   stat("B1-A2", 20, 1),  stat("C1-B2", 15, -1),
                  stat("E1-E2", 6, -2),  stat("C1-D1", 6, -4)};
  return s;
}

// Breakthrough with MAST and NST: a clearly best move under the general flag.
inline TurnSnapshot breakthrough_mast_nst() {
  TurnSnapshot s;
  s.game = "breakthrough";
  s.iterations_performed = 7351;
  s.previous_turn_score = 0.5612;
  s.features.solver = true;
  s.features.mast = true;
  s.features.nst = true;
  auto grams = [](MoveStats m, std::int64_t v1, double g1, std::int64_t v2, double g2) {
    m.ngrams = {{v1, g1}, {v2, g2}};
    return m;
  };
  s.move_stats.push_back(grams(stat("E4-D5", 5146, 3850), 30580, 0.275278, 5411, 0.719830));
  s.move_stats.push_back(grams(stat("C6-B7", 197, 95), 13656, 0.499414, 317, 0.476341));
  s.move_stats.push_back(grams(stat("A2-A3", 22, 3), 900, 0.6, 40, 0.1));     // worst move, 56.82%
  s.move_stats.push_back(grams(stat("B2-B3", 50, 15), 800, 0.7, 40, 0.2));
  for (int i = 0; i < 21; ++i) {
    s.move_stats.push_back(grams(stat("H" + std::to_string(i) + "-X", 40, 10), 700, 0.3, 30, 0.0));
  }
  return s;
}

// Ultimate Tic-Tac-Toe: a higher mean loses to a higher visit count.
inline TurnSnapshot uttt_visits_over_mean() {
  TurnSnapshot s;
  s.game = "ultimate_ttt";
  s.iterations_performed = 24465;
  s.previous_turn_score = 0.0795;
  s.features.solver = true;
  s.move_stats = {stat("I5+Disc1", 4922, 398), stat("H5+Disc1", 1122, 11), stat("G4+Disc1", 2749, 162),
                  stat("G5+Disc1", 2500, 203), stat("G6+Disc1", 1500, 60),  stat("H4+Disc1", 1400, 40),
                  stat("H6+Disc1", 1300, 20),  stat("I4+Disc1", 1200, 30),  stat("I6+Disc1", 1100, 10)};
  return s;
}

// Connect Four, score bounded, snapshot taken from a reused solved tree.
inline TurnSnapshot connect_four_reused_tree() {
  TurnSnapshot s;
  s.game = "connect_four";
  s.iterations_performed = 0;
  s.previous_turn_score = 0.3352;
  s.features.solver = true;
  s.move_stats = {solved(stat("E1/2+Disc1", 64, 38), 1.0, 3), stat("A1/3+Disc1", 10, 0),
                  solved(stat("C1/1+Disc1", 5, 1), -1.0, 2), stat("B1/1+Disc1", 5, 2), stat("D1/1+Disc1", 3, -1)};
  s.principal_variation = {"A1/3+Disc2", "E1/3+Disc1"};
  s.rationale = ChoiceRationale::kProvenWin;
  return s;
}

}  // namespace xmcts::golden
