#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "xmcts/enhancements.h"
#include "xmcts/game.h"

namespace xmcts {

struct SearchNode {
  explicit SearchNode(GameState s, int move_id = -1, std::string move_notation = {});

  GameState state;
  int move = -1;  // move from the parent; -1 at a fresh root
  std::string notation;

  std::int64_t visits = 0;
  std::int64_t playouts_started = 0;  // iterations whose playout began here
  std::array<double, 2> reward_sum{};

  // Number of legal moves; children are materialised lazily in legal-move
  // order, so children[i] is the i-th legal move.
  int legal_count = 0;
  std::vector<std::unique_ptr<SearchNode>> children;

  ScoreBounds bounds;
  AmafStats amaf;
  PnStats pn;

  PlayerId mover() const { return state.to_move(); }
  bool is_terminal() const { return state.is_terminal(); }
  double mean(PlayerId p) const { return visits > 0 ? reward_sum[index(p)] / static_cast<double>(visits) : 0.0; }
  int unexpanded() const { return legal_count - static_cast<int>(children.size()); }
  bool fully_expanded() const { return unexpanded() == 0; }

  // Materialises the next legal move as a child and returns it.
  SearchNode& expand_next();
  SearchNode* find_child(int move_id) const;
};

}  // namespace xmcts
