#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "xmcts/game.h"

namespace xmcts {

// Exact game value from the perspective of the player to move.
struct ExactValue {
  int value = 0;     // -1, 0 or +1
  int distance = 0;  // plies to the end under optimal play; 0 for draws
  friend bool operator==(const ExactValue&, const ExactValue&) = default;
};

// Plain negamax over the full game tree with a position cache. Prefers the
// shortest win and the longest loss. Returns nullopt ("unknown") when the
// depth limit or node budget is exhausted; it never guesses.
class NegamaxOracle {
 public:
  explicit NegamaxOracle(std::int64_t node_budget = 20'000'000) : node_budget_(node_budget) {}

  // depth_limit < 0 means unlimited.
  std::optional<ExactValue> solve(const GameState& s, int depth_limit = -1);

  std::int64_t nodes_searched() const { return nodes_; }
  void clear() { cache_.clear(); }

 private:
  std::optional<int> negamax(const GameState& s, int depth_left);

  std::int64_t node_budget_;
  std::int64_t nodes_ = 0;
  // Exact scores (see proven_score.h) from the mover's perspective.
  std::unordered_map<GameState, int, GameStateHash> cache_;
};

std::optional<ExactValue> negamax_oracle(const GameState& s, int depth_limit = -1);

}  // namespace xmcts
