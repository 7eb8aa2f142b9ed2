#include "xmcts/oracle.h"

#include <vector>

#include "xmcts/proven_score.h"

namespace xmcts {

std::optional<ExactValue> NegamaxOracle::solve(const GameState& s, int depth_limit) {
  nodes_ = 0;
  const auto score = negamax(s, depth_limit);
  if (!score) return std::nullopt;
  return ExactValue{proven_value(*score), proven_distance(*score)};
}

std::optional<int> NegamaxOracle::negamax(const GameState& s, int depth_left) {
  if (auto outcome = s.outcome()) {
    return encode_proven(static_cast<int>(outcome->utility(s.to_move())), 0);
  }
  if (auto it = cache_.find(s); it != cache_.end()) return it->second;
  if (depth_left == 0 || ++nodes_ > node_budget_) return std::nullopt;

  std::vector<int> moves;
  s.rules().generate_moves(s, moves);
  // A win in one ply is optimal; look for it before any deep line.
  for (int m : moves) {
    GameState child = s;
    s.rules().play(child, m);
    if (auto o = child.outcome(); o && o->utility(s.to_move()) > 0) {
      cache_.emplace(s, encode_proven(1, 1));
      return encode_proven(1, 1);
    }
  }
  int best = -kProvenScale - 1;
  for (int m : moves) {
    GameState child = s;
    s.rules().play(child, m);
    const auto child_score = negamax(child, depth_left < 0 ? -1 : depth_left - 1);
    if (!child_score) return std::nullopt;
    best = std::max(best, shift_ply(-*child_score));
    // No win in one ply exists, so a win in three cannot be improved on.
    if (best == encode_proven(1, 3)) break;
  }
  // Cached values are exact regardless of the depth limit they were found
  // under, since any unknown child aborts before this point.
  cache_.emplace(s, best);
  return best;
}

std::optional<ExactValue> negamax_oracle(const GameState& s, int depth_limit) {
  NegamaxOracle oracle;
  return oracle.solve(s, depth_limit);
}

}  // namespace xmcts
