#pragma once

// UCT search with pluggable knowledge-free enhancements.

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "xmcts/enhancements.h"
#include "xmcts/game.h"
#include "xmcts/snapshot.h"
#include "xmcts/tree.h"

namespace xmcts {

struct SearchConfig {
  std::optional<std::int64_t> iterations;
  std::optional<std::int64_t> time_ms;
  double exploration = 1.414;
  std::uint64_t seed = 0;
  EnhancementFlags enh;
  EnhancementParams params;
  bool tree_reuse = true;
  // Checked between iterations; the search stops when it becomes true.
  const std::atomic<bool>* stop = nullptr;

  void validate() const;  // throws ConfigError
};

struct SearchResult {
  MoveRecord selected;
  std::int64_t iterations_performed = 0;
  TurnSnapshot snapshot;
};

// Runs iterations from `s` until the budget is spent or the root is solved.
// `tree` is reused when it holds `s` at its root and the config allows reuse;
// otherwise it is replaced. On return it holds the searched tree.
SearchResult search(const GameState& s, const SearchConfig& cfg, EnhancementTables& tables,
                    std::unique_ptr<SearchNode>& tree, std::optional<double> previous_turn_score = std::nullopt);

// UCT child selection at an expanded, non-terminal node. `grave_ref` is the
// reference node for GRAVE (ignored unless cfg.enh.grave).
SearchNode& select_child(const SearchNode& n, const SearchConfig& cfg, const SearchNode* grave_ref = nullptr);

// Plays from `s` to the end of the game, appending (player, move) pairs to
// `trace`. Returns a draw when the ply cap is hit.
GameOutcome playout(const GameState& s, const SearchConfig& cfg, const EnhancementTables& tables, Rng& rng,
                    std::vector<PlayedStep>& trace);

// Updates visits and rewards along `path` (root first), then the enabled
// enhancement statistics. trace[i] is the move played at path[i] for the path
// part, followed by the playout moves. `context` holds moves played before
// the root (for n-grams).
void backpropagate(std::span<SearchNode* const> path, const GameOutcome& outcome, std::span<const PlayedStep> trace,
                   EnhancementTables& tables, const SearchConfig& cfg, PlayerId root_player,
                   std::span<const PlayedStep> context = {});

struct MoveChoice {
  MoveRecord move;
  ChoiceRationale rationale = ChoiceRationale::kMostVisits;
  const SearchNode* child = nullptr;
};

// Proven win (shortest) if any, else the most visited child not proven lost
// (ties by mean then move order); proven-lost children only when nothing else
// was visited (longest loss). Throws UsageError without visited children.
MoveChoice final_move_choice(const SearchNode& root);

// Detaches the subtree reached by `played` to serve as the next root, or
// returns nullptr when that move was never expanded.
std::unique_ptr<SearchNode> advance_root(std::unique_ptr<SearchNode> tree, int played);

// Most-visited line from `root` (ties by move order). Below an exact-solved
// node the child realising the proof is followed instead, and the line stops
// at the proven end of the game.
std::vector<MoveRecord> principal_variation(const SearchNode& root, int max_plies);

// Builds the per-turn snapshot of a searched root.
TurnSnapshot make_snapshot(const SearchNode& root, const SearchConfig& cfg, const EnhancementTables& tables,
                           const MoveChoice& choice, std::int64_t iterations, std::optional<double> previous_turn_score);

}  // namespace xmcts
