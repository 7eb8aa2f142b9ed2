#pragma once

// A game in progress with human, engine or random controllers. Engines keep
// their search tree and playout tables between turns.

#include <array>
#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xmcts/explain.h"
#include "xmcts/search.h"

namespace xmcts {

enum class ControllerKind { kHuman, kEngine, kRandom };

std::string_view controller_name(ControllerKind k);
// Accepts "human", "mcts" (or "engine") and "random"; throws ConfigError.
ControllerKind parse_controller(std::string_view name);

struct ControllerSpec {
  ControllerKind kind = ControllerKind::kHuman;
  SearchConfig search;  // engines; `seed` also drives the random controller
  friend bool operator==(const ControllerSpec& a, const ControllerSpec& b);
};

struct SessionConfig {
  GameKind game = GameKind::kConnectFour;
  BoardSize size = default_board_size(GameKind::kConnectFour);
  std::array<ControllerSpec, 2> players;
  int verbosity = 2;
  // Analysis budget; falls back to the searching engine's own budget.
  std::optional<std::int64_t> analysis_iterations;
  // Engine used by analyze when set; otherwise the engine of the player to
  // move, then the other engine, then a solver-only default.
  std::optional<SearchConfig> analysis_engine;
  ThresholdConfig thresholds;

  void validate() const;  // throws ConfigError
};

struct TurnRecord {
  PlayerId mover = PlayerId::kFirst;
  std::string move;
  std::string state;  // serialization after the move
  std::optional<TurnSnapshot> snapshot;
  std::optional<ExplanationReport> report;
  friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

class GameSession {
 public:
  explicit GameSession(SessionConfig cfg);
  ~GameSession();
  GameSession(const GameSession&) = delete;
  GameSession& operator=(const GameSession&) = delete;

  const SessionConfig& config() const { return cfg_; }
  const GameState& state() const { return state_; }
  const std::vector<TurnRecord>& history() const { return history_; }
  bool is_over() const { return state_.is_terminal(); }
  // The player to move is an engine or random controller.
  bool automatic_turn() const;

  // Human move by notation. Throws UsageError when it is not a human's turn
  // or the game is over, IllegalMoveError for an illegal notation.
  const TurnRecord& submit_move(std::string_view notation);
  // Engine or random move. Throws UsageError when a human is to move.
  const TurnRecord& engine_move();
  // Searches the current position, or the one after `candidate`, without
  // touching the session. Same seed and state give the same report.
  ExplanationReport analyze(std::optional<std::string_view> candidate = std::nullopt) const;

  // Asks a running search to stop after its current iteration. Thread safe.
  void request_stop() { stop_.store(true); }

 private:
  struct Engine;
  const TurnRecord& record(const MoveRecord& m, std::optional<TurnSnapshot> snap,
                           std::optional<ExplanationReport> report);
  const SearchConfig& analysis_engine_config() const;

  SessionConfig cfg_;
  GameState state_;
  std::vector<TurnRecord> history_;
  std::array<std::unique_ptr<Engine>, 2> engines_;
  std::array<Rng, 2> random_;
  std::atomic<bool> stop_{false};
};

// Runs one automatic game to the end. Both controllers must be automatic.
void play_out(GameSession& session);

}  // namespace xmcts
