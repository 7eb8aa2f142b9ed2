#pragma once

// Seeded series of automatic games between two controllers.

#include <functional>
#include <string>
#include <vector>

#include "xmcts/transcript.h"

namespace xmcts {

struct MatchConfig {
  GameKind game = GameKind::kConnectFour;
  BoardSize size = default_board_size(GameKind::kConnectFour);
  // contenders[0] moves first in even-numbered games; seats swap each game
  // when alternate_seats is set.
  std::array<ControllerSpec, 2> contenders;
  int games = 1;
  std::uint64_t seed = 0;
  bool alternate_seats = true;
  int verbosity = 2;
  std::optional<std::string> timestamp;
};

struct MatchSummary {
  int games = 0;
  std::array<int, 2> wins{};  // per contender
  int draws = 0;
};

// Short label such as "mcts[solver,mast]" or "random".
std::string contender_label(const ControllerSpec& c);

// Plays the series; `on_game` sees each finished game's number and transcript.
MatchSummary run_match(const MatchConfig& cfg,
                       const std::function<void(int, const Transcript&)>& on_game = {});

std::string format_summary(const MatchConfig& cfg, const MatchSummary& s);

}  // namespace xmcts
