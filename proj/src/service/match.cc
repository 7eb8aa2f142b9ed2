#include "xmcts/match.h"

#include <sstream>

#include "xmcts/errors.h"
#include "xmcts/explain.h"

namespace xmcts {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string contender_label(const ControllerSpec& c) {
  if (c.kind != ControllerKind::kEngine) return std::string(controller_name(c.kind));
  return "mcts[" + format_flags(c.search.enh) + "]";
}

MatchSummary run_match(const MatchConfig& cfg, const std::function<void(int, const Transcript&)>& on_game) {
  if (cfg.games < 1) throw ConfigError("games must be >= 1");
  for (const auto& c : cfg.contenders) {
    if (c.kind == ControllerKind::kHuman) throw ConfigError("self-play needs mcts or random controllers");
  }
  MatchSummary summary;
  for (int g = 0; g < cfg.games; ++g) {
    const bool swapped = cfg.alternate_seats && g % 2 == 1;
    SessionConfig sc;
    sc.game = cfg.game;
    sc.size = cfg.size;
    sc.verbosity = cfg.verbosity;
    for (int seat = 0; seat < 2; ++seat) {
      const int who = swapped ? 1 - seat : seat;
      ControllerSpec spec = cfg.contenders[static_cast<size_t>(who)];
      spec.search.seed = mix(cfg.seed ^ mix(static_cast<std::uint64_t>(g) * 2 + static_cast<std::uint64_t>(who)));
      sc.players[static_cast<size_t>(seat)] = spec;
    }
    GameSession session(sc);
    play_out(session);
    const auto outcome = *session.state().outcome();
    ++summary.games;
    const double u = outcome.utility(PlayerId::kFirst);
    if (u == 0) {
      ++summary.draws;
    } else {
      const int winning_seat = u > 0 ? 0 : 1;
      ++summary.wins[static_cast<size_t>(swapped ? 1 - winning_seat : winning_seat)];
    }
    if (on_game) on_game(g, make_transcript(session, cfg.timestamp));
  }
  return summary;
}

std::string format_summary(const MatchConfig& cfg, const MatchSummary& s) {
  std::ostringstream out;
  out << "game: " << game_name(cfg.game) << " " << format_board_size(cfg.size) << ", games: " << s.games
      << ", seed: " << cfg.seed << "\n";
  for (int i = 0; i < 2; ++i) {
    const auto& c = cfg.contenders[static_cast<size_t>(i)];
    const int w = s.wins[static_cast<size_t>(i)];
    out << "  " << (i == 0 ? "A" : "B") << " " << contender_label(c) << ": " << w << " wins ("
        << format_percent(s.games > 0 ? static_cast<double>(w) / s.games : 0.0) << ")\n";
  }
  out << "  draws: " << s.draws << "\n";
  return out.str();
}

}  // namespace xmcts
