// xmcts: play, self-play, analyze, replay and serve.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "xmcts/errors.h"
#include "xmcts/match.h"
#include "xmcts/service.h"

namespace {

using namespace xmcts;

struct CommonOptions {
  std::string game = "connect_four";
  std::string size;
  std::string enh = "solver";
  std::string enh_p1;
  std::string enh_p2;
  std::int64_t iterations = 1000;
  std::int64_t time_ms = 0;
  std::uint64_t seed = 0;
  int verbosity = 2;
  std::string out;
  bool timestamp = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--game", o.game, "tictactoe, connect_four, breakthrough, gomoku, ultimate_ttt")
      ->capture_default_str();
  cmd->add_option("--size", o.size, "board size as WxH (game default when omitted)");
  cmd->add_option("--enh", o.enh, "enhancements for both engines: solver,mast,nst,grave,pn | all | none")
      ->capture_default_str();
  cmd->add_option("--enh-p1", o.enh_p1, "enhancements for player 1 (overrides --enh)");
  cmd->add_option("--enh-p2", o.enh_p2, "enhancements for player 2 (overrides --enh)");
  cmd->add_option("--iterations", o.iterations, "iterations per engine move")->capture_default_str();
  cmd->add_option("--time-ms", o.time_ms, "time per engine move in ms; replaces the iteration budget");
  cmd->add_option("--seed", o.seed, "base seed")->capture_default_str();
  cmd->add_option("--verbosity", o.verbosity, "0 dump only, 1 brief, 2 full")->capture_default_str();
}

GameKind game_of(const CommonOptions& o) { return parse_game_kind(o.game); }

BoardSize size_of(const CommonOptions& o) {
  return o.size.empty() ? default_board_size(game_of(o)) : parse_board_size(o.size);
}

ControllerSpec controller(const CommonOptions& o, const std::string& kind, int player) {
  ControllerSpec c;
  c.kind = parse_controller(kind);
  const std::string& own = player == 0 ? o.enh_p1 : o.enh_p2;
  c.search.enh = parse_flags(own.empty() ? o.enh : own);
  if (o.time_ms > 0) {
    c.search.time_ms = o.time_ms;
  } else {
    c.search.iterations = o.iterations;
  }
  c.search.seed = o.seed + static_cast<std::uint64_t>(player);
  return c;
}

void print_report(const TurnRecord& t) {
  if (!t.report) return;
  std::cout << t.report->raw_dump;
  if (!t.report->prose.empty()) std::cout << "\n" << t.report->prose << "\n";
}

int run_play(const CommonOptions& o, const std::string& p1, const std::string& p2) {
  SessionConfig cfg;
  cfg.game = game_of(o);
  cfg.size = size_of(o);
  cfg.players = {controller(o, p1, 0), controller(o, p2, 1)};
  cfg.verbosity = o.verbosity;
  GameSession session(cfg);
  std::cout << serialize(session.state());
  while (!session.is_over()) {
    const int who = index(session.state().to_move()) + 1;
    if (session.automatic_turn()) {
      const auto& t = session.engine_move();
      std::cout << "\nPlayer " << who << " plays " << t.move << "\n";
      print_report(t);
    } else {
      std::cout << "\nPlayer " << who << " to move (or 'moves', 'quit'): " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line) || line == "quit") {
        std::cout << "\n";
        break;
      }
      if (line == "moves") {
        for (const auto& m : legal_moves(session.state())) std::cout << m.notation << " ";
        std::cout << "\n";
        continue;
      }
      try {
        session.submit_move(line);
      } catch (const IllegalMoveError& e) {
        std::cout << e.what() << "\n";
        continue;
      }
    }
    std::cout << "\n" << serialize(session.state());
  }
  if (auto outcome = session.state().outcome()) {
    const double u = outcome->utility(PlayerId::kFirst);
    std::cout << "\nResult: " << (u > 0 ? "player 1 wins" : u < 0 ? "player 2 wins" : "draw") << "\n";
  }
  if (!o.out.empty()) save_transcript(make_transcript(session, transcript_timestamp(o.timestamp)), o.out);
  return 0;
}

int run_selfplay(const CommonOptions& o, const std::string& p1, const std::string& p2, int games) {
  MatchConfig cfg;
  cfg.game = game_of(o);
  cfg.size = size_of(o);
  cfg.contenders = {controller(o, p1, 0), controller(o, p2, 1)};
  cfg.games = games;
  cfg.seed = o.seed;
  cfg.verbosity = o.verbosity;
  cfg.timestamp = transcript_timestamp(o.timestamp);
  if (!o.out.empty()) std::filesystem::create_directories(o.out);
  const auto summary = run_match(cfg, [&](int g, const Transcript& t) {
    if (o.out.empty()) return;
    char name[32];
    std::snprintf(name, sizeof name, "game_%04d.json", g + 1);
    save_transcript(t, std::filesystem::path(o.out) / name);
  });
  std::cout << format_summary(cfg, summary);
  return 0;
}

int run_analyze(const CommonOptions& o, const std::vector<std::string>& moves, const std::string& candidate,
                bool as_json) {
  SessionConfig cfg;
  cfg.game = game_of(o);
  cfg.size = size_of(o);
  cfg.players = {controller(o, "human", 0), controller(o, "human", 1)};
  cfg.verbosity = o.verbosity;
  cfg.analysis_engine = controller(o, "mcts", 0).search;
  GameSession session(cfg);
  for (const auto& m : moves) session.submit_move(m);
  const auto report = session.analyze(candidate.empty() ? std::nullopt : std::optional<std::string_view>(candidate));
  if (as_json) {
    std::cout << report_to_json(report).dump(2) << "\n";
  } else {
    std::cout << serialize(session.state()) << "\n" << report.raw_dump;
    if (!report.prose.empty()) std::cout << "\n" << report.prose << "\n";
  }
  return 0;
}

int run_replay(const std::string& path) {
  const Transcript t = load_transcript(path);
  std::cout << game_name(t.game) << " " << format_board_size(t.size) << ": " << contender_label(t.players[0])
            << " vs " << contender_label(t.players[1]) << "\n";
  for (size_t i = 0; i < t.turns.size(); ++i) {
    const auto& turn = t.turns[i];
    std::cout << "\n" << (i + 1) << ". Player " << index(turn.mover) + 1 << ": " << turn.move << "\n" << turn.state;
    if (turn.report && !turn.report->prose.empty()) std::cout << turn.report->prose << "\n";
  }
  verify_replay(t);
  if (t.outcome) {
    const double u = t.outcome->utility(PlayerId::kFirst);
    std::cout << "\nResult: " << (u > 0 ? "player 1 wins" : u < 0 ? "player 2 wins" : "draw") << "\n";
  }
  return 0;
}

int run_serve(int port, const std::string& host) {
  Service service;
  std::cout << "listening on http://" << host << ":" << port << "\n" << std::flush;
  service.listen(host, port);
  return 0;
}

int default_port() {
  if (const char* env = std::getenv("XMCTS_PORT"); env != nullptr && *env != '\0') {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("XMCTS_PORT is not a port number: ") + env);
    }
  }
  return 8080;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explainable MCTS engine"};
  app.require_subcommand(1);

  CommonOptions play_opts;
  std::string play_p1 = "human";
  std::string play_p2 = "mcts";
  auto* play = app.add_subcommand("play", "interactive game in the console");
  add_common(play, play_opts);
  play->add_option("--p1", play_p1, "human | mcts | random")->capture_default_str();
  play->add_option("--p2", play_p2, "human | mcts | random")->capture_default_str();
  play->add_option("--out", play_opts.out, "write the transcript here");
  play->add_flag("--timestamp", play_opts.timestamp, "record the wall-clock time in the transcript");

  CommonOptions self_opts;
  std::string self_p1 = "mcts";
  std::string self_p2 = "mcts";
  int games = 10;
  auto* selfplay = app.add_subcommand("selfplay", "automatic games with a summary table");
  add_common(selfplay, self_opts);
  selfplay->add_option("--p1", self_p1, "mcts | random (contender A)")->capture_default_str();
  selfplay->add_option("--p2", self_p2, "mcts | random (contender B)")->capture_default_str();
  selfplay->add_option("--games", games, "number of games; seats alternate")->capture_default_str();
  selfplay->add_option("--out", self_opts.out, "directory for game_NNNN.json transcripts");
  selfplay->add_flag("--timestamp", self_opts.timestamp, "record the wall-clock time in transcripts");

  CommonOptions an_opts;
  std::vector<std::string> an_moves;
  std::string candidate;
  bool as_json = false;
  auto* analyze = app.add_subcommand("analyze", "explain a search from a position");
  add_common(analyze, an_opts);
  analyze->add_option("--moves", an_moves, "moves from the initial position")->delimiter(',');
  analyze->add_option("--candidate", candidate, "analyze the position after this move");
  analyze->add_flag("--json", as_json, "print the report as JSON");

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "print and verify a saved transcript");
  replay->add_option("transcript", replay_path, "transcript file")->required();

  int port = 0;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "HTTP + JSON service");
  serve->add_option("--port", port, "port (XMCTS_PORT, else 8080)");
  serve->add_option("--host", host, "bind address")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*play) return run_play(play_opts, play_p1, play_p2);
    if (*selfplay) return run_selfplay(self_opts, self_p1, self_p2, games);
    if (*analyze) return run_analyze(an_opts, an_moves, candidate, as_json);
    if (*replay) return run_replay(replay_path);
    if (*serve) return run_serve(port > 0 ? port : default_port(), host);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
