#include "xmcts/transcript.h"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "explain/json_fields.h"
#include "xmcts/errors.h"

namespace xmcts {

using json_fields::field;
using json_fields::get;
using json_fields::get_opt;

namespace {

std::string iso_utc(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json params_to_json(const EnhancementParams& p) {
  return {{"mast_temperature", p.mast_temperature}, {"nst_max_length", p.nst_max_length},
          {"nst_threshold", p.nst_threshold},       {"nst_epsilon", p.nst_epsilon},
          {"nst_dump_length", p.nst_dump_length},   {"grave_ref_threshold", p.grave_ref_threshold},
          {"grave_bias", p.grave_bias}};
}

EnhancementParams params_from_json(const Json& j) {
  constexpr std::string_view w = "params";
  EnhancementParams p;
  p.mast_temperature = get_opt<double>(j, "mast_temperature", w).value_or(p.mast_temperature);
  p.nst_max_length = get_opt<int>(j, "nst_max_length", w).value_or(p.nst_max_length);
  p.nst_threshold = get_opt<int>(j, "nst_threshold", w).value_or(p.nst_threshold);
  p.nst_epsilon = get_opt<double>(j, "nst_epsilon", w).value_or(p.nst_epsilon);
  p.nst_dump_length = get_opt<int>(j, "nst_dump_length", w).value_or(p.nst_dump_length);
  p.grave_ref_threshold = get_opt<int>(j, "grave_ref_threshold", w).value_or(p.grave_ref_threshold);
  p.grave_bias = get_opt<double>(j, "grave_bias", w).value_or(p.grave_bias);
  return p;
}

Json outcome_to_json(const std::optional<GameOutcome>& o) {
  if (!o) return nullptr;
  const double u = o->utility(PlayerId::kFirst);
  if (u > 0) return {{"result", "win"}, {"winner", 1}};
  if (u < 0) return {{"result", "win"}, {"winner", 2}};
  return {{"result", "draw"}, {"winner", nullptr}};
}

std::optional<GameOutcome> outcome_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  const auto result = get<std::string>(j, "result", "outcome");
  if (result == "draw") return GameOutcome::draw();
  if (result != "win") throw ParseError("outcome: unknown result '" + result + "'");
  const int w = get<int>(j, "winner", "outcome");
  if (w != 1 && w != 2) throw ParseError("outcome: winner must be 1 or 2");
  return GameOutcome::win_for(player_from_index(w - 1));
}

Json turn_to_json(const TurnRecord& t) {
  Json j = {{"player", index(t.mover) + 1}, {"move", t.move}, {"state", t.state}};
  j["snapshot"] = t.snapshot ? snapshot_to_json(*t.snapshot) : Json(nullptr);
  j["report"] = t.report ? report_to_json(*t.report) : Json(nullptr);
  return j;
}

TurnRecord turn_from_json(const Json& j, const std::string& where) {
  TurnRecord t;
  const int p = get<int>(j, "player", where);
  if (p != 1 && p != 2) throw ParseError(where + ": player must be 1 or 2");
  t.mover = player_from_index(p - 1);
  t.move = get<std::string>(j, "move", where);
  t.state = get<std::string>(j, "state", where);
  try {
    if (auto it = j.find("snapshot"); it != j.end() && !it->is_null()) t.snapshot = snapshot_from_json(*it);
    if (auto it = j.find("report"); it != j.end() && !it->is_null()) t.report = report_from_json(*it);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
  return t;
}

}  // namespace

Transcript make_transcript(const GameSession& session, std::optional<std::string> timestamp) {
  Transcript t;
  t.game = session.config().game;
  t.size = session.config().size;
  t.players = session.config().players;
  t.timestamp = std::move(timestamp);
  t.turns = session.history();
  t.outcome = session.state().outcome();
  return t;
}

std::optional<std::string> transcript_timestamp(bool requested) {
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != nullptr && *end == '\0') return iso_utc(static_cast<std::time_t>(v));
  }
  if (!requested) return std::nullopt;
  return iso_utc(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now()));
}

Json controller_to_json(const ControllerSpec& c) {
  const SearchConfig& s = c.search;
  Json j = {{"kind", controller_name(c.kind)}, {"seed", s.seed}};
  if (c.kind != ControllerKind::kEngine) return j;
  j["enhancements"] = flags_to_json(s.enh);
  j["iterations"] = s.iterations ? Json(*s.iterations) : Json(nullptr);
  j["time_ms"] = s.time_ms ? Json(*s.time_ms) : Json(nullptr);
  j["exploration"] = s.exploration;
  j["tree_reuse"] = s.tree_reuse;
  j["params"] = params_to_json(s.params);
  return j;
}

ControllerSpec controller_from_json(const Json& j) {
  constexpr std::string_view w = "controller";
  ControllerSpec c;
  try {
    c.kind = parse_controller(get<std::string>(j, "kind", w));
  } catch (const ConfigError& e) {
    throw ParseError(std::string(w) + ": " + e.what());
  }
  c.search.seed = get_opt<std::uint64_t>(j, "seed", w).value_or(0);
  if (c.kind != ControllerKind::kEngine) return c;
  if (auto it = j.find("enhancements"); it != j.end()) {
    try {
      c.search.enh = flags_from_json(*it);
    } catch (const ConfigError& e) {
      throw ParseError(std::string(w) + ": " + e.what());
    }
  }
  c.search.iterations = get_opt<std::int64_t>(j, "iterations", w);
  c.search.time_ms = get_opt<std::int64_t>(j, "time_ms", w);
  c.search.exploration = get_opt<double>(j, "exploration", w).value_or(c.search.exploration);
  c.search.tree_reuse = get_opt<bool>(j, "tree_reuse", w).value_or(true);
  if (auto it = j.find("params"); it != j.end()) c.search.params = params_from_json(*it);
  return c;
}

Json transcript_to_json(const Transcript& t) {
  Json turns = Json::array();
  for (const auto& turn : t.turns) turns.push_back(turn_to_json(turn));
  return {{"version", kTranscriptVersion},
          {"header",
           {{"game", game_name(t.game)},
            {"size", format_board_size(t.size)},
            {"players", {controller_to_json(t.players[0]), controller_to_json(t.players[1])}},
            {"timestamp", t.timestamp ? Json(*t.timestamp) : Json(nullptr)}}},
          {"turns", turns},
          {"outcome", outcome_to_json(t.outcome)}};
}

Transcript transcript_from_json(const Json& j) {
  const int version = get<int>(j, "version", "transcript");
  if (version != kTranscriptVersion) {
    throw ParseError("transcript: unsupported version " + std::to_string(version));
  }
  Transcript t;
  const Json& h = field(j, "header", "transcript");
  try {
    t.game = parse_game_kind(get<std::string>(h, "game", "header"));
    t.size = parse_board_size(get<std::string>(h, "size", "header"));
  } catch (const ConfigError& e) {
    throw ParseError(std::string("header: ") + e.what());
  }
  const Json& players = field(h, "players", "header");
  if (!players.is_array() || players.size() != 2) throw ParseError("header: 'players' must list two controllers");
  t.players = {controller_from_json(players[0]), controller_from_json(players[1])};
  t.timestamp = get_opt<std::string>(h, "timestamp", "header");
  const Json& turns = field(j, "turns", "transcript");
  if (!turns.is_array()) throw ParseError("transcript: 'turns' must be an array");
  for (size_t i = 0; i < turns.size(); ++i) t.turns.push_back(turn_from_json(turns[i], "turns[" + std::to_string(i) + "]"));
  t.outcome = outcome_from_json(field(j, "outcome", "transcript"));
  return t;
}

std::string dump_transcript(const Transcript& t) { return transcript_to_json(t).dump(2) + "\n"; }

Transcript parse_transcript(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Position is a byte offset; report it as line and column.
    size_t line = 1;
    size_t col = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("transcript: malformed JSON at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
  return transcript_from_json(j);
}

void save_transcript(const Transcript& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << dump_transcript(t);
  if (!out) throw UsageError("failed writing " + path.string());
}

Transcript load_transcript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_transcript(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void verify_replay(const Transcript& t) {
  GameState s = initial_state(t.game, t.size);
  for (size_t i = 0; i < t.turns.size(); ++i) {
    const auto& turn = t.turns[i];
    const std::string where = "turns[" + std::to_string(i) + "]";
    if (s.is_terminal()) throw ParseError(where + ": move after the end of the game");
    if (turn.mover != s.to_move()) throw ParseError(where + ": wrong player to move");
    try {
      s = apply(s, find_move(s, turn.move));
    } catch (const IllegalMoveError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (serialize(s) != turn.state) throw ParseError(where + ": recorded state does not match the replay");
  }
  if (s.outcome() != t.outcome) throw ParseError("outcome: does not match the replayed game");
}

}  // namespace xmcts
