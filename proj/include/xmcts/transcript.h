#pragma once

// Annotated game records. One JSON document per game, "version": 1.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "xmcts/json_io.h"
#include "xmcts/session.h"

namespace xmcts {

inline constexpr int kTranscriptVersion = 1;

struct Transcript {
  GameKind game = GameKind::kConnectFour;
  BoardSize size;
  std::array<ControllerSpec, 2> players;
  std::optional<std::string> timestamp;
  std::vector<TurnRecord> turns;
  std::optional<GameOutcome> outcome;
  friend bool operator==(const Transcript&, const Transcript&) = default;
};

Transcript make_transcript(const GameSession& session, std::optional<std::string> timestamp = std::nullopt);

// Timestamp policy: none unless requested or SOURCE_DATE_EPOCH is set, so
// seeded runs stay byte-identical.
std::optional<std::string> transcript_timestamp(bool requested);

Json controller_to_json(const ControllerSpec& c);
ControllerSpec controller_from_json(const Json& j);
Json transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const Json& j);  // throws ParseError

std::string dump_transcript(const Transcript& t);
Transcript parse_transcript(std::string_view text);  // throws ParseError

void save_transcript(const Transcript& t, const std::filesystem::path& path);
Transcript load_transcript(const std::filesystem::path& path);

// Replays the moves from the initial position and checks every recorded state
// and the final outcome. Throws ParseError naming the first mismatching turn.
void verify_replay(const Transcript& t);

}  // namespace xmcts
