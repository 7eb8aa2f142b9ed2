#include "xmcts/game.h"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <numeric>

#include "game/rules_impl.h"
#include "xmcts/errors.h"

namespace xmcts {

namespace {

struct KindName {
  GameKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 5> kKindNames = {{
    {GameKind::kTicTacToe, "tictactoe"},
    {GameKind::kConnectFour, "connect_four"},
    {GameKind::kBreakthrough, "breakthrough"},
    {GameKind::kGomoku, "gomoku"},
    {GameKind::kUltimateTicTacToe, "ultimate_ttt"},
}};

}  // namespace

std::string_view game_name(GameKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "unknown";
}

GameKind parse_game_kind(std::string_view name) {
  for (const auto& kn : kKindNames) {
    if (kn.name == name) return kn.kind;
  }
  throw ConfigError("unknown game id '" + std::string(name) + "'");
}

BoardSize default_board_size(GameKind kind) {
  switch (kind) {
    case GameKind::kTicTacToe: return {3, 3};
    case GameKind::kConnectFour: return {7, 6};
    case GameKind::kBreakthrough: return {8, 8};
    case GameKind::kGomoku: return {15, 15};
    case GameKind::kUltimateTicTacToe: return {9, 9};
  }
  return {};
}

BoardSize parse_board_size(std::string_view text) {
  const auto x = text.find_first_of("xX");
  BoardSize size;
  if (x == std::string_view::npos) throw ConfigError("board size must look like WxH, got '" + std::string(text) + "'");
  const auto w = text.substr(0, x);
  const auto h = text.substr(x + 1);
  auto r1 = std::from_chars(w.data(), w.data() + w.size(), size.width);
  auto r2 = std::from_chars(h.data(), h.data() + h.size(), size.height);
  if (r1.ec != std::errc() || r1.ptr != w.data() + w.size() || r2.ec != std::errc() ||
      r2.ptr != h.data() + h.size()) {
    throw ConfigError("board size must look like WxH, got '" + std::string(text) + "'");
  }
  return size;
}

std::string format_board_size(BoardSize size) {
  return std::to_string(size.width) + "x" + std::to_string(size.height);
}

GameOutcome GameOutcome::win_for(PlayerId p) {
  GameOutcome o;
  o.utilities[index(p)] = 1.0;
  o.utilities[index(opponent(p))] = -1.0;
  return o;
}

GameKind GameState::kind() const { return rules_->kind(); }

std::optional<GameOutcome> GameState::outcome() const {
  if (status_ == kOngoing) return std::nullopt;
  if (status_ == kDrawn) return GameOutcome::draw();
  return GameOutcome::win_for(player_from_index(status_));
}

std::size_t GameState::hash() const {
  // FNV-1a over the identity-relevant bytes.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint8_t>(rules_->kind()));
  mix(width_);
  mix(height_);
  mix(static_cast<std::uint8_t>(to_move_));
  mix(static_cast<std::uint8_t>(status_));
  for (auto a : aux_) mix(static_cast<std::uint8_t>(a));
  const int n = cell_count();
  for (int i = 0; i < n; ++i) mix(static_cast<std::uint8_t>(cells_[i]));
  return static_cast<std::size_t>(h);
}

bool operator==(const GameState& a, const GameState& b) {
  if (a.rules_ != b.rules_ || a.to_move_ != b.to_move_ || a.status_ != b.status_ || a.aux_ != b.aux_) {
    return false;
  }
  const int n = a.cell_count();
  return std::memcmp(a.cells_.data(), b.cells_.data(), static_cast<size_t>(n)) == 0;
}

void Rules::play(GameState& s, int move) const {
  const PlayerId mover = s.to_move_;
  place(s, move);
  s.to_move_ = opponent(mover);
  ++s.move_count_;
  s.history_[0] = s.history_[1];
  s.history_[1] = PlayedMove{mover, move};
  if (s.history_size_ < 2) ++s.history_size_;
}

void Rules::build_rank_table() {
  const int bound = move_id_bound();
  std::vector<std::pair<std::string, int>> keyed;
  keyed.reserve(static_cast<size_t>(bound));
  for (int m = 0; m < bound; ++m) keyed.emplace_back(rank_key(m), m);
  std::sort(keyed.begin(), keyed.end());
  rank_.assign(static_cast<size_t>(bound), 0);
  for (int r = 0; r < bound; ++r) rank_[static_cast<size_t>(keyed[static_cast<size_t>(r)].second)] = r;
}

GameState Rules::blank_state() const {
  GameState s;
  s.rules_ = this;
  s.width_ = static_cast<std::uint8_t>(size_.width);
  s.height_ = static_cast<std::uint8_t>(size_.height);
  s.cells_.fill(kEmpty);
  s.aux_.fill(0);
  return s;
}

const Rules& rules_for(GameKind kind, BoardSize size) {
  if (const Rules* r = detail::find_rules(kind, size)) return *r;
  throw ConfigError("unsupported board size " + format_board_size(size) + " for " + std::string(game_name(kind)));
}

GameState initial_state(GameKind kind, BoardSize size) { return rules_for(kind, size).initial_state(); }

GameState initial_state(GameKind kind) { return initial_state(kind, default_board_size(kind)); }

std::vector<int> legal_move_ids(const GameState& s) {
  std::vector<int> ids;
  s.rules().generate_moves(s, ids);
  const Rules& r = s.rules();
  std::sort(ids.begin(), ids.end(), [&r](int a, int b) { return r.move_rank(a) < r.move_rank(b); });
  return ids;
}

std::vector<MoveRecord> legal_moves(const GameState& s) {
  std::vector<MoveRecord> moves;
  for (int id : legal_move_ids(s)) moves.push_back({id, s.rules().notation(s, id)});
  return moves;
}

GameState apply(const GameState& s, int move_id) {
  std::vector<int> ids;
  s.rules().generate_moves(s, ids);
  if (std::find(ids.begin(), ids.end(), move_id) == ids.end()) {
    std::string name = (move_id >= 0 && move_id < s.rules().move_id_bound()) ? s.rules().notation(s, move_id)
                                                                               : "#" + std::to_string(move_id);
    throw IllegalMoveError("illegal move " + name + " in " + std::string(game_name(s.kind())) +
                           (s.is_terminal() ? " (game is over)" : ""));
  }
  GameState next = s;
  s.rules().play(next, move_id);
  return next;
}

GameState apply(const GameState& s, const MoveRecord& m) {
  std::vector<int> ids;
  s.rules().generate_moves(s, ids);
  if (std::find(ids.begin(), ids.end(), m.id) == ids.end() ||
      (!m.notation.empty() && s.rules().notation(s, m.id) != m.notation)) {
    throw IllegalMoveError("illegal move " + (m.notation.empty() ? "#" + std::to_string(m.id) : m.notation) +
                           " in " + std::string(game_name(s.kind())) + (s.is_terminal() ? " (game is over)" : ""));
  }
  GameState next = s;
  s.rules().play(next, m.id);
  return next;
}

MoveRecord find_move(const GameState& s, std::string_view notation) {
  for (auto& m : legal_moves(s)) {
    if (m.notation == notation) return m;
  }
  throw IllegalMoveError("illegal move " + std::string(notation) + " in " + std::string(game_name(s.kind())) +
                         (s.is_terminal() ? " (game is over)" : ""));
}

std::optional<GameOutcome> terminal_outcome(const GameState& s) { return s.outcome(); }

std::string serialize(const GameState& s) {
  std::string out;
  out.reserve(static_cast<size_t>((s.width() + 1) * s.height()));
  const char letters[2] = {s.rules().piece_letter(PlayerId::kFirst), s.rules().piece_letter(PlayerId::kSecond)};
  for (int row = s.height() - 1; row >= 0; --row) {
    for (int col = 0; col < s.width(); ++col) {
      const int c = s.cell(col, row);
      out.push_back(c == kEmpty ? '.' : letters[c]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string cell_name(int col, int row) {
  std::string name(1, static_cast<char>('A' + col));
  name += std::to_string(row + 1);
  return name;
}

}  // namespace xmcts
