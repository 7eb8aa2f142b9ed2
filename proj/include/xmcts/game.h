#pragma once

// Forward model for two-player, zero-sum, alternating board games.
//
// A GameState is an immutable value: applying a move returns a new state.
// Game-specific behaviour lives behind the Rules interface; one Rules
// instance exists per supported (game, board size) pair.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xmcts {

enum class PlayerId : std::uint8_t { kFirst = 0, kSecond = 1 };

constexpr int index(PlayerId p) { return static_cast<int>(p); }
constexpr PlayerId opponent(PlayerId p) {
  return p == PlayerId::kFirst ? PlayerId::kSecond : PlayerId::kFirst;
}
constexpr PlayerId player_from_index(int i) {
  return i == 0 ? PlayerId::kFirst : PlayerId::kSecond;
}

enum class GameKind : std::uint8_t {
  kTicTacToe,
  kConnectFour,
  kBreakthrough,
  kGomoku,
  kUltimateTicTacToe,
};

struct BoardSize {
  int width = 0;
  int height = 0;
  friend bool operator==(const BoardSize&, const BoardSize&) = default;
};

// "tictactoe", "connect_four", "breakthrough", "gomoku", "ultimate_ttt".
std::string_view game_name(GameKind kind);
GameKind parse_game_kind(std::string_view name);  // throws ConfigError
BoardSize default_board_size(GameKind kind);
// Accepts "7x6" style strings; throws ConfigError.
BoardSize parse_board_size(std::string_view text);
std::string format_board_size(BoardSize size);

struct MoveRecord {
  int id = -1;
  std::string notation;
  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

// Terminal utilities, one per player, each in {-1, 0, +1}.
struct GameOutcome {
  std::array<double, 2> utilities{};
  double utility(PlayerId p) const { return utilities[index(p)]; }
  static GameOutcome win_for(PlayerId p);
  static GameOutcome draw() { return {}; }
  friend bool operator==(const GameOutcome&, const GameOutcome&) = default;
};

struct PlayedMove {
  PlayerId player = PlayerId::kFirst;
  int move = -1;
  friend bool operator==(const PlayedMove&, const PlayedMove&) = default;
};

inline constexpr int kMaxCells = 225;
inline constexpr std::int8_t kEmpty = -1;

class Rules;

class GameState {
 public:
  const Rules& rules() const { return *rules_; }
  GameKind kind() const;
  BoardSize size() const { return {width_, height_}; }
  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  PlayerId to_move() const { return to_move_; }
  int move_count() const { return move_count_; }

  // Owner of a cell (0 or 1) or kEmpty. Cells are indexed row * width + col
  // with row 0 at the bottom of the canonical orientation.
  int cell(int index) const { return cells_[index]; }
  int cell(int col, int row) const { return cells_[row * width_ + col]; }

  bool is_terminal() const { return status_ != kOngoing; }
  std::optional<GameOutcome> outcome() const;

  // The last (up to two) moves that led here, oldest first. Context for
  // n-gram statistics; not part of position identity.
  std::span<const PlayedMove> recent_moves() const {
    return {history_.data() + (2 - history_size_), static_cast<size_t>(history_size_)};
  }

  // Game-specific auxiliary slots (UTTT sub-board status, piece counts).
  int aux(int slot) const { return aux_[slot]; }

  // Position identity: board, auxiliary data, player to move and status.
  std::size_t hash() const;
  friend bool operator==(const GameState& a, const GameState& b);

 private:
  friend class Rules;

  static constexpr std::int8_t kOngoing = -1;
  static constexpr std::int8_t kDrawn = 2;

  const Rules* rules_ = nullptr;
  std::uint8_t width_ = 0;
  std::uint8_t height_ = 0;
  PlayerId to_move_ = PlayerId::kFirst;
  std::int8_t status_ = kOngoing;  // kOngoing, winner index, or kDrawn
  std::int16_t move_count_ = 0;
  std::uint8_t history_size_ = 0;
  std::array<PlayedMove, 2> history_{};
  std::array<std::int8_t, 16> aux_{};
  std::array<std::int8_t, kMaxCells> cells_{};
};

struct GameStateHash {
  std::size_t operator()(const GameState& s) const { return s.hash(); }
};

// Game rules. Implementations are stateless singletons.
class Rules {
 public:
  virtual ~Rules() = default;

  virtual GameKind kind() const = 0;
  BoardSize size() const { return size_; }
  int cell_count() const { return size_.width * size_.height; }

  virtual GameState initial_state() const = 0;

  // Legal move ids in an unspecified but deterministic order. Fast path for
  // playouts; `out` is cleared first. Empty iff the state is terminal.
  virtual void generate_moves(const GameState& s, std::vector<int>& out) const = 0;

  // Human-readable notation of a legal move in `s`.
  virtual std::string notation(const GameState& s, int move) const = 0;

  // Exclusive upper bound of move ids.
  virtual int move_id_bound() const = 0;

  // Position of a move id in the lexicographic notation order.
  int move_rank(int move) const { return rank_[move]; }

  // Letter used for a player's pieces in the text grid.
  virtual char piece_letter(PlayerId p) const = 0;

  // Applies a legal move in place. Does not validate legality.
  void play(GameState& s, int move) const;

  // Plies after which a playout is cut off and scored as a draw.
  int playout_ply_cap() const { return 10 * cell_count(); }

 protected:
  explicit Rules(BoardSize size) : size_(size) {}

  // Game-specific part of play(): update board and status. Bookkeeping of
  // player to move, move counter and history is done by play().
  virtual void place(GameState& s, int move) const = 0;

  // Notation used for ordering; must order like notation() does within any
  // single state.
  virtual std::string rank_key(int move) const = 0;

  // Call from the derived constructor once rank_key() is usable.
  void build_rank_table();

  GameState blank_state() const;

  static std::array<std::int8_t, kMaxCells>& cells(GameState& s) { return s.cells_; }
  static std::array<std::int8_t, 16>& aux(GameState& s) { return s.aux_; }
  static void set_winner(GameState& s, PlayerId p) { s.status_ = static_cast<std::int8_t>(index(p)); }
  static void set_draw(GameState& s) { s.status_ = GameState::kDrawn; }

 private:
  BoardSize size_;
  std::vector<int> rank_;
};

// Rules for a supported (game, size) pair; throws ConfigError otherwise.
const Rules& rules_for(GameKind kind, BoardSize size);

GameState initial_state(GameKind kind, BoardSize size);
GameState initial_state(GameKind kind);

// Legal moves sorted lexicographically by notation; empty iff terminal.
std::vector<MoveRecord> legal_moves(const GameState& s);
// Legal move ids in the same order as legal_moves().
std::vector<int> legal_move_ids(const GameState& s);

// Throws IllegalMoveError naming the move when it is not legal in `s`.
GameState apply(const GameState& s, const MoveRecord& m);
GameState apply(const GameState& s, int move_id);
// Looks a move up by notation; throws IllegalMoveError.
MoveRecord find_move(const GameState& s, std::string_view notation);

std::optional<GameOutcome> terminal_outcome(const GameState& s);

// Text grid, top row first, '.' for empty cells, one row per line.
std::string serialize(const GameState& s);

// "A".."Z" column label followed by 1-based row number, e.g. "K12".
std::string cell_name(int col, int row);

}  // namespace xmcts
