#include "game/rules_impl.h"

namespace xmcts::detail {

namespace {

constexpr const char* kPieceNames[2] = {"Disc", "Cross"};

// 9x9 cells grouped into 3x3 sub-boards. aux[0..8] is the sub-board status
// (kOpen, won by player 0/1, or kClosed when full without a line); aux[9]
// is 1 + the sub-board the next move is sent to, or 0 for a free choice.
// A sub-board that is won or full is out of play.
class UltimateTicTacToe final : public Rules {
 public:
  UltimateTicTacToe() : Rules({9, 9}) { build_rank_table(); }

  GameKind kind() const override { return GameKind::kUltimateTicTacToe; }

  GameState initial_state() const override {
    GameState s = blank_state();
    for (int b = 0; b < 9; ++b) aux(s)[b] = kOpen;
    aux(s)[kForcedSlot] = 0;
    return s;
  }

  void generate_moves(const GameState& s, std::vector<int>& out) const override {
    out.clear();
    if (s.is_terminal()) return;
    const int forced = s.aux(kForcedSlot) - 1;
    for (int cell = 0; cell < 81; ++cell) {
      if (s.cell(cell) != kEmpty) continue;
      const int b = board_of(cell);
      if (s.aux(b) != kOpen) continue;
      if (forced >= 0 && b != forced) continue;
      out.push_back(cell);
    }
  }

  std::string notation(const GameState& s, int move) const override {
    return cell_name(move % 9, move / 9) + "+" + kPieceNames[index(s.to_move())] +
           std::to_string(index(s.to_move()) + 1);
  }

  int move_id_bound() const override { return 81; }
  char piece_letter(PlayerId p) const override { return p == PlayerId::kFirst ? 'X' : 'O'; }

 protected:
  void place(GameState& s, int move) const override {
    const int owner = index(s.to_move());
    cells(s)[move] = static_cast<std::int8_t>(owner);
    const int b = board_of(move);
    if (local_line(s, b, owner)) {
      aux(s)[b] = static_cast<std::int8_t>(kWonBy0 + owner);
      if (macro_line(s, owner)) {
        set_winner(s, s.to_move());
        return;
      }
    } else if (local_full(s, b)) {
      aux(s)[b] = kClosed;
    }
    const int target = position_in_board(move);
    aux(s)[kForcedSlot] = static_cast<std::int8_t>(s.aux(target) == kOpen ? target + 1 : 0);
    bool any_open = false;
    for (int i = 0; i < 9; ++i) any_open |= s.aux(i) == kOpen;
    if (!any_open) set_draw(s);
  }

  std::string rank_key(int move) const override { return cell_name(move % 9, move / 9) + "+"; }

 private:
  static constexpr std::int8_t kOpen = 0;
  static constexpr std::int8_t kWonBy0 = 1;
  static constexpr std::int8_t kClosed = 3;
  static constexpr int kForcedSlot = 9;

  static int board_of(int cell) { return (cell / 9 / 3) * 3 + (cell % 9) / 3; }
  static int position_in_board(int cell) { return (cell / 9 % 3) * 3 + (cell % 9) % 3; }
  static int cell_of(int board, int pos) {
    const int row = (board / 3) * 3 + pos / 3;
    const int col = (board % 3) * 3 + pos % 3;
    return row * 9 + col;
  }

  static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                       {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};

  static bool local_line(const GameState& s, int b, int owner) {
    for (const auto& line : kLines) {
      if (s.cell(cell_of(b, line[0])) == owner && s.cell(cell_of(b, line[1])) == owner &&
          s.cell(cell_of(b, line[2])) == owner) {
        return true;
      }
    }
    return false;
  }

  static bool local_full(const GameState& s, int b) {
    for (int pos = 0; pos < 9; ++pos) {
      if (s.cell(cell_of(b, pos)) == kEmpty) return false;
    }
    return true;
  }

  static bool macro_line(const GameState& s, int owner) {
    const int won = kWonBy0 + owner;
    for (const auto& line : kLines) {
      if (s.aux(line[0]) == won && s.aux(line[1]) == won && s.aux(line[2]) == won) return true;
    }
    return false;
  }
};

}  // namespace

std::unique_ptr<Rules> make_ultimate_ttt() { return std::make_unique<UltimateTicTacToe>(); }

}  // namespace xmcts::detail
