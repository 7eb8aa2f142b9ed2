#include "game/rules_impl.h"

namespace xmcts::detail {

namespace {

constexpr const char* kPieceNames[2] = {"Disc", "Cross"};

class TicTacToe final : public Rules {
 public:
  TicTacToe() : Rules({3, 3}) { build_rank_table(); }

  GameKind kind() const override { return GameKind::kTicTacToe; }

  GameState initial_state() const override { return blank_state(); }

  void generate_moves(const GameState& s, std::vector<int>& out) const override {
    out.clear();
    if (s.is_terminal()) return;
    for (int i = 0; i < 9; ++i) {
      if (s.cell(i) == kEmpty) out.push_back(i);
    }
  }

  std::string notation(const GameState& s, int move) const override {
    return cell_name(move % 3, move / 3) + "+" + kPieceNames[index(s.to_move())] +
           std::to_string(index(s.to_move()) + 1);
  }

  int move_id_bound() const override { return 9; }
  char piece_letter(PlayerId p) const override { return p == PlayerId::kFirst ? 'X' : 'O'; }

 protected:
  void place(GameState& s, int move) const override {
    const int owner = index(s.to_move());
    cells(s)[move] = static_cast<std::int8_t>(owner);
    if (makes_line(s, move % 3, move / 3, owner, 3)) {
      set_winner(s, s.to_move());
    } else if (s.move_count() + 1 == 9) {
      set_draw(s);
    }
  }

  std::string rank_key(int move) const override { return cell_name(move % 3, move / 3) + "+"; }
};

}  // namespace

std::unique_ptr<Rules> make_tictactoe() { return std::make_unique<TicTacToe>(); }

}  // namespace xmcts::detail
