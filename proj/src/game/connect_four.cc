#include "game/rules_impl.h"

namespace xmcts::detail {

namespace {

// Move id = column. Rows count from the bottom.
class ConnectFour final : public Rules {
 public:
  explicit ConnectFour(BoardSize size) : Rules(size) { build_rank_table(); }

  GameKind kind() const override { return GameKind::kConnectFour; }

  GameState initial_state() const override { return blank_state(); }

  void generate_moves(const GameState& s, std::vector<int>& out) const override {
    out.clear();
    if (s.is_terminal()) return;
    for (int col = 0; col < s.width(); ++col) {
      if (s.cell(col, s.height() - 1) == kEmpty) out.push_back(col);
    }
  }

  std::string notation(const GameState& s, int move) const override {
    const int row = landing_row(s, move);
    return std::string(1, static_cast<char>('A' + move)) + "1/" + std::to_string(row + 1) + "+Disc" +
           std::to_string(index(s.to_move()) + 1);
  }

  int move_id_bound() const override { return size().width; }
  char piece_letter(PlayerId p) const override { return p == PlayerId::kFirst ? 'Y' : 'R'; }

 protected:
  void place(GameState& s, int move) const override {
    const int owner = index(s.to_move());
    const int row = landing_row(s, move);
    cells(s)[row * s.width() + move] = static_cast<std::int8_t>(owner);
    if (makes_line(s, move, row, owner, 4)) {
      set_winner(s, s.to_move());
    } else if (s.move_count() + 1 == s.cell_count()) {
      set_draw(s);
    }
  }

  std::string rank_key(int move) const override { return std::string(1, static_cast<char>('A' + move)); }

 private:
  static int landing_row(const GameState& s, int col) {
    int row = 0;
    while (row < s.height() && s.cell(col, row) != kEmpty) ++row;
    return row;
  }
};

}  // namespace

std::unique_ptr<Rules> make_connect_four(BoardSize size) { return std::make_unique<ConnectFour>(size); }

}  // namespace xmcts::detail
