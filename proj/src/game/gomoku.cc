#include "game/rules_impl.h"

namespace xmcts::detail {

namespace {

// Free-style: five or more in a row wins. Move id = cell index.
class Gomoku final : public Rules {
 public:
  explicit Gomoku(BoardSize size) : Rules(size) { build_rank_table(); }

  GameKind kind() const override { return GameKind::kGomoku; }

  GameState initial_state() const override { return blank_state(); }

  void generate_moves(const GameState& s, std::vector<int>& out) const override {
    out.clear();
    if (s.is_terminal()) return;
    const int n = s.cell_count();
    for (int i = 0; i < n; ++i) {
      if (s.cell(i) == kEmpty) out.push_back(i);
    }
  }

  std::string notation(const GameState& s, int move) const override {
    const int w = s.width();
    return cell_name(move % w, move / w) + "+Marker" + std::to_string(index(s.to_move()) + 1);
  }

  int move_id_bound() const override { return cell_count(); }
  char piece_letter(PlayerId p) const override { return p == PlayerId::kFirst ? 'B' : 'W'; }

 protected:
  void place(GameState& s, int move) const override {
    const int owner = index(s.to_move());
    const int w = s.width();
    cells(s)[move] = static_cast<std::int8_t>(owner);
    if (makes_line(s, move % w, move / w, owner, 5)) {
      set_winner(s, s.to_move());
    } else if (s.move_count() + 1 == s.cell_count()) {
      set_draw(s);
    }
  }

  std::string rank_key(int move) const override {
    const int w = size().width;
    return cell_name(move % w, move / w) + "+";
  }
};

}  // namespace

std::unique_ptr<Rules> make_gomoku(BoardSize size) { return std::make_unique<Gomoku>(size); }

}  // namespace xmcts::detail
