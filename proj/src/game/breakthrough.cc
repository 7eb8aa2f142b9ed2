#include "game/rules_impl.h"

namespace xmcts::detail {

namespace {

// Move id = from * cells + to. The first player (white) starts on the two
// bottom rows and moves up. aux slots 0/1 hold the piece counts.
class Breakthrough final : public Rules {
 public:
  explicit Breakthrough(BoardSize size) : Rules(size) { build_rank_table(); }

  GameKind kind() const override { return GameKind::kBreakthrough; }

  GameState initial_state() const override {
    GameState s = blank_state();
    const int w = size().width;
    const int h = size().height;
    for (int col = 0; col < w; ++col) {
      for (int row : {0, 1}) cells(s)[row * w + col] = 0;
      for (int row : {h - 2, h - 1}) cells(s)[row * w + col] = 1;
    }
    aux(s)[0] = static_cast<std::int8_t>(2 * w);
    aux(s)[1] = static_cast<std::int8_t>(2 * w);
    return s;
  }

  void generate_moves(const GameState& s, std::vector<int>& out) const override {
    out.clear();
    if (s.is_terminal()) return;
    const int me = index(s.to_move());
    const int dir = me == 0 ? 1 : -1;
    const int w = s.width();
    const int n = s.cell_count();
    for (int from = 0; from < n; ++from) {
      if (s.cell(from) != me) continue;
      const int col = from % w;
      const int row = from / w + dir;
      if (row < 0 || row >= s.height()) continue;
      for (int dc = -1; dc <= 1; ++dc) {
        const int c = col + dc;
        if (c < 0 || c >= w) continue;
        const int to = row * w + c;
        const int target = s.cell(to);
        if (dc == 0 ? target == kEmpty : target != me) out.push_back(from * n + to);
      }
    }
  }

  std::string notation(const GameState&, int move) const override { return rank_key(move); }

  int move_id_bound() const override { return cell_count() * cell_count(); }
  char piece_letter(PlayerId p) const override { return p == PlayerId::kFirst ? 'W' : 'B'; }

 protected:
  void place(GameState& s, int move) const override {
    const int n = s.cell_count();
    const int from = move / n;
    const int to = move % n;
    const int me = index(s.to_move());
    const int them = 1 - me;
    if (s.cell(to) == them) --aux(s)[them];
    cells(s)[to] = static_cast<std::int8_t>(me);
    cells(s)[from] = kEmpty;
    const int row = to / s.width();
    if ((me == 0 && row == s.height() - 1) || (me == 1 && row == 0) || s.aux(them) == 0) {
      set_winner(s, s.to_move());
    }
  }

  std::string rank_key(int move) const override {
    const int n = cell_count();
    const int w = size().width;
    return cell_name((move / n) % w, (move / n) / w) + "-" + cell_name((move % n) % w, (move % n) / w);
  }
};

}  // namespace

std::unique_ptr<Rules> make_breakthrough(BoardSize size) { return std::make_unique<Breakthrough>(size); }

}  // namespace xmcts::detail
