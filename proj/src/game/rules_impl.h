#pragma once

#include <memory>

#include "xmcts/game.h"

namespace xmcts::detail {

const Rules* find_rules(GameKind kind, BoardSize size);

std::unique_ptr<Rules> make_tictactoe();
std::unique_ptr<Rules> make_connect_four(BoardSize size);
std::unique_ptr<Rules> make_breakthrough(BoardSize size);
std::unique_ptr<Rules> make_gomoku(BoardSize size);
std::unique_ptr<Rules> make_ultimate_ttt();

// Length of the run of `owner` stones through (col, row) along (dc, dr),
// counting the cell itself.
inline int run_length(const GameState& s, int col, int row, int dc, int dr, int owner) {
  int n = 1;
  for (int c = col + dc, r = row + dr; c >= 0 && c < s.width() && r >= 0 && r < s.height() && s.cell(c, r) == owner;
       c += dc, r += dr) {
    ++n;
  }
  for (int c = col - dc, r = row - dr; c >= 0 && c < s.width() && r >= 0 && r < s.height() && s.cell(c, r) == owner;
       c -= dc, r -= dr) {
    ++n;
  }
  return n;
}

inline bool makes_line(const GameState& s, int col, int row, int owner, int length) {
  return run_length(s, col, row, 1, 0, owner) >= length || run_length(s, col, row, 0, 1, owner) >= length ||
         run_length(s, col, row, 1, 1, owner) >= length || run_length(s, col, row, 1, -1, owner) >= length;
}

}  // namespace xmcts::detail
