#include <vector>

#include "game/rules_impl.h"

namespace xmcts::detail {

namespace {

std::vector<std::unique_ptr<Rules>> build_all() {
  std::vector<std::unique_ptr<Rules>> all;
  all.push_back(make_tictactoe());
  all.push_back(make_connect_four({7, 6}));
  all.push_back(make_connect_four({4, 4}));
  all.push_back(make_connect_four({5, 4}));
  all.push_back(make_breakthrough({6, 6}));
  all.push_back(make_breakthrough({8, 8}));
  all.push_back(make_gomoku({9, 9}));
  all.push_back(make_gomoku({15, 15}));
  all.push_back(make_ultimate_ttt());
  return all;
}

}  // namespace

const Rules* find_rules(GameKind kind, BoardSize size) {
  static const std::vector<std::unique_ptr<Rules>> all = build_all();
  for (const auto& r : all) {
    if (r->kind() == kind && r->size() == size) return r.get();
  }
  return nullptr;
}

}  // namespace xmcts::detail
