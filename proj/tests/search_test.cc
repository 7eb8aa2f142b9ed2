#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "xmcts/errors.h"
#include "xmcts/oracle.h"
#include "xmcts/search.h"

namespace xmcts {
namespace {

SearchConfig iterations(std::int64_t n, std::uint64_t seed = 1) {
  SearchConfig cfg;
  cfg.iterations = n;
  cfg.seed = seed;
  return cfg;
}

// Root at the TTT opening with `k` materialised children.
std::unique_ptr<SearchNode> opening_with_children(int k) {
  auto root = std::make_unique<SearchNode>(initial_state(GameKind::kTicTacToe));
  for (int i = 0; i < k; ++i) root->expand_next();
  return root;
}

void set_stats(SearchNode& n, std::int64_t visits, double first_player_sum) {
  n.visits = visits;
  n.reward_sum = {first_player_sum, -first_player_sum};
}

void walk(const SearchNode& n, const std::function<void(const SearchNode&)>& f) {
  f(n);
  for (const auto& c : n.children) walk(*c, f);
}

TEST(SelectChildTest, UnvisitedFirst) {
  auto root = opening_with_children(2);
  set_stats(*root->children[0], 10, 5);
  set_stats(*root, 10, 5);
  EXPECT_EQ(&select_child(*root, iterations(1)), root->children[1].get());
}

TEST(SelectChildTest, EqualMeansPreferFewerVisits) {
  auto root = opening_with_children(2);
  set_stats(*root->children[0], 10, 5);
  set_stats(*root->children[1], 5, 2.5);
  set_stats(*root, 15, 7.5);
  auto cfg = iterations(1);
  cfg.exploration = 1.0;
  EXPECT_EQ(&select_child(*root, cfg), root->children[1].get());
}

TEST(SelectChildTest, HandComputedArgmax) {
  // Means 0.6, 0.2, 0.5 with visits 20, 5, 10 under 35 parent visits, C = 1.
  // UCB: 0.6 + sqrt(ln35/20) = 1.0215, 0.2 + sqrt(ln35/5) = 1.0433,
  //      0.5 + sqrt(ln35/10) = 1.0963.
  auto root = opening_with_children(3);
  set_stats(*root->children[0], 20, 12);
  set_stats(*root->children[1], 5, 1);
  set_stats(*root->children[2], 10, 5);
  set_stats(*root, 35, 18);
  auto cfg = iterations(1);
  cfg.exploration = 1.0;
  EXPECT_EQ(&select_child(*root, cfg), root->children[2].get());

  // Scaling utilities and C together leaves the argmax unchanged.
  for (auto& c : root->children) {
    c->reward_sum[0] *= 3;
    c->reward_sum[1] *= 3;
  }
  cfg.exploration = 3.0;
  EXPECT_EQ(&select_child(*root, cfg), root->children[2].get());
}

TEST(SelectChildTest, SecondPlayerPerspective) {
  auto root = std::make_unique<SearchNode>(apply(initial_state(GameKind::kTicTacToe), 4));
  root->expand_next();
  root->expand_next();
  // Good for the first player means bad for the second, who moves here.
  set_stats(*root->children[0], 50, 40);
  set_stats(*root->children[1], 50, -40);
  set_stats(*root, 100, 0);
  EXPECT_EQ(&select_child(*root, iterations(1)), root->children[1].get());
}

TEST(PlayoutTest, SingleMoveLeftAndDeterminism) {
  std::mt19937_64 pick(5);
  GameState s = initial_state(GameKind::kTicTacToe);
  bool found = false;
  for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
    s = initial_state(GameKind::kTicTacToe);
    while (!s.is_terminal() && legal_move_ids(s).size() > 1) {
      const auto ids = legal_move_ids(s);
      s = apply(s, ids[pick() % ids.size()]);
    }
    found = !s.is_terminal();
  }
  ASSERT_TRUE(found);
  EnhancementTables tables;
  Rng rng(1);
  std::vector<PlayedStep> trace;
  playout(s, iterations(1), tables, rng, trace);
  EXPECT_EQ(trace.size(), 1u);

  auto run = [&](std::uint64_t seed) {
    Rng r(seed);
    std::vector<PlayedStep> t;
    playout(initial_state(GameKind::kConnectFour), iterations(1), tables, r, t);
    std::vector<int> moves;
    for (const auto& step : t) moves.push_back(step.move);
    return moves;
  };
  EXPECT_EQ(run(9), run(9));
}

TEST(BackpropTest, VisitsAndRewards) {
  auto root = std::make_unique<SearchNode>(initial_state(GameKind::kTicTacToe));
  EnhancementTables tables;
  SearchNode* path[] = {root.get()};
  backpropagate(path, GameOutcome::win_for(PlayerId::kFirst), {}, tables, iterations(1), PlayerId::kFirst);
  EXPECT_EQ(root->visits, 1);
  EXPECT_EQ(root->reward_sum[0], 1.0);
  EXPECT_EQ(root->reward_sum[1], -1.0);
  backpropagate(path, GameOutcome::win_for(PlayerId::kSecond), {}, tables, iterations(1), PlayerId::kFirst);
  EXPECT_DOUBLE_EQ(root->mean(PlayerId::kFirst), 0.0);
}

TEST(BackpropTest, TerminalWinSolvesParent) {
  // X to move can complete the top row.
  GameState s = initial_state(GameKind::kTicTacToe);
  for (int id : {0, 3, 1, 4}) s = apply(s, id);
  auto root = std::make_unique<SearchNode>(s);
  EnhancementTables tables;
  auto cfg = iterations(1);
  cfg.enh.solver = true;
  SearchNode* win = nullptr;
  while (root->unexpanded() > 0) {
    SearchNode& c = root->expand_next();
    if (c.move == 2) win = &c;
  }
  ASSERT_NE(win, nullptr);
  SearchNode* path[] = {root.get(), win};
  const PlayedStep trace[] = {{PlayerId::kFirst, 2}};
  backpropagate(path, *win->state.outcome(), trace, tables, cfg, PlayerId::kFirst);
  EXPECT_TRUE(root->bounds.exact());
  EXPECT_EQ(root->bounds.solved_value(PlayerId::kFirst), 1.0);
  EXPECT_EQ(root->bounds.solved_distance(), 1);
  const auto oracle = negamax_oracle(s);
  ASSERT_TRUE(oracle);
  EXPECT_EQ(oracle->value, 1);
  EXPECT_EQ(oracle->distance, 1);
}

TEST(FinalChoiceTest, RobustChildOverHigherMean) {
  auto root = opening_with_children(3);
  set_stats(*root->children[0], 4922, 4922 * 0.0809);
  set_stats(*root->children[1], 2749, 2749 * 0.0813);
  set_stats(*root->children[2], 1122, 1122 * 0.0098);
  const auto c = final_move_choice(*root);
  EXPECT_EQ(c.child, root->children[0].get());
  EXPECT_EQ(c.rationale, ChoiceRationale::kMostVisits);
}

TEST(FinalChoiceTest, TiesBrokenByMeanThenOrder) {
  auto root = opening_with_children(3);
  set_stats(*root->children[0], 10, 1);
  set_stats(*root->children[1], 10, 3);
  set_stats(*root->children[2], 10, 3);
  EXPECT_EQ(final_move_choice(*root).child, root->children[1].get());
}

TEST(FinalChoiceTest, ProvenWinAndForcedLoss) {
  auto root = opening_with_children(3);
  set_stats(*root->children[0], 100, 50);
  set_stats(*root->children[1], 3, 0);
  set_stats(*root->children[2], 7, 0);
  root->children[1]->bounds = {encode_proven(1, 4), encode_proven(1, 4)};
  root->children[2]->bounds = {encode_proven(1, 2), encode_proven(1, 2)};
  auto c = final_move_choice(*root);
  EXPECT_EQ(c.child, root->children[2].get());  // shortest win
  EXPECT_EQ(c.rationale, ChoiceRationale::kProvenWin);

  for (auto& ch : root->children) ch->bounds = {encode_proven(-1, 2), encode_proven(-1, 2)};
  root->children[1]->bounds = {encode_proven(-1, 6), encode_proven(-1, 6)};
  c = final_move_choice(*root);
  EXPECT_EQ(c.child, root->children[1].get());  // longest loss
  EXPECT_EQ(c.rationale, ChoiceRationale::kForcedLoss);

  auto empty = opening_with_children(0);
  EXPECT_THROW(final_move_choice(*empty), UsageError);
}

TEST(AdvanceRootTest, KeepsStatistics) {
  auto root = opening_with_children(2);
  set_stats(*root->children[1], 64, 38);
  const int played = root->children[1]->move;
  auto next = advance_root(std::move(root), played);
  ASSERT_NE(next, nullptr);
  EXPECT_EQ(next->visits, 64);
  EXPECT_EQ(advance_root(opening_with_children(2), 8), nullptr);
}

TEST(AdvanceRootTest, ReuseOnlyGrowsVisits) {
  const auto s = initial_state(GameKind::kConnectFour);
  EnhancementTables tables;
  std::unique_ptr<SearchNode> tree;
  const auto first = search(s, iterations(300), tables, tree);
  const auto after = apply(s, first.selected);
  const auto reply = legal_move_ids(after).front();
  tree = advance_root(std::move(tree), first.selected.id);
  tree = advance_root(std::move(tree), reply);
  const std::int64_t before = tree ? tree->visits : 0;
  search(apply(after, reply), iterations(100), tables, tree);
  EXPECT_GE(tree->visits, before + 100);
}

TEST(PvTest, HandBuiltChain) {
  auto root = opening_with_children(3);
  EXPECT_TRUE(principal_variation(*opening_with_children(0), 4).empty());
  set_stats(*root->children[0], 5, 0);
  set_stats(*root->children[1], 9, 0);
  set_stats(*root->children[2], 9, 0);
  SearchNode& mid = *root->children[1];
  mid.expand_next();
  mid.expand_next();
  set_stats(*mid.children[0], 2, 0);
  set_stats(*mid.children[1], 6, 0);
  SearchNode& leaf = *mid.children[1];
  leaf.expand_next();
  set_stats(*leaf.children[0], 1, 0);
  const auto pv = principal_variation(*root, 4);
  ASSERT_EQ(pv.size(), 3u);
  EXPECT_EQ(pv[0].id, mid.move);
  EXPECT_EQ(pv[1].id, leaf.move);
  EXPECT_EQ(principal_variation(*root, 2).size(), 2u);
}

TEST(SearchTest, FindsImmediateWin) {
  GameState s = initial_state(GameKind::kTicTacToe);
  for (int id : {0, 3, 1, 4}) s = apply(s, id);
  EnhancementTables tables;
  std::unique_ptr<SearchNode> tree;
  auto cfg = iterations(1000);
  cfg.enh.solver = true;
  const auto r = search(s, cfg, tables, tree);
  EXPECT_EQ(r.selected.id, 2);
  const auto& sel = r.snapshot.selected();
  EXPECT_TRUE(sel.solved);
  EXPECT_EQ(sel.solved_value, 1.0);
  EXPECT_EQ(sel.solved_distance_plies, 1);
  EXPECT_LT(r.iterations_performed, 1000);
}

TEST(SearchTest, SolvedReusedRootRunsNoIterations) {
  GameState s = initial_state(GameKind::kTicTacToe);
  for (int id : {0, 3, 1, 4}) s = apply(s, id);
  EnhancementTables tables;
  std::unique_ptr<SearchNode> tree;
  auto cfg = iterations(5000);
  cfg.enh.solver = true;
  search(s, cfg, tables, tree);
  ASSERT_TRUE(tree->bounds.exact());
  const auto again = search(s, cfg, tables, tree);
  EXPECT_EQ(again.iterations_performed, 0);
  EXPECT_EQ(again.selected.id, 2);
  EXPECT_EQ(again.snapshot.rationale, ChoiceRationale::kProvenWin);
}

TEST(SearchTest, OneIterationVisitsOneChild) {
  EnhancementTables tables;
  std::unique_ptr<SearchNode> tree;
  const auto r = search(initial_state(GameKind::kConnectFour), iterations(1), tables, tree);
  EXPECT_EQ(r.iterations_performed, 1);
  int visited = 0;
  for (const auto& m : r.snapshot.move_stats) visited += m.visits > 0;
  EXPECT_EQ(visited, 1);
  EXPECT_EQ(r.snapshot.move_stats.size(), 7u);
}

TEST(SearchTest, SeedDeterminism) {
  for (bool all : {false, true}) {
    auto cfg = iterations(400, 42);
    if (all) cfg.enh = {true, true, true, true, true};
    EnhancementTables t1;
    EnhancementTables t2;
    std::unique_ptr<SearchNode> a;
    std::unique_ptr<SearchNode> b;
    const auto s = initial_state(GameKind::kBreakthrough, {6, 6});
    const auto r1 = search(s, cfg, t1, a);
    const auto r2 = search(s, cfg, t2, b);
    EXPECT_EQ(r1.selected, r2.selected);
    EXPECT_EQ(r1.snapshot, r2.snapshot);
  }
}

TEST(SearchTest, VisitConservationAndMeanBounds) {
  std::vector<EnhancementFlags> variants{{}, {true, false, false, false, false}, {true, true, true, true, true},
                                         {false, true, false, true, false}};
  for (auto kind : {GameKind::kTicTacToe, GameKind::kConnectFour, GameKind::kUltimateTicTacToe}) {
    for (const auto& flags : variants) {
      auto cfg = iterations(500, 3);
      cfg.enh = flags;
      EnhancementTables tables;
      std::unique_ptr<SearchNode> tree;
      search(initial_state(kind), cfg, tables, tree);
      walk(*tree, [](const SearchNode& n) {
        std::int64_t child_visits = 0;
        for (const auto& c : n.children) child_visits += c->visits;
        ASSERT_EQ(n.visits, child_visits + n.playouts_started);
        for (PlayerId p : {PlayerId::kFirst, PlayerId::kSecond}) {
          ASSERT_GE(n.mean(p), -1.0);
          ASSERT_LE(n.mean(p), 1.0);
        }
        ASSERT_LE(n.bounds.lower, n.bounds.upper);
      });
    }
  }
}

TEST(SearchTest, StopFlagAndTimeBudget) {
  std::atomic<bool> stop{true};
  auto cfg = iterations(100000);
  cfg.stop = &stop;
  EnhancementTables tables;
  std::unique_ptr<SearchNode> tree;
  // The first iteration always runs so a move can be chosen.
  EXPECT_EQ(search(initial_state(GameKind::kConnectFour), cfg, tables, tree).iterations_performed, 1);

  SearchConfig timed;
  timed.time_ms = 30;
  tree.reset();
  const auto r = search(initial_state(GameKind::kConnectFour), timed, tables, tree);
  EXPECT_GE(r.iterations_performed, 1);
}

TEST(SearchTest, Errors) {
  EnhancementTables tables;
  std::unique_ptr<SearchNode> tree;
  GameState s = initial_state(GameKind::kTicTacToe);
  for (int id : {0, 3, 1, 4, 2}) s = apply(s, id);
  EXPECT_THROW(search(s, iterations(10), tables, tree), UsageError);
  SearchConfig none;
  EXPECT_THROW(search(initial_state(GameKind::kTicTacToe), none, tables, tree), ConfigError);
  auto bad = iterations(10);
  bad.exploration = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

}  // namespace
}  // namespace xmcts
