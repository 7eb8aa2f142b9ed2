#include <gtest/gtest.h>

#include <random>

#include "golden_snapshots.h"
#include "xmcts/errors.h"
#include "xmcts/explain.h"
#include "xmcts/json_io.h"

namespace xmcts {
namespace {

using golden::solved;
using golden::stat;

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

TEST(ProbabilityTest, MappingGoldens) {
  EXPECT_EQ(format_percent(to_probability(0.0981)), "54.91%");
  EXPECT_EQ(format_percent(to_probability(0.3548)), "67.74%");
  EXPECT_EQ(format_percent(to_probability(0.7482)), "87.41%");
  EXPECT_EQ(format_percent(to_probability(0.2857)), "64.29%");
  EXPECT_EQ(format_percent(to_probability(0.0)), "50.00%");
  EXPECT_EQ(format_percent(to_probability(0.3548) - to_probability(0.2857)), "3.46%");
  EXPECT_EQ(format_percent(to_probability(0.7482) - to_probability(0.4822)), "13.30%");
  EXPECT_EQ(format_percent(to_probability(0.3548) - to_probability(0.1250)), "11.49%");
  EXPECT_EQ(format_percent(to_probability(0.719830)), "85.99%");
  EXPECT_EQ(format_percent(to_probability(0.499414) - to_probability(0.275278)), "11.21%");
}

TEST(ProbabilityTest, OutOfRangeIsUsageError) {
  EXPECT_THROW(to_probability(1.5), UsageError);
  EXPECT_THROW(to_probability(-1.0001), UsageError);
}

TEST(ProbabilityTest, AffineAndMonotone) {
  EXPECT_DOUBLE_EQ(to_probability(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(to_probability(0.0), 0.5);
  EXPECT_DOUBLE_EQ(to_probability(1.0), 1.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    if (a < b) EXPECT_LT(to_probability(a), to_probability(b));
    EXPECT_NEAR(to_probability(a) - to_probability(b), (a - b) / 2.0, 1e-12);
  }
}

TEST(FormatTest, HalfUpRounding) {
  EXPECT_EQ(format_fixed(0.59375, 4), "0.5938");
  EXPECT_EQ(format_fixed(-5.0 / 17.0, 4), "-0.2941");
  EXPECT_EQ(format_fixed(-0.00001, 4), "0.0000");
  EXPECT_EQ(format_fixed(0.71983, 6), "0.719830");
  EXPECT_EQ(format_fixed(1.0, 4), "1.0000");
}

TEST(BucketTest, ConnectFourExample) {
  const auto b = bucketize(golden::connect_four_reused_tree().move_stats, {});
  for (const auto& g : b.groups) EXPECT_EQ(g.count, 1);
  EXPECT_TRUE(b.groups[0].any_proven);
  EXPECT_TRUE(b.groups[4].any_proven);
  EXPECT_EQ(format_percent(b.groups[1].extreme), "70.00%");
  EXPECT_EQ(format_percent(b.groups[3].extreme), "33.33%");
  EXPECT_EQ(render_fact(b).front(),
            "There are 5 moves available: 1 with decisive advantage (proven win), 1 with slight advantage (above "
            "70.00%), 1 balanced (~50%), 1 with slight disadvantage (below 33.33%), 1 with decisive disadvantage "
            "(proven loss).");
}

TEST(BucketTest, GomokuCountsConserved) {
  const auto b = bucketize(golden::gomoku_grave().move_stats, {});
  EXPECT_EQ(b.total, 221);
  EXPECT_EQ(b.groups[0].count, 89);
  EXPECT_EQ(b.groups[1].count, 5);
  EXPECT_EQ(b.groups[2].count, 22);
  EXPECT_EQ(b.groups[3].count, 21);
  EXPECT_EQ(b.groups[4].count, 84);
}

TEST(BucketTest, AllZeroBalancedAndSingleMove) {
  std::vector<MoveStats> stats{stat("A", 3, 0), stat("B", 4, 0)};
  const auto b = bucketize(stats, {});
  EXPECT_EQ(b.groups[2].count, 2);
  EXPECT_EQ(render_fact(bucketize({stat("A", 1, 0)}, {})).front(), "There is 1 move available: 1 balanced (~50%).");
}

TEST(BucketTest, ProvenMovesIgnoreTheirMean) {
  // A proven win with a poor mean still counts as decisive advantage.
  const auto b = bucketize({solved(stat("A", 10, -5), 1.0, 1), solved(stat("B", 10, 8), -1.0, 2)}, {});
  EXPECT_EQ(b.groups[0].count, 1);
  EXPECT_EQ(b.groups[4].count, 1);
}

TEST(BucketTest, ConservationOverRandomVectors) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<MoveStats> stats;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      const int visits = 1 + static_cast<int>(rng() % 50);
      const int sum = static_cast<int>(rng() % (2 * visits + 1)) - visits;
      auto m = stat("M" + std::to_string(i), visits, sum);
      if (rng() % 7 == 0) m = solved(m, rng() % 2 ? 1.0 : -1.0, 1 + static_cast<int>(rng() % 9));
      stats.push_back(m);
    }
    int total = 0;
    for (const auto& g : bucketize(stats, {}).groups) total += g.count;
    ASSERT_EQ(total, n);
  }
}

TEST(ProvenResultTest, TurnsAndPv) {
  const auto r = proven_result_fact(golden::breakthrough_proven_win());
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->turns, 2);
  EXPECT_EQ(render_fact(*r),
            (std::vector<std::string>{"Selected move, H6-H7, leads to a proven win in 2 turns.",
                                      "After we play this move, the most probable sequence of following moves will "
                                      "be: E3-E2, H7-G8."}));
  TurnSnapshot one;
  one.move_stats = {solved(stat("A1", 1, 1), 1.0, 1)};
  const auto r1 = proven_result_fact(one);
  ASSERT_TRUE(r1.has_value());
  EXPECT_EQ(render_fact(*r1), std::vector<std::string>{"Selected move, A1, leads to a proven win in 1 turn."});
  EXPECT_FALSE(proven_result_fact(golden::minishogi()).has_value());
}

TEST(AssessmentTest, Categories) {
  const auto a = position_assessment(golden::minishogi(), {});
  EXPECT_EQ(a.category, Bucket::kSlightAdvantage);
  EXPECT_EQ(format_percent(a.probability), "67.74%");
  EXPECT_FALSE(a.general_flag);
  const auto g = position_assessment(golden::breakthrough_mast_nst(), {});
  EXPECT_TRUE(g.general_flag);
  EXPECT_EQ(format_percent(g.worst_probability), "56.82%");
  TurnSnapshot zero;
  zero.move_stats = {stat("A", 4, 0), stat("B", 4, -2)};
  const auto z = position_assessment(zero, {});
  EXPECT_EQ(z.category, Bucket::kBalanced);
  EXPECT_EQ(format_percent(z.probability), "50.00%");
}

TEST(DeltaTest, SignificanceCutoff) {
  const auto d = previous_turn_delta(golden::minishogi(), {});
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(format_percent(d->delta_probability), "11.49%");
  EXPECT_FALSE(previous_turn_delta(golden::gomoku_grave(), {}).has_value());
  auto same = golden::minishogi();
  same.previous_turn_score = same.selected().score;
  EXPECT_FALSE(previous_turn_delta(same, {}).has_value());
  same.previous_turn_score.reset();
  EXPECT_FALSE(previous_turn_delta(same, {}).has_value());
}

TEST(WorseTest, PublishedExamples) {
  const auto c4 = worse_alternatives(golden::connect_four_reused_tree(), {});
  ASSERT_TRUE(c4.has_value());
  EXPECT_EQ(c4->count, 4);
  EXPECT_EQ(c4->proven_defeats, 1);
  EXPECT_EQ(render_fact(*c4), (std::vector<std::string>{"4 of alternative moves are significantly worse.",
                                                         "1 of them is a proven defeat."}));
  const auto shogi = worse_alternatives(golden::minishogi(), {});
  ASSERT_TRUE(shogi.has_value());
  EXPECT_EQ(shogi->count, 11);
  EXPECT_EQ(shogi->likely_defeats, 1);
  EXPECT_EQ(render_fact(*shogi), (std::vector<std::string>{"11 of alternative moves are significantly worse.",
                                                           "1 of them is highly likely a defeat."}));
  // Everything within ten points: nothing to report.
  EXPECT_FALSE(worse_alternatives(golden::uttt_visits_over_mean(), {}).has_value());
}

TEST(MarginTest, SlightAndSignificant) {
  const auto m3 = margin_fact(golden::minishogi(), {});
  ASSERT_TRUE(m3.has_value());
  const auto& slight = std::get<Margin>(*m3);
  EXPECT_FALSE(slight.significant);
  EXPECT_EQ(render_fact(slight).front(),
            "The selected move is slightly better than all other options (3.46% increased win probability over the "
            "next best option, B1-B2).");
  const auto m4 = margin_fact(golden::breakthrough_mast_nst(), {});
  ASSERT_TRUE(m4.has_value());
  EXPECT_TRUE(std::get<Margin>(*m4).significant);
  EXPECT_EQ(format_percent(std::get<Margin>(*m4).delta_probability), "13.30%");
  EXPECT_EQ(std::get<Margin>(*m4).next_best, "C6-B7");
}

TEST(MarginTest, WhyNotAmaf) {
  const auto m = margin_fact(golden::gomoku_grave(), {});
  ASSERT_TRUE(m.has_value());
  const auto& w = std::get<WhyNot>(*m);
  EXPECT_EQ(w.better_count, 95);
  EXPECT_EQ(w.best, "M14+Marker1");
  EXPECT_EQ(w.metric, AttributedMetric::kAmaf);
  EXPECT_EQ(render_fact(w),
            (std::vector<std::string>{
                "The selected best move, K12+Marker1, has estimated win probability of 54.91%, but it was not chosen "
                "based on that metric.",
                "There are 95 moves with higher win probability (best of them, M14+Marker1, is better by 45.09%).",
                "However, these moves have slightly worse AMAF scores (2.94% worse for M14+Marker1), which influenced "
                "the result."}));
}

TEST(MarginTest, WhyNotVisitCount) {
  const auto m = margin_fact(golden::uttt_visits_over_mean(), {});
  ASSERT_TRUE(m.has_value());
  const auto& w = std::get<WhyNot>(*m);
  EXPECT_EQ(w.metric, AttributedMetric::kVisitCount);
  EXPECT_EQ(render_fact(w)[1],
            "There is one move (G5+Disc1) with higher win probability, which is better by 0.02%).");
  EXPECT_EQ(render_fact(w)[2], "However, this move has worse visit count, which influenced the result.");
}

TEST(MetricTest, MastAndNst) {
  const auto c = metric_commentary(golden::breakthrough_mast_nst(), {});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(render_fact(c[0]).front(),
            "3 moves are significantly better (at least 11.21% better) than the selected one according to the MAST "
            "metric.");
  EXPECT_EQ(render_fact(c[1]).front(),
            "One move (the selected one) is significantly better (at least 85.99%) than the rest according to the "
            "NST(2) metric.");
  EXPECT_TRUE(metric_commentary(golden::minishogi(), {}).empty());
}

TEST(PnTest, Imbalance) {
  auto s = golden::minishogi();
  s.features.pn = true;
  s.root_pn = PnView{2, 10};
  const auto p = pn_imbalance(s, {});
  ASSERT_TRUE(p.has_value());
  EXPECT_DOUBLE_EQ(p->ratio, 5.0);
  EXPECT_EQ(render_fact(*p).front(), "Proving a win currently looks 5× easier than refuting it.");
  s.root_pn = PnView{4, 4};
  EXPECT_FALSE(pn_imbalance(s, {}).has_value());
  s.root_pn = PnView{0, kPnInfinity};
  EXPECT_FALSE(pn_imbalance(s, {}).has_value());
}

TEST(ForcedTest, Definition) {
  TurnSnapshot s;
  s.features.solver = true;
  s.move_stats = {stat("B", 9, 0), solved(stat("A", 3, -3), -1.0, 2), solved(stat("C", 3, -3), -1.0, 2)};
  const auto f = forced_fact(s);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(render_fact(*f).front(), "All alternative moves lead to a proven defeat, so the selected move is forced.");
  s.move_stats[2] = stat("C", 3, -3);
  EXPECT_FALSE(forced_fact(s).has_value());
}

TEST(ProseTest, ProvenExamplesMatchPublishedText) {
  EXPECT_EQ(explain(golden::breakthrough_proven_win()).prose,
            "There are 23 moves available: 1 with decisive advantage (proven win), 15 with slight advantage (above "
            "55.56%), 5 balanced (~50%), 2 with slight disadvantage (below 35.29%).\n"
            "Selected move, H6-H7, leads to a proven win in 2 turns. After we play this move, the most probable "
            "sequence of following moves will be: E3-E2, H7-G8.");
  EXPECT_EQ(explain(golden::connect_four_reused_tree()).prose,
            "There are 5 moves available: 1 with decisive advantage (proven win), 1 with slight advantage (above "
            "70.00%), 1 balanced (~50%), 1 with slight disadvantage (below 33.33%), 1 with decisive disadvantage "
            "(proven loss).\n"
            "Selected move, E1/2+Disc1, leads to a proven win in 2 turns. After we play this move, the most probable "
            "sequence of following moves will be: A1/3+Disc2, E1/3+Disc1.\n"
            "4 of alternative moves are significantly worse. 1 of them is a proven defeat.");
}

TEST(ProseTest, UnprovenExamples) {
  const std::string shogi = explain(golden::minishogi()).prose;
  EXPECT_TRUE(contains(shogi, "\nSelected move: D2-C3.\nOur position is slightly advantageous (estimated win "
                              "probability: 67.74%).\nThe overall estimation of our position improved over the "
                              "previous turn (11.49% increased win probability).\n11 of alternative moves are "
                              "significantly worse. 1 of them is highly likely a defeat.\nThe selected move is "
                              "slightly better than all other options (3.46% increased win probability over the next "
                              "best option, B1-B2)."));
  EXPECT_EQ(explain(golden::breakthrough_mast_nst()).prose,
            "There are 25 moves available: 1 with decisive advantage (above 87.41%), 24 with slight advantage (above "
            "56.82%).\n"
            "Our position is generally advantageous (the estimated win probability for the worst of available moves "
            "is 56.82%).\n"
            "The selected move, E4-D5, is significantly better than all other options (13.30% increased win "
            "probability over the next best option, C6-B7).\n"
            "3 moves are significantly better (at least 11.21% better) than the selected one according to the MAST "
            "metric.\n"
            "One move (the selected one) is significantly better (at least 85.99%) than the rest according to the "
            "NST(2) metric.");
  EXPECT_EQ(explain(golden::uttt_visits_over_mean()).prose,
            "There are 9 moves available: 9 balanced (~50%).\n"
            "Selected move: I5+Disc1.\n"
            "Our position is balanced (estimated win probability: 54.04%).\n"
            "The selected best move, I5+Disc1, has estimated win probability of 54.04%, but it was not chosen based "
            "on that metric. There is one move (G5+Disc1) with higher win probability, which is better by 0.02%). "
            "However, this move has worse visit count, which influenced the result.");
}

TEST(ProseTest, SingleMoveAndVerbosity) {
  TurnSnapshot s;
  s.move_stats = {stat("A1", 5, 1)};
  EXPECT_EQ(explain(s).prose,
            "There is 1 move available: 1 with slight advantage (above 60.00%).\nSelected move: A1.\nOur position is "
            "slightly advantageous (estimated win probability: 60.00%).");
  EXPECT_EQ(explain(golden::minishogi(), 0).prose, "");
  const std::string brief = explain(golden::minishogi(), 1).prose;
  EXPECT_EQ(brief,
            "There are 14 moves available: 4 with slight advantage (above 55.56%), 6 balanced (~50%), 3 with slight "
            "disadvantage (below 37.50%), 1 with decisive disadvantage (below 16.67%).\nSelected move: D2-C3.\nOur "
            "position is slightly advantageous (estimated win probability: 67.74%).\nThe overall estimation of our "
            "position improved over the previous turn (11.49% increased win probability).");
  EXPECT_THROW(explain(s, 3), ConfigError);
}

TEST(ProseTest, ProvenSuppressesDeltaAndPn) {
  auto s = golden::connect_four_reused_tree();
  s.previous_turn_score = -0.9;
  s.features.pn = true;
  s.root_pn = PnView{1, 50};
  for (const auto& f : explain(s).facts) {
    EXPECT_FALSE(std::holds_alternative<PreviousTurnDelta>(f));
    EXPECT_FALSE(std::holds_alternative<PnImbalance>(f));
    EXPECT_FALSE(std::holds_alternative<Margin>(f));
    EXPECT_FALSE(std::holds_alternative<WhyNot>(f));
  }
}

TEST(RawDumpTest, Lines) {
  const std::string d1 = render_raw_dump(golden::breakthrough_proven_win());
  EXPECT_TRUE(contains(d1, "Performed 1599 iterations. Previous turn score: 0.3072.\nSelected node:\n"
                           "{move: H6-H7, visits: 204, score: 0.4608, solved node with score 1.0000 (win)}\n"
                           "Other nodes:\n"
                           "{move: B2-C3, visits: 17, score: -0.2941, pess: -1.0000, opt: 1.0000}\n"
                           "{move: D6-C7, visits: 155, score: 0.3935, pess: -1.0000, opt: 1.0000}\n"));
  const std::string d2 = render_raw_dump(golden::gomoku_grave());
  EXPECT_TRUE(contains(d2, "{move: K12+Marker1, visits: 1111, score: 0.0981, AMAF visits: 1923, AMAF score: 0.1014, "
                           "pess: -1.0000, opt: 1.0000}"));
  EXPECT_TRUE(contains(d2, "{move: E12+Marker1, visits: 95, score: 0.0316, AMAF visits: 1204, AMAF score: 0.0880, "
                           "pess: -1.0000, opt: 1.0000}"));
  EXPECT_TRUE(contains(render_raw_dump(golden::breakthrough_mast_nst()),
                       "{move: E4-D5, visits: 5146, score: 0.7482, 1-gram visits: 30580, 1-gram score: 0.275278, "
                       "2-gram visits: 5411, 2-gram score: 0.719830, pess: -1.0000, opt: 1.0000}"));
  const std::string d6 = render_raw_dump(golden::connect_four_reused_tree());
  EXPECT_TRUE(d6.starts_with("Performed 0 iterations. Previous turn score: 0.3352.\n"));
  EXPECT_TRUE(contains(d6, "{move: E1/2+Disc1, visits: 64, score: 0.5938, solved node with score 1.0000 (win)}"));
  EXPECT_TRUE(contains(d6, "{move: C1/1+Disc1, visits: 5, score: 0.2000, solved node with score -1.0000 (loss)}"));
  EXPECT_TRUE(contains(d6, "{move: A1/3+Disc1, visits: 10, score: 0.0000, pess: -1.0000, opt: 1.0000}"));
}

TEST(ReportTest, PureAndRoundTrips) {
  for (const auto& s : {golden::breakthrough_proven_win(), golden::gomoku_grave(), golden::minishogi(), golden::breakthrough_mast_nst(), golden::uttt_visits_over_mean(),
                        golden::connect_four_reused_tree()}) {
    const auto a = explain(s);
    EXPECT_EQ(a, explain(s));
    const auto back = report_from_json(Json::parse(report_to_json(a).dump()));
    EXPECT_EQ(back, a);
    EXPECT_EQ(snapshot_from_json(Json::parse(snapshot_to_json(s).dump())), s);
    // Prose derives from facts alone.
    EXPECT_EQ(render_prose(back.facts, 2, {}), a.prose);
  }
}

TEST(ReportTest, EveryFactRenders) {
  std::vector<ExplanationFact> all{BucketSummary{},    ProvenResult{}, PositionAssessment{}, PreviousTurnDelta{},
                                   WorseAlternatives{}, Margin{},       WhyNot{},             MetricCommentary{},
                                   PnImbalance{},      Forced{}};
  for (const auto& f : all) EXPECT_FALSE(render_fact(f).empty()) << fact_type_name(f);
}

TEST(ReportTest, ParseErrorsNameTheField) {
  auto j = snapshot_to_json(golden::uttt_visits_over_mean());
  j.erase("move_stats");
  try {
    snapshot_from_json(j);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_TRUE(contains(e.what(), "move_stats"));
  }
}

TEST(ThresholdTest, Validation) {
  ThresholdConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.slight_low = 0.6;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

}  // namespace
}  // namespace xmcts
