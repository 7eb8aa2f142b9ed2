#pragma once

// Rule-based explanation of a search decision.
//
// Rules turn a TurnSnapshot into typed facts; templates render the facts as
// English sentences. The raw statistics dump is rendered from the snapshot
// alone.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xmcts/snapshot.h"

namespace xmcts {

struct ThresholdConfig {
  double decisive_low = 0.25;
  double slight_low = 0.45;
  double slight_high = 0.55;
  double decisive_high = 0.75;
  double significance = 0.10;
  int pv_max_plies = 4;
  // Sentence budget of verbosity level 1.
  int brief_sentences = 4;
  double pn_ratio = 3.0;

  void validate() const;  // throws ConfigError
};

// Probability of winning implied by a score in [-1, +1]. Throws UsageError
// outside that range.
double to_probability(double score);

// Fixed-point text with half-up rounding, e.g. format_fixed(0.59375, 4) ==
// "0.5938". Values are nudged by 1e-6 of the last digit so decimal ties that
// binary doubles store just below .5 still round up.
std::string format_fixed(double value, int decimals);
// Probability as a percentage with two decimals and a trailing '%'.
std::string format_percent(double probability);

enum class Bucket { kDecisiveAdvantage, kSlightAdvantage, kBalanced, kSlightDisadvantage, kDecisiveDisadvantage };

Bucket bucket_of(double probability, const ThresholdConfig& cfg);

struct BucketGroup {
  int count = 0;
  bool any_proven = false;
  // Lowest member probability for advantage buckets, highest for
  // disadvantage buckets.
  double extreme = 0.0;
  friend bool operator==(const BucketGroup&, const BucketGroup&) = default;
};

struct BucketSummary {
  int total = 0;
  std::array<BucketGroup, 5> groups{};  // indexed by Bucket
  friend bool operator==(const BucketSummary&, const BucketSummary&) = default;
};

enum class ProvenOutcome { kWin, kLoss, kDraw };

struct ProvenResult {
  std::string move;
  ProvenOutcome outcome = ProvenOutcome::kWin;
  int turns = 0;
  std::vector<std::string> pv;
  friend bool operator==(const ProvenResult&, const ProvenResult&) = default;
};

struct PositionAssessment {
  std::string move;
  Bucket category = Bucket::kBalanced;
  double probability = 0.5;
  bool general_flag = false;
  double worst_probability = 0.0;
  friend bool operator==(const PositionAssessment&, const PositionAssessment&) = default;
};

struct PreviousTurnDelta {
  double delta_probability = 0.0;
  friend bool operator==(const PreviousTurnDelta&, const PreviousTurnDelta&) = default;
};

struct WorseAlternatives {
  int count = 0;
  int proven_defeats = 0;
  int likely_defeats = 0;
  friend bool operator==(const WorseAlternatives&, const WorseAlternatives&) = default;
};

struct Margin {
  double delta_probability = 0.0;
  std::string next_best;
  bool significant = false;
  // Set when the selected move was not named earlier in the explanation.
  std::string named_move;
  friend bool operator==(const Margin&, const Margin&) = default;
};

enum class AttributedMetric { kAmaf, kVisitCount };

struct WhyNot {
  std::string move;
  double probability = 0.0;
  int better_count = 0;
  std::string best;
  double advantage = 0.0;
  AttributedMetric metric = AttributedMetric::kVisitCount;
  double metric_delta = 0.0;  // AMAF probability difference
  bool metric_significant = false;
  friend bool operator==(const WhyNot&, const WhyNot&) = default;
};

struct MetricCommentary {
  std::string metric;   // "MAST", "NST(1)", "NST(2)", ...
  int gram_length = 1;
  bool dominant = false;
  int better_count = 0;
  double magnitude = 0.0;  // min excess, or own probability when dominant
  friend bool operator==(const MetricCommentary&, const MetricCommentary&) = default;
};

struct PnImbalance {
  double ratio = 1.0;  // dn / pn at the root
  friend bool operator==(const PnImbalance&, const PnImbalance&) = default;
};

struct Forced {
  std::string move;
  friend bool operator==(const Forced&, const Forced&) = default;
};

using ExplanationFact = std::variant<BucketSummary, ProvenResult, PositionAssessment, PreviousTurnDelta,
                                     WorseAlternatives, Margin, WhyNot, MetricCommentary, PnImbalance, Forced>;

std::string_view fact_type_name(const ExplanationFact& f);

struct ExplanationReport {
  std::vector<ExplanationFact> facts;
  std::string raw_dump;
  std::string prose;
  int verbosity = 2;
  friend bool operator==(const ExplanationReport&, const ExplanationReport&) = default;
};

// Individual rules.
BucketSummary bucketize(const std::vector<MoveStats>& stats, const ThresholdConfig& cfg);
std::optional<ProvenResult> proven_result_fact(const TurnSnapshot& snap);
PositionAssessment position_assessment(const TurnSnapshot& snap, const ThresholdConfig& cfg);
std::optional<PreviousTurnDelta> previous_turn_delta(const TurnSnapshot& snap, const ThresholdConfig& cfg);
std::optional<WorseAlternatives> worse_alternatives(const TurnSnapshot& snap, const ThresholdConfig& cfg);
std::optional<std::variant<Margin, WhyNot>> margin_fact(const TurnSnapshot& snap, const ThresholdConfig& cfg);
std::vector<MetricCommentary> metric_commentary(const TurnSnapshot& snap, const ThresholdConfig& cfg);
std::optional<PnImbalance> pn_imbalance(const TurnSnapshot& snap, const ThresholdConfig& cfg);
std::optional<Forced> forced_fact(const TurnSnapshot& snap);

// All facts in rendering priority order.
std::vector<ExplanationFact> collect_facts(const TurnSnapshot& snap, const ThresholdConfig& cfg);

std::string render_raw_dump(const TurnSnapshot& snap);
std::string render_move_line(const MoveStats& m);

// Sentences of one fact, in order.
std::vector<std::string> render_fact(const ExplanationFact& fact);

// Verbosity 0 renders nothing, 1 keeps the first cfg.brief_sentences
// sentences, 2 renders every fact. Facts are separated by newlines.
std::string render_prose(const std::vector<ExplanationFact>& facts, int verbosity, const ThresholdConfig& cfg);

ExplanationReport explain(const TurnSnapshot& snap, int verbosity = 2, const ThresholdConfig& cfg = {});

}  // namespace xmcts
