#include "xmcts/explain.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xmcts/errors.h"

namespace xmcts {

namespace {

// Boundary comparisons tolerate the error of (score + 1) / 2 in binary.
constexpr double kCompareSlack = 1e-12;

double prob_of(const MoveStats& m) { return to_probability(std::clamp(effective_score(m), -1.0, 1.0)); }

bool proven_win(const MoveStats& m) { return m.solved && m.solved_value > 0.0; }
bool proven_loss(const MoveStats& m) { return m.solved && m.solved_value < 0.0; }

// Moves that carry an estimate: visited at least once or proven.
bool estimated(const MoveStats& m) { return m.visits > 0 || m.solved; }

std::string plural(int n, std::string_view one, std::string_view many) {
  return std::to_string(n) + " " + std::string(n == 1 ? one : many);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string category_phrase(Bucket b) {
  switch (b) {
    case Bucket::kDecisiveAdvantage:
      return "highly advantageous";
    case Bucket::kSlightAdvantage:
      return "slightly advantageous";
    case Bucket::kBalanced:
      return "balanced";
    case Bucket::kSlightDisadvantage:
      return "slightly disadvantageous";
    case Bucket::kDecisiveDisadvantage:
      return "highly disadvantageous";
  }
  return "balanced";
}

std::string format_ratio(double r) {
  const std::string s = format_fixed(r, 1);
  return s.ends_with(".0") ? s.substr(0, s.size() - 2) : s;
}

}  // namespace

void ThresholdConfig::validate() const {
  if (!(0.0 < decisive_low && decisive_low < slight_low && slight_low < slight_high && slight_high < decisive_high &&
        decisive_high < 1.0)) {
    throw ConfigError("bucket boundaries must satisfy 0 < decisive_low < slight_low < slight_high < decisive_high < 1");
  }
  if (!(significance > 0.0 && significance < 1.0)) throw ConfigError("significance must be in (0, 1)");
  if (pv_max_plies < 0) throw ConfigError("pv_max_plies must be non-negative");
  if (brief_sentences < 1) throw ConfigError("brief_sentences must be positive");
  if (!(pn_ratio > 1.0)) throw ConfigError("pn_ratio must exceed 1");
}

double to_probability(double score) {
  if (!(score >= -1.0 && score <= 1.0)) {
    throw UsageError("score " + std::to_string(score) + " outside [-1, 1]");
  }
  return (score + 1.0) / 2.0;
}

std::string format_fixed(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = std::abs(value) * scale;
  const auto units = static_cast<long long>(std::floor(scaled + 0.5 + 1e-6));
  const long long whole = units / static_cast<long long>(scale);
  const long long frac = units % static_cast<long long>(scale);
  std::string out = (value < 0 && units > 0) ? "-" : "";
  out += std::to_string(whole);
  if (decimals > 0) {
    const std::string digits = std::to_string(frac);
    out += "." + std::string(static_cast<size_t>(decimals) - digits.size(), '0') + digits;
  }
  return out;
}

std::string format_percent(double probability) { return format_fixed(probability * 100.0, 2) + "%"; }

Bucket bucket_of(double p, const ThresholdConfig& cfg) {
  if (p >= cfg.decisive_high - kCompareSlack) return Bucket::kDecisiveAdvantage;
  if (p >= cfg.slight_high - kCompareSlack) return Bucket::kSlightAdvantage;
  if (p >= cfg.slight_low - kCompareSlack) return Bucket::kBalanced;
  if (p >= cfg.decisive_low - kCompareSlack) return Bucket::kSlightDisadvantage;
  return Bucket::kDecisiveDisadvantage;
}

std::string_view fact_type_name(const ExplanationFact& f) {
  static constexpr std::string_view kNames[] = {"bucket_summary",     "proven_result", "position_assessment",
                                                "previous_turn_delta", "worse_alternatives", "margin",
                                                "why_not",            "metric_commentary", "pn_imbalance",
                                                "forced"};
  return kNames[f.index()];
}

// ---------------------------------------------------------------------------
// Rules.

BucketSummary bucketize(const std::vector<MoveStats>& stats, const ThresholdConfig& cfg) {
  BucketSummary out;
  out.total = static_cast<int>(stats.size());
  for (const auto& m : stats) {
    Bucket b;
    if (proven_win(m)) {
      b = Bucket::kDecisiveAdvantage;
    } else if (proven_loss(m)) {
      b = Bucket::kDecisiveDisadvantage;
    } else {
      b = bucket_of(prob_of(m), cfg);
    }
    auto& g = out.groups[static_cast<size_t>(b)];
    const double p = prob_of(m);
    const bool advantage = b == Bucket::kDecisiveAdvantage || b == Bucket::kSlightAdvantage;
    if (g.count == 0) {
      g.extreme = p;
    } else {
      g.extreme = advantage ? std::min(g.extreme, p) : std::max(g.extreme, p);
    }
    ++g.count;
    g.any_proven = g.any_proven || (m.solved && m.solved_value != 0.0);
  }
  return out;
}

std::optional<ProvenResult> proven_result_fact(const TurnSnapshot& snap) {
  const MoveStats& sel = snap.selected();
  if (!sel.solved) return std::nullopt;
  ProvenResult r;
  r.move = sel.notation;
  if (sel.solved_value > 0.0) {
    r.outcome = ProvenOutcome::kWin;
  } else if (sel.solved_value < 0.0) {
    r.outcome = ProvenOutcome::kLoss;
  } else {
    r.outcome = ProvenOutcome::kDraw;
  }
  r.turns = (sel.solved_distance_plies + 1) / 2;
  r.pv = snap.principal_variation;
  if (r.outcome != ProvenOutcome::kDraw && sel.solved_distance_plies >= 1) {
    const auto cap = static_cast<size_t>(sel.solved_distance_plies - 1);
    if (r.pv.size() > cap) r.pv.resize(cap);
  }
  return r;
}

PositionAssessment position_assessment(const TurnSnapshot& snap, const ThresholdConfig& cfg) {
  PositionAssessment a;
  const MoveStats& sel = snap.selected();
  a.move = sel.notation;
  a.probability = prob_of(sel);
  a.category = bucket_of(a.probability, cfg);
  double worst = 1.0;
  int counted = 0;
  for (const auto& m : snap.move_stats) {
    if (!estimated(m)) continue;
    worst = std::min(worst, prob_of(m));
    ++counted;
  }
  a.worst_probability = counted > 0 ? worst : a.probability;
  // "Generally" needs alternatives to generalise over.
  a.general_flag = counted >= 2 && worst >= cfg.slight_high - kCompareSlack;
  return a;
}

std::optional<PreviousTurnDelta> previous_turn_delta(const TurnSnapshot& snap, const ThresholdConfig& cfg) {
  if (!snap.previous_turn_score) return std::nullopt;
  const double delta = prob_of(snap.selected()) - to_probability(std::clamp(*snap.previous_turn_score, -1.0, 1.0));
  if (std::abs(delta) < cfg.significance - kCompareSlack) return std::nullopt;
  return PreviousTurnDelta{delta};
}

std::optional<WorseAlternatives> worse_alternatives(const TurnSnapshot& snap, const ThresholdConfig& cfg) {
  if (snap.move_stats.size() < 2) return std::nullopt;
  const double cutoff = prob_of(snap.selected()) - cfg.significance + kCompareSlack;
  WorseAlternatives w;
  for (size_t i = 0; i < snap.move_stats.size(); ++i) {
    const auto& m = snap.move_stats[i];
    if (i == snap.selected_index || !estimated(m)) continue;
    const double p = prob_of(m);
    if (p > cutoff) continue;
    ++w.count;
    if (proven_loss(m)) {
      ++w.proven_defeats;
    } else if (bucket_of(p, cfg) == Bucket::kDecisiveDisadvantage) {
      ++w.likely_defeats;
    }
  }
  // A list of weaker moves says little unless some of them actually lose.
  if (w.count == 0 || w.proven_defeats + w.likely_defeats == 0) return std::nullopt;
  return w;
}

std::optional<std::variant<Margin, WhyNot>> margin_fact(const TurnSnapshot& snap, const ThresholdConfig& cfg) {
  const MoveStats& sel = snap.selected();
  const double p_sel = prob_of(sel);
  const MoveStats* best_other = nullptr;
  int better = 0;
  for (size_t i = 0; i < snap.move_stats.size(); ++i) {
    const auto& m = snap.move_stats[i];
    if (i == snap.selected_index || !estimated(m)) continue;
    const double p = prob_of(m);
    if (p > p_sel + kCompareSlack) ++better;
    if (best_other == nullptr || p > prob_of(*best_other) + kCompareSlack) best_other = &m;
  }
  if (best_other == nullptr) return std::nullopt;
  const double p_best = prob_of(*best_other);
  if (better == 0) {
    Margin mg;
    mg.delta_probability = p_sel - p_best;
    mg.next_best = best_other->notation;
    mg.significant = mg.delta_probability >= cfg.significance - kCompareSlack;
    return mg;
  }
  WhyNot w;
  w.move = sel.notation;
  w.probability = p_sel;
  w.better_count = better;
  w.best = best_other->notation;
  w.advantage = p_best - p_sel;
  w.metric = AttributedMetric::kVisitCount;
  if (snap.features.grave && sel.amaf && best_other->amaf && best_other->amaf->visits > 0) {
    const double d = to_probability(std::clamp(sel.amaf->score, -1.0, 1.0)) -
                     to_probability(std::clamp(best_other->amaf->score, -1.0, 1.0));
    if (d > 0.0) {
      w.metric = AttributedMetric::kAmaf;
      w.metric_delta = d;
      w.metric_significant = d >= cfg.significance - kCompareSlack;
    }
  }
  return w;
}

std::vector<MetricCommentary> metric_commentary(const TurnSnapshot& snap, const ThresholdConfig& cfg) {
  std::vector<MetricCommentary> out;
  const MoveStats& sel = snap.selected();
  for (size_t n = 0; n < sel.ngrams.size(); ++n) {
    const NGramView& own = sel.ngrams[n];
    if (own.visits <= 0) continue;
    const double p_own = to_probability(std::clamp(own.score, -1.0, 1.0));
    int better = 0;
    double min_excess = std::numeric_limits<double>::infinity();
    double best_alt = -1.0;
    for (size_t i = 0; i < snap.move_stats.size(); ++i) {
      const auto& m = snap.move_stats[i];
      if (i == snap.selected_index || m.ngrams.size() <= n || m.ngrams[n].visits <= 0) continue;
      const double p = to_probability(std::clamp(m.ngrams[n].score, -1.0, 1.0));
      best_alt = std::max(best_alt, p);
      if (p - p_own >= cfg.significance - kCompareSlack) {
        ++better;
        min_excess = std::min(min_excess, p - p_own);
      }
    }
    MetricCommentary c;
    c.gram_length = static_cast<int>(n) + 1;
    c.metric = (n == 0 && snap.features.mast) ? std::string("MAST") : "NST(" + std::to_string(n + 1) + ")";
    if (better > 0) {
      c.better_count = better;
      c.magnitude = min_excess;
      out.push_back(std::move(c));
    } else if (best_alt >= 0.0 && p_own - best_alt >= cfg.significance - kCompareSlack) {
      c.dominant = true;
      c.magnitude = p_own;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::optional<PnImbalance> pn_imbalance(const TurnSnapshot& snap, const ThresholdConfig& cfg) {
  if (!snap.root_pn) return std::nullopt;
  const auto [pn, dn] = *snap.root_pn;
  if (pn == 0 || dn == 0 || pn >= kPnInfinity || dn >= kPnInfinity) return std::nullopt;
  const double ratio = static_cast<double>(dn) / static_cast<double>(pn);
  if (ratio >= cfg.pn_ratio || ratio <= 1.0 / cfg.pn_ratio) return PnImbalance{ratio};
  return std::nullopt;
}

std::optional<Forced> forced_fact(const TurnSnapshot& snap) {
  if (!snap.features.solver || snap.move_stats.size() < 2) return std::nullopt;
  const MoveStats& sel = snap.selected();
  if (proven_loss(sel)) return std::nullopt;
  for (size_t i = 0; i < snap.move_stats.size(); ++i) {
    if (i != snap.selected_index && !proven_loss(snap.move_stats[i])) return std::nullopt;
  }
  return Forced{sel.notation};
}

std::vector<ExplanationFact> collect_facts(const TurnSnapshot& snap, const ThresholdConfig& cfg) {
  cfg.validate();
  if (snap.move_stats.empty() || snap.selected_index >= snap.move_stats.size()) {
    throw UsageError("snapshot has no valid selected move");
  }
  std::vector<ExplanationFact> facts;
  facts.emplace_back(bucketize(snap.move_stats, cfg));
  const auto proven = proven_result_fact(snap);
  bool named = false;
  if (proven) {
    facts.emplace_back(*proven);
  } else {
    const auto a = position_assessment(snap, cfg);
    named = !a.general_flag;
    facts.emplace_back(a);
    if (auto d = previous_turn_delta(snap, cfg)) facts.emplace_back(*d);
  }
  if (auto w = worse_alternatives(snap, cfg)) facts.emplace_back(*w);
  if (!proven) {
    if (auto m = margin_fact(snap, cfg)) {
      if (auto* mg = std::get_if<Margin>(&*m)) {
        if (!named) mg->named_move = snap.selected().notation;
        facts.emplace_back(*mg);
      } else {
        facts.emplace_back(std::get<WhyNot>(*m));
      }
    }
  }
  for (auto& c : metric_commentary(snap, cfg)) facts.emplace_back(std::move(c));
  if (!proven) {
    if (auto p = pn_imbalance(snap, cfg)) facts.emplace_back(*p);
  }
  if (auto f = forced_fact(snap)) facts.emplace_back(*f);
  return facts;
}

// ---------------------------------------------------------------------------
// Rendering.

std::string render_move_line(const MoveStats& m) {
  std::vector<std::string> parts;
  parts.push_back("move: " + m.notation);
  parts.push_back("visits: " + std::to_string(m.visits));
  parts.push_back("score: " + format_fixed(m.score, 4));
  if (m.amaf) {
    parts.push_back("AMAF visits: " + std::to_string(m.amaf->visits));
    parts.push_back("AMAF score: " + format_fixed(m.amaf->score, 4));
  }
  for (size_t n = 0; n < m.ngrams.size(); ++n) {
    const std::string label = std::to_string(n + 1) + "-gram";
    parts.push_back(label + " visits: " + std::to_string(m.ngrams[n].visits));
    parts.push_back(label + " score: " + format_fixed(m.ngrams[n].score, 6));
  }
  if (m.solved) {
    const char* word = m.solved_value > 0.0 ? "win" : (m.solved_value < 0.0 ? "loss" : "draw");
    parts.push_back("solved node with score " + format_fixed(m.solved_value, 4) + " (" + word + ")");
  } else if (m.bounds) {
    parts.push_back("pess: " + format_fixed(m.bounds->pess, 4));
    parts.push_back("opt: " + format_fixed(m.bounds->opt, 4));
  }
  return "{" + join(parts, ", ") + "}";
}

std::string render_raw_dump(const TurnSnapshot& snap) {
  std::string out = "Performed " + std::to_string(snap.iterations_performed) + " iterations.";
  if (snap.previous_turn_score) out += " Previous turn score: " + format_fixed(*snap.previous_turn_score, 4) + ".";
  out += "\n";
  if (snap.selected_index < snap.move_stats.size()) {
    out += "Selected node:\n" + render_move_line(snap.selected()) + "\n";
  }
  if (snap.move_stats.size() > 1) {
    out += "Other nodes:\n";
    for (size_t i = 0; i < snap.move_stats.size(); ++i) {
      if (i != snap.selected_index) out += render_move_line(snap.move_stats[i]) + "\n";
    }
  }
  return out;
}

namespace {

std::string bucket_part(const BucketGroup& g, Bucket b) {
  const std::string n = std::to_string(g.count);
  switch (b) {
    case Bucket::kDecisiveAdvantage:
      return n + " with decisive advantage " +
             (g.any_proven ? std::string("(proven win)") : "(above " + format_percent(g.extreme) + ")");
    case Bucket::kSlightAdvantage:
      return n + " with slight advantage (above " + format_percent(g.extreme) + ")";
    case Bucket::kBalanced:
      return n + " balanced (~50%)";
    case Bucket::kSlightDisadvantage:
      return n + " with slight disadvantage (below " + format_percent(g.extreme) + ")";
    case Bucket::kDecisiveDisadvantage:
      return n + " with decisive disadvantage " +
             (g.any_proven ? std::string("(proven loss)") : "(below " + format_percent(g.extreme) + ")");
  }
  return n;
}

struct SentenceVisitor {
  std::vector<std::string> operator()(const BucketSummary& b) const {
    std::vector<std::string> parts;
    for (size_t i = 0; i < b.groups.size(); ++i) {
      if (b.groups[i].count > 0) parts.push_back(bucket_part(b.groups[i], static_cast<Bucket>(i)));
    }
    std::string head = b.total == 1 ? "There is 1 move available" : "There are " + std::to_string(b.total) +
                                                                        " moves available";
    return {head + ": " + join(parts, ", ") + "."};
  }

  std::vector<std::string> operator()(const ProvenResult& r) const {
    std::string first = "Selected move, " + r.move + ", leads to a proven ";
    if (r.outcome == ProvenOutcome::kDraw) {
      first += "draw.";
    } else {
      first += std::string(r.outcome == ProvenOutcome::kWin ? "win" : "loss") + " in " +
               plural(r.turns, "turn", "turns") + ".";
    }
    std::vector<std::string> out{first};
    if (!r.pv.empty()) {
      out.push_back("After we play this move, the most probable sequence of following moves will be: " +
                    join(r.pv, ", ") + ".");
    }
    return out;
  }

  std::vector<std::string> operator()(const PositionAssessment& a) const {
    if (a.general_flag) {
      return {"Our position is generally advantageous (the estimated win probability for the worst of available "
              "moves is " +
              format_percent(a.worst_probability) + ")."};
    }
    return {"Selected move: " + a.move + ".", "Our position is " + category_phrase(a.category) +
                                                  " (estimated win probability: " + format_percent(a.probability) +
                                                  ")."};
  }

  std::vector<std::string> operator()(const PreviousTurnDelta& d) const {
    const bool up = d.delta_probability > 0.0;
    return {std::string("The overall estimation of our position ") + (up ? "improved" : "worsened") +
            " over the previous turn (" + format_percent(std::abs(d.delta_probability)) + " " +
            (up ? "increased" : "decreased") + " win probability)."};
  }

  std::vector<std::string> operator()(const WorseAlternatives& w) const {
    std::vector<std::string> out{std::to_string(w.count) + " of alternative moves are significantly worse."};
    if (w.proven_defeats > 0) {
      out.push_back(w.proven_defeats == 1 ? std::string("1 of them is a proven defeat.")
                                          : std::to_string(w.proven_defeats) + " of them are proven defeats.");
    }
    if (w.likely_defeats > 0) {
      out.push_back(std::to_string(w.likely_defeats) + (w.likely_defeats == 1 ? " of them is" : " of them are") +
                    " highly likely a defeat.");
    }
    return out;
  }

  std::vector<std::string> operator()(const Margin& m) const {
    const std::string subject = m.named_move.empty() ? "The selected move is" : "The selected move, " + m.named_move +
                                                                                    ", is";
    return {subject + (m.significant ? " significantly" : " slightly") + " better than all other options (" +
            format_percent(m.delta_probability) + " increased win probability over the next best option, " +
            m.next_best + ")."};
  }

  std::vector<std::string> operator()(const WhyNot& w) const {
    std::vector<std::string> out{"The selected best move, " + w.move + ", has estimated win probability of " +
                                 format_percent(w.probability) + ", but it was not chosen based on that metric."};
    const bool one = w.better_count == 1;
    if (one) {
      out.push_back("There is one move (" + w.best + ") with higher win probability, which is better by " +
                    format_percent(w.advantage) + ").");
    } else {
      out.push_back("There are " + std::to_string(w.better_count) +
                    " moves with higher win probability (best of them, " + w.best + ", is better by " +
                    format_percent(w.advantage) + ").");
    }
    std::string last = one ? "However, this move has " : "However, these moves have ";
    if (w.metric == AttributedMetric::kAmaf) {
      last += std::string(w.metric_significant ? "significantly" : "slightly") + " worse AMAF " +
              (one ? "score" : "scores") + " (" + format_percent(w.metric_delta) + " worse for " + w.best + ")";
    } else {
      last += "worse visit count";
    }
    out.push_back(last + ", which influenced the result.");
    return out;
  }

  std::vector<std::string> operator()(const MetricCommentary& c) const {
    if (c.dominant) {
      return {"One move (the selected one) is significantly better (at least " + format_percent(c.magnitude) +
              ") than the rest according to the " + c.metric + " metric."};
    }
    return {plural(c.better_count, "move is", "moves are") + " significantly better (at least " +
            format_percent(c.magnitude) + " better) than the selected one according to the " + c.metric + " metric."};
  }

  std::vector<std::string> operator()(const PnImbalance& p) const {
    const bool easier = p.ratio >= 1.0;
    const double k = easier ? p.ratio : 1.0 / p.ratio;
    return {"Proving a win currently looks " + format_ratio(k) + "× " + (easier ? "easier" : "harder") +
            " than refuting it."};
  }

  std::vector<std::string> operator()(const Forced&) const {
    return {"All alternative moves lead to a proven defeat, so the selected move is forced."};
  }
};

}  // namespace

std::vector<std::string> render_fact(const ExplanationFact& fact) { return std::visit(SentenceVisitor{}, fact); }

std::string render_prose(const std::vector<ExplanationFact>& facts, int verbosity, const ThresholdConfig& cfg) {
  if (verbosity <= 0) return {};
  const size_t budget = verbosity == 1 ? static_cast<size_t>(cfg.brief_sentences) : std::numeric_limits<size_t>::max();
  size_t used = 0;
  std::vector<std::string> lines;
  for (const auto& f : facts) {
    if (used >= budget) break;
    auto sentences = render_fact(f);
    if (sentences.size() > budget - used) sentences.resize(budget - used);
    used += sentences.size();
    // The selected-move line and the assessment read as separate lines.
    lines.push_back(join(sentences, std::holds_alternative<PositionAssessment>(f) ? "\n" : " "));
  }
  return join(lines, "\n");
}

ExplanationReport explain(const TurnSnapshot& snap, int verbosity, const ThresholdConfig& cfg) {
  if (verbosity < 0 || verbosity > 2) throw ConfigError("verbosity must be 0, 1 or 2");
  ExplanationReport r;
  r.verbosity = verbosity;
  r.raw_dump = render_raw_dump(snap);
  r.facts = collect_facts(snap, cfg);
  r.prose = render_prose(r.facts, verbosity, cfg);
  return r;
}

}  // namespace xmcts
