#include "xmcts/enhancements.h"

#include <algorithm>
#include <cmath>

#include "xmcts/tree.h"

namespace xmcts {

// ---------------------------------------------------------------------------
// Score bounds.

ScoreBounds ScoreBounds::terminal(const GameOutcome& o) {
  const int score = encode_proven(static_cast<int>(o.utility(PlayerId::kFirst)), 0);
  return {score, score};
}

ScoreBounds ScoreBounds::fresh() { return {shift_ply(-kProvenScale), shift_ply(kProvenScale)}; }

void update_bounds(SearchNode& node) {
  if (auto outcome = node.state.outcome()) {
    node.bounds = ScoreBounds::terminal(*outcome);
    return;
  }
  const PlayerId p = node.mover();
  // An unexpanded move may still turn out to be an immediate win or loss.
  int lo = -kProvenScale;
  int hi = -kProvenScale;
  if (node.unexpanded() > 0) {
    lo = shift_ply(-kProvenScale);
    hi = shift_ply(kProvenScale);
  }
  for (const auto& child : node.children) {
    lo = std::max(lo, shift_ply(child->bounds.lower_for(p)));
    hi = std::max(hi, shift_ply(child->bounds.upper_for(p)));
  }
  if (p == PlayerId::kFirst) {
    node.bounds = {lo, hi};
  } else {
    node.bounds = {-hi, -lo};
  }
}

void bounds_backprop(std::span<SearchNode* const> path) {
  for (auto it = path.rbegin(); it != path.rend(); ++it) update_bounds(**it);
}

std::vector<SearchNode*> solved_filter(const SearchNode& node) {
  const PlayerId p = node.mover();
  std::vector<SearchNode*> open;
  std::vector<SearchNode*> lost;
  for (const auto& child : node.children) {
    if (child->bounds.exact()) continue;
    (child->bounds.upper_for(p) < 0 ? lost : open).push_back(child.get());
  }
  return open.empty() ? lost : open;
}

// ---------------------------------------------------------------------------
// AMAF / GRAVE.

const RewardStat* AmafStats::find(PlayerId p, int move) const {
  auto it = table_.find(key(p, move));
  return it == table_.end() ? nullptr : &it->second;
}

void amaf_update(std::span<SearchNode* const> path, std::span<const PlayedStep> trace, const GameOutcome& outcome) {
  int bound = 0;
  for (const auto& step : trace) bound = std::max(bound, step.move + 1);
  std::vector<std::uint32_t> stamp(static_cast<size_t>(2 * bound), 0);
  for (size_t i = 0; i < path.size() && i < trace.size(); ++i) {
    const auto mark = static_cast<std::uint32_t>(i + 1);
    for (size_t j = i; j < trace.size(); ++j) {
      const auto& step = trace[j];
      auto& seen = stamp[static_cast<size_t>(index(step.player) * bound + step.move)];
      if (seen == mark) continue;
      seen = mark;
      path[i]->amaf.add(step.player, step.move, outcome.utility(step.player));
    }
  }
}

double grave_beta(double amaf_visits, double visits, double bias) {
  const double denom = amaf_visits + visits + bias * amaf_visits * visits;
  return denom > 0.0 ? amaf_visits / denom : 0.0;
}

double grave_value(const SearchNode& child, const SearchNode& node, const SearchNode& ref_node, double bias) {
  const PlayerId p = node.mover();
  const double mean = child.mean(p);
  const RewardStat* amaf = ref_node.amaf.find(p, child.move);
  if (amaf == nullptr || amaf->count == 0) return mean;
  const double beta = grave_beta(static_cast<double>(amaf->count), static_cast<double>(child.visits), bias);
  return (1.0 - beta) * mean + beta * amaf->mean();
}

// ---------------------------------------------------------------------------
// MAST.

const RewardStat& MastTable::stat(PlayerId p, int move) const {
  static const RewardStat kNone;
  const auto& v = stats_[index(p)];
  return move >= 0 && static_cast<size_t>(move) < v.size() ? v[static_cast<size_t>(move)] : kNone;
}

void MastTable::update(std::span<const PlayedStep> trace, const GameOutcome& outcome) {
  for (const auto& step : trace) {
    auto& v = stats_[index(step.player)];
    if (static_cast<size_t>(step.move) >= v.size()) v.resize(static_cast<size_t>(step.move) + 1);
    v[static_cast<size_t>(step.move)].add(outcome.utility(step.player));
  }
}

double MastTable::policy_mean(PlayerId p, int move) const {
  const RewardStat& s = stat(p, move);
  return s.count > 0 ? s.mean() : 1.0;
}

int mast_policy(const GameState& s, const MastTable& table, double temperature, Rng& rng, std::vector<int>& scratch) {
  s.rules().generate_moves(s, scratch);
  thread_local std::vector<double> cumulative;
  cumulative.resize(scratch.size());
  double total = 0.0;
  const PlayerId p = s.to_move();
  for (size_t i = 0; i < scratch.size(); ++i) {
    total += std::exp(table.policy_mean(p, scratch[i]) / temperature);
    cumulative[i] = total;
  }
  const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
  const size_t pick = std::min(static_cast<size_t>(it - cumulative.begin()), scratch.size() - 1);
  return scratch[pick];
}

// ---------------------------------------------------------------------------
// NST.

std::uint64_t NGramTable::key(std::span<const int> gram) {
  std::uint64_t k = 0;
  for (int m : gram) k = (k << 21) | static_cast<std::uint64_t>(m + 1);
  return k;
}

void NGramTable::update(std::span<const PlayedStep> trace, const GameOutcome& outcome,
                        std::span<const PlayedStep> context) {
  std::vector<int> moves;
  moves.reserve(context.size() + trace.size());
  for (const auto& step : context) moves.push_back(step.move);
  for (const auto& step : trace) moves.push_back(step.move);
  const size_t offset = context.size();
  for (size_t i = 0; i < trace.size(); ++i) {
    const PlayerId actor = trace[i].player;
    const double u = outcome.utility(actor);
    auto& uni = unigrams_[index(actor)];
    const auto m = static_cast<size_t>(trace[i].move);
    if (m >= uni.size()) uni.resize(m + 1);
    uni[m].add(u);
    const size_t pos = offset + i;
    for (int n = 2; n <= max_length_; ++n) {
      if (pos + 1 < static_cast<size_t>(n)) break;
      std::span<const int> gram(moves.data() + pos + 1 - static_cast<size_t>(n), static_cast<size_t>(n));
      longer_[index(actor)][key(gram)].add(u);
    }
  }
}

const RewardStat* NGramTable::find(PlayerId p, std::span<const int> gram) const {
  if (gram.empty()) return nullptr;
  if (gram.size() == 1) {
    const auto& uni = unigrams_[index(p)];
    const auto m = static_cast<size_t>(gram[0]);
    return gram[0] >= 0 && m < uni.size() ? &uni[m] : nullptr;
  }
  const auto& map = longer_[index(p)];
  auto it = map.find(key(gram));
  return it == map.end() ? nullptr : &it->second;
}

RewardStat NGramTable::unigram(PlayerId p, int move) const {
  const int gram[1] = {move};
  const RewardStat* s = find(p, gram);
  return s ? *s : RewardStat{};
}

double nst_score(const GameState& s, const NGramTable& table, int move, int threshold) {
  const PlayerId p = s.to_move();
  const RewardStat uni = table.unigram(p, move);
  double sum = uni.count > 0 ? uni.mean() : 1.0;
  int terms = 1;
  const auto recent = s.recent_moves();
  int gram[3];
  for (int n = 2; n <= table.max_length() && static_cast<size_t>(n - 1) <= recent.size(); ++n) {
    for (int k = 0; k < n - 1; ++k) gram[k] = recent[recent.size() - static_cast<size_t>(n - 1 - k)].move;
    gram[n - 1] = move;
    const RewardStat* st = table.find(p, std::span<const int>(gram, static_cast<size_t>(n)));
    if (st != nullptr && st->count >= threshold) {
      sum += st->mean();
      ++terms;
    }
  }
  return sum / terms;
}

int nst_policy(const GameState& s, const NGramTable& table, const EnhancementParams& params, Rng& rng,
               std::vector<int>& scratch) {
  s.rules().generate_moves(s, scratch);
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < params.nst_epsilon) {
    return scratch[std::uniform_int_distribution<size_t>(0, scratch.size() - 1)(rng)];
  }
  int best = scratch.front();
  double best_score = -2.0;
  for (int m : scratch) {
    const double score = nst_score(s, table, m, params.nst_threshold);
    if (score > best_score) {
      best_score = score;
      best = m;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Proof numbers.

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return (a == kPnInfinity || b == kPnInfinity || a > kPnInfinity - b) ? kPnInfinity : a + b;
}

}  // namespace

void update_pn(SearchNode& node, PlayerId objective, bool use_solver) {
  constexpr PnStats kProved{0, kPnInfinity};
  constexpr PnStats kDisproved{kPnInfinity, 0};
  if (auto outcome = node.state.outcome()) {
    node.pn = outcome->utility(objective) > 0 ? kProved : kDisproved;
    return;
  }
  if (use_solver && node.bounds.solved()) {
    node.pn = node.bounds.solved_value(objective) > 0 ? kProved : kDisproved;
    return;
  }
  if (node.children.empty()) {
    node.pn = PnStats{};
    return;
  }
  const bool or_node = node.mover() == objective;
  const auto unexpanded = static_cast<std::uint64_t>(node.unexpanded());
  std::uint64_t min_part = unexpanded > 0 ? 1 : kPnInfinity;
  std::uint64_t sum_part = unexpanded;
  for (const auto& child : node.children) {
    const std::uint64_t to_min = or_node ? child->pn.pn : child->pn.dn;
    const std::uint64_t to_sum = or_node ? child->pn.dn : child->pn.pn;
    min_part = std::min(min_part, to_min);
    sum_part = saturating_add(sum_part, to_sum);
  }
  node.pn = or_node ? PnStats{min_part, sum_part} : PnStats{sum_part, min_part};
}

void pn_update(std::span<SearchNode* const> path, PlayerId objective, bool use_solver) {
  for (auto it = path.rbegin(); it != path.rend(); ++it) update_pn(**it, objective, use_solver);
}

}  // namespace xmcts
