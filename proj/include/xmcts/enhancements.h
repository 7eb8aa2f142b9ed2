#pragma once

// Knowledge-free MCTS enhancements: score-bounded solver, MAST, NST,
// GRAVE (AMAF statistics) and a passive proof-number layer. Each keeps the
// statistics that the explanation layer reads back out.

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "xmcts/game.h"
#include "xmcts/proven_score.h"

namespace xmcts {

struct SearchNode;

struct EnhancementFlags {
  bool solver = false;
  bool mast = false;
  bool nst = false;
  bool grave = false;
  bool pn = false;
  friend bool operator==(const EnhancementFlags&, const EnhancementFlags&) = default;
};

struct EnhancementParams {
  double mast_temperature = 1.0;
  int nst_max_length = 3;
  int nst_threshold = 7;
  double nst_epsilon = 0.1;
  // Longest n-gram printed in the raw statistics dump.
  int nst_dump_length = 2;
  int grave_ref_threshold = 100;
  double grave_bias = 1e-6;
  friend bool operator==(const EnhancementParams&, const EnhancementParams&) = default;
};

// Running mean of utilities in [-1, +1].
struct RewardStat {
  std::int64_t count = 0;
  double sum = 0.0;
  double mean() const { return count > 0 ? sum / static_cast<double>(count) : 0.0; }
  void add(double utility) {
    ++count;
    sum += utility;
  }
  friend bool operator==(const RewardStat&, const RewardStat&) = default;
};

// ---------------------------------------------------------------------------
// Score bounds.

// Pessimistic/optimistic bounds on a node's proven value, stored in the
// distance-aware encoding of proven_score.h from the first player's side.
struct ScoreBounds {
  int lower = -kProvenScale;
  int upper = kProvenScale;

  // Value and distance are both proven.
  bool exact() const { return lower == upper; }
  // The game-theoretic value is proven (distance may still be a bound).
  bool solved() const { return lower > 0 || upper < 0 || (lower == 0 && upper == 0); }

  // Bounds seen by `p`, in the encoded scale.
  int lower_for(PlayerId p) const { return p == PlayerId::kFirst ? lower : -upper; }
  int upper_for(PlayerId p) const { return p == PlayerId::kFirst ? upper : -lower; }

  double pess(PlayerId p) const { return proven_value(lower_for(p)); }
  double opt(PlayerId p) const { return proven_value(upper_for(p)); }
  // Defined when solved().
  double solved_value(PlayerId p) const { return proven_value(lower_for(p)); }
  // Plies to the end of the game guaranteed by the pessimistic bound; exact
  // when exact(). 0 for draws.
  int solved_distance() const { return proven_distance(lower); }

  static ScoreBounds terminal(const GameOutcome& o);
  // Non-terminal node whose children are not materialised yet.
  static ScoreBounds fresh();
  friend bool operator==(const ScoreBounds&, const ScoreBounds&) = default;
};

// Recomputes bounds bottom-up along a root-to-leaf path.
void bounds_backprop(std::span<SearchNode* const> path);
// Recomputes the bounds of a single node from its children.
void update_bounds(SearchNode& node);

// Children eligible for exploration under the solver: exact-solved children
// are dropped, and children proven lost for the mover are dropped unless
// nothing else is left. The result keeps child order.
std::vector<SearchNode*> solved_filter(const SearchNode& node);

// ---------------------------------------------------------------------------
// AMAF / GRAVE.

// Per node: statistics of moves played after the node in the same iteration,
// keyed by (acting player, move), valued with the acting player's utility.
class AmafStats {
 public:
  const RewardStat* find(PlayerId p, int move) const;
  void add(PlayerId p, int move, double utility) { table_[key(p, move)].add(utility); }
  std::size_t size() const { return table_.size(); }

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [k, stat] : table_) f(player_from_index(static_cast<int>(k >> 24)), static_cast<int>(k & 0xFFFFFF), stat);
  }

 private:
  static std::uint32_t key(PlayerId p, int move) {
    return (static_cast<std::uint32_t>(index(p)) << 24) | static_cast<std::uint32_t>(move);
  }
  std::unordered_map<std::uint32_t, RewardStat> table_;
};

struct PlayedStep {
  PlayerId player;
  int move;
};

// For each node on the path, records every later move of the iteration
// (the path move below the node, deeper path moves and the playout) once per
// (player, move). path[i] is the node before trace[i].
void amaf_update(std::span<SearchNode* const> path, std::span<const PlayedStep> trace, const GameOutcome& outcome);

// GRAVE mixing weight beta = amaf_n / (amaf_n + n + bias * amaf_n * n).
double grave_beta(double amaf_visits, double visits, double bias);

// Exploitation term of `child` for the player to move at `node`, blending the
// child's mean with the AMAF mean stored at `ref_node`.
double grave_value(const SearchNode& child, const SearchNode& node, const SearchNode& ref_node, double bias);

// ---------------------------------------------------------------------------
// MAST and NST tables.

class MastTable {
 public:
  const RewardStat& stat(PlayerId p, int move) const;
  void update(std::span<const PlayedStep> trace, const GameOutcome& outcome);
  // Mean used by the playout policy: unseen moves count as +1.
  double policy_mean(PlayerId p, int move) const;
  friend bool operator==(const MastTable&, const MastTable&) = default;

 private:
  std::array<std::vector<RewardStat>, 2> stats_;
};

// n-gram statistics for n in [1, max_length]. The gram ending at trace
// position i consists of the moves at i-n+1..i and is credited with the
// utility of the player acting at i. Grams may reach back into `context`
// (moves played before the trace) but only grams ending inside the trace are
// updated.
class NGramTable {
 public:
  explicit NGramTable(int max_length = 3) : max_length_(max_length) {}

  int max_length() const { return max_length_; }
  void update(std::span<const PlayedStep> trace, const GameOutcome& outcome, std::span<const PlayedStep> context = {});

  // `gram` is oldest move first; the last entry is the move played by `p`.
  const RewardStat* find(PlayerId p, std::span<const int> gram) const;
  RewardStat unigram(PlayerId p, int move) const;

 private:
  static std::uint64_t key(std::span<const int> gram);

  int max_length_;
  std::array<std::vector<RewardStat>, 2> unigrams_;
  std::array<std::unordered_map<std::uint64_t, RewardStat>, 2> longer_;
};

// Tables that live for a whole game and are shared by all searches of one
// engine.
struct EnhancementTables {
  MastTable mast;
  NGramTable nst;
};

using Rng = std::mt19937_64;

// Gibbs sampling over the legal moves with weights exp(mean / temperature).
int mast_policy(const GameState& s, const MastTable& table, double temperature, Rng& rng, std::vector<int>& scratch);

// Epsilon-greedy over the NST score: the mean of the candidate's 1-gram and
// of every longer gram (formed with the last moves before it) whose count
// reaches the threshold.
int nst_policy(const GameState& s, const NGramTable& table, const EnhancementParams& params, Rng& rng,
               std::vector<int>& scratch);
double nst_score(const GameState& s, const NGramTable& table, int move, int threshold);

// ---------------------------------------------------------------------------
// Proof numbers.

inline constexpr std::uint64_t kPnInfinity = std::numeric_limits<std::uint64_t>::max();

// Proof/disproof numbers for the objective "the search root's player wins".
struct PnStats {
  std::uint64_t pn = 1;
  std::uint64_t dn = 1;
  friend bool operator==(const PnStats&, const PnStats&) = default;
};

// Recomputes proof numbers bottom-up along the path. OR nodes are those where
// `objective` moves. When `use_solver` is set, value-proven nodes are treated
// as proved/disproved.
void pn_update(std::span<SearchNode* const> path, PlayerId objective, bool use_solver);
void update_pn(SearchNode& node, PlayerId objective, bool use_solver);

}  // namespace xmcts
