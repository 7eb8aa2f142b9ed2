#pragma once

// Frozen per-turn record of a search, consumed by the explanation layer.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xmcts/enhancements.h"
#include "xmcts/game.h"

namespace xmcts {

enum class ChoiceRationale {
  kProvenWin,    // a child was proven winning
  kMostVisits,   // robust child
  kForcedLoss,   // every visited child is proven lost
};

std::string_view rationale_name(ChoiceRationale r);
ChoiceRationale parse_rationale(std::string_view name);

struct AmafView {
  std::int64_t visits = 0;
  double score = 0.0;
  friend bool operator==(const AmafView&, const AmafView&) = default;
};

struct NGramView {
  std::int64_t visits = 0;
  double score = 0.0;
  friend bool operator==(const NGramView&, const NGramView&) = default;
};

struct BoundsView {
  double pess = -1.0;
  double opt = 1.0;
  friend bool operator==(const BoundsView&, const BoundsView&) = default;
};

struct PnView {
  std::uint64_t pn = 1;
  std::uint64_t dn = 1;
  friend bool operator==(const PnView&, const PnView&) = default;
};

// Statistics of one root move. All scores are means in [-1, +1] from the
// perspective of the player who searched.
struct MoveStats {
  std::string notation;
  std::int64_t visits = 0;
  double score = 0.0;
  std::optional<AmafView> amaf;
  std::vector<NGramView> ngrams;  // ngrams[n - 1]
  std::optional<BoundsView> bounds;
  bool solved = false;
  double solved_value = 0.0;
  int solved_distance_plies = 0;  // counted from the root, including this move
  std::optional<PnView> pn;
  friend bool operator==(const MoveStats&, const MoveStats&) = default;
};

// Score used for ranking: the proven value when solved, else the mean.
double effective_score(const MoveStats& m);

struct TurnSnapshot {
  std::string game;
  PlayerId mover = PlayerId::kFirst;
  std::int64_t iterations_performed = 0;
  std::optional<double> previous_turn_score;
  std::vector<MoveStats> move_stats;
  std::size_t selected_index = 0;
  ChoiceRationale rationale = ChoiceRationale::kMostVisits;
  std::vector<std::string> principal_variation;  // plies after the selected move
  EnhancementFlags features;
  std::optional<PnView> root_pn;

  const MoveStats& selected() const { return move_stats.at(selected_index); }
  friend bool operator==(const TurnSnapshot&, const TurnSnapshot&) = default;
};

}  // namespace xmcts
