#include "xmcts/snapshot.h"

#include "xmcts/errors.h"

namespace xmcts {

std::string_view rationale_name(ChoiceRationale r) {
  switch (r) {
    case ChoiceRationale::kProvenWin:
      return "proven_win";
    case ChoiceRationale::kMostVisits:
      return "most_visits";
    case ChoiceRationale::kForcedLoss:
      return "forced_loss";
  }
  return "most_visits";
}

ChoiceRationale parse_rationale(std::string_view name) {
  if (name == "proven_win") return ChoiceRationale::kProvenWin;
  if (name == "most_visits") return ChoiceRationale::kMostVisits;
  if (name == "forced_loss") return ChoiceRationale::kForcedLoss;
  throw ParseError("unknown choice rationale '" + std::string(name) + "'");
}

double effective_score(const MoveStats& m) { return m.solved ? m.solved_value : m.score; }

}  // namespace xmcts
