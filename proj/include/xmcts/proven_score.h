#pragma once

// Integer encoding of proven game values that keeps distance information.
//
// A win d plies away scores kProvenScale - d, a loss d plies away scores
// -(kProvenScale - d), a draw scores 0. Larger is better for the player whose
// perspective the score is in, so a shorter win beats a longer one and a
// longer loss beats a shorter one.

#include <cstdlib>

namespace xmcts {

inline constexpr int kProvenScale = 1 << 20;

constexpr int encode_proven(int value, int distance) {
  return value > 0 ? kProvenScale - distance : value < 0 ? -(kProvenScale - distance) : 0;
}

// Score of a child as seen one ply closer to the root.
constexpr int shift_ply(int score) { return score > 0 ? score - 1 : score < 0 ? score + 1 : 0; }

constexpr int proven_value(int score) { return score > 0 ? 1 : score < 0 ? -1 : 0; }

constexpr int proven_distance(int score) { return score == 0 ? 0 : kProvenScale - std::abs(score); }

}  // namespace xmcts
