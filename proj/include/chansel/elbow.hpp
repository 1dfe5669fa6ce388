#pragma once

#include <span>
#include <vector>

namespace chansel {

/// Cut of a sorted-descending score curve. `selected` is always the first
/// `knee_rank` entries of `ranked_channels` and is never empty.
struct ElbowCut {
  std::vector<std::size_t> ranked_channels;  // score descending, ties by index
  std::size_t knee_rank = 0;                 // 1-based; == selected.size()
  std::vector<std::size_t> selected;         // prefix of ranked_channels
};

/// Find the elbow of the score curve. Channels are ranked by score descending
/// (ties broken by ascending index) and the curve's corner is located by the
/// largest distance to the chord joining the first and last ranked points;
/// when that farthest point falls below the chord (the far side of a drop),
/// the cut is placed just before it. Flat curves and curves with at most two
/// points carry no evidence of a corner, so every channel is kept.
ElbowCut elbow_cut(std::span<const double> scores);

}  // namespace chansel
