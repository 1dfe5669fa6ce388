#include "chansel/elbow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chansel/errors.hpp"

namespace chansel {

ElbowCut elbow_cut(std::span<const double> scores) {
  if (scores.empty()) raise(errc::empty_scores, "no scores to cut");
  for (double s : scores) {
    if (!std::isfinite(s)) raise(errc::non_finite_score, "scores must be finite");
  }
  const std::size_t c = scores.size();

  ElbowCut cut;
  cut.ranked_channels.resize(c);
  std::iota(cut.ranked_channels.begin(), cut.ranked_channels.end(), std::size_t{0});
  std::sort(cut.ranked_channels.begin(), cut.ranked_channels.end(),
            [&](std::size_t lhs, std::size_t rhs) {
              if (scores[lhs] != scores[rhs]) return scores[lhs] > scores[rhs];
              return lhs < rhs;
            });
  const auto ranked = [&](std::size_t rank) { return scores[cut.ranked_channels[rank]]; };

  const double top = ranked(0);
  const double bottom = ranked(c - 1);
  if (c <= 2 || top == bottom) {
    cut.knee_rank = c;
  } else {
    // Signed offset from the chord through the first and last ranked points,
    // scaled by the common positive factor (c-1): positive above, negative
    // below. The scaling drops out of the argmax.
    const double span = static_cast<double>(c - 1);
    double best_abs = -1.0;
    double best_signed = 0.0;
    std::size_t best_rank = 0;
    for (std::size_t i = 0; i < c; ++i) {
      const double offset =
          span * (ranked(i) - top) - (bottom - top) * static_cast<double>(i);
      if (std::abs(offset) > best_abs) {
        best_abs = std::abs(offset);
        best_signed = offset;
        best_rank = i;
      }
    }
    cut.knee_rank = best_rank + 1;
    // a farthest point under the chord is the far side of the drop: cut before it
    if (best_signed < 0.0) cut.knee_rank -= 1;
  }
  cut.selected.assign(cut.ranked_channels.begin(),
                      cut.ranked_channels.begin() + static_cast<std::ptrdiff_t>(cut.knee_rank));
  return cut;
}

}  // namespace chansel
