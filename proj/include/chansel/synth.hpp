#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chansel/dataset.hpp"

namespace chansel {

/// Synthetic generator: a handful of informative channels carry a
/// class-coded sinusoid, everything else is pure Gaussian noise. The
/// informative set is drawn by a seeded shuffle and returned as ground truth.
struct SynthSpec {
  std::size_t channels = 120;
  std::size_t informative = 5;
  std::size_t classes = 3;
  std::size_t per_class = 20;  // train instances per class; test uses the same
  std::size_t length = 100;
  double noise_sigma = 1.0;
  double effect = 1.5;
  std::uint64_t seed = 0;
};

struct SynthData {
  MtsDataset train;
  MtsDataset test;
  std::vector<std::size_t> informative;  // sorted ground truth
};

SynthData generate_synth(const SynthSpec& spec);

/// {"informative": [...], "spec": {...}} ground-truth document.
std::string synth_truth_json(const SynthSpec& spec,
                             const std::vector<std::size_t>& informative,
                             bool pretty = false);

}  // namespace chansel
