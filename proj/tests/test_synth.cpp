#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chansel/errors.hpp"
#include "chansel/prototype.hpp"
#include "chansel/synth.hpp"

using chansel::SynthData;
using chansel::SynthSpec;

TEST_CASE("same spec and seed reproduce bitwise") {
  const SynthSpec spec{20, 3, 3, 5, 16, 1.0, 1.5, 123};
  const SynthData a = chansel::generate_synth(spec);
  const SynthData b = chansel::generate_synth(spec);
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  CHECK(a.informative == b.informative);
  // train and test are distinct draws
  CHECK(a.train.values != a.test.values);
}

TEST_CASE("ground truth is sorted with exactly k channels") {
  const SynthSpec spec{50, 7, 2, 4, 10, 1.0, 1.5, 9};
  const SynthData data = chansel::generate_synth(spec);
  CHECK(data.informative.size() == 7);
  CHECK(std::is_sorted(data.informative.begin(), data.informative.end()));
  CHECK(std::adjacent_find(data.informative.begin(), data.informative.end()) ==
        data.informative.end());
  CHECK(data.informative.back() < 50);
  CHECK(data.train.n_instances == 8);
  CHECK(data.train.num_classes() == 2);
}

TEST_CASE("zero effect still generates deterministically") {
  const SynthSpec spec{10, 4, 2, 4, 8, 1.0, 0.0, 5};
  const SynthData a = chansel::generate_synth(spec);
  const SynthData b = chansel::generate_synth(spec);
  CHECK(a.train == b.train);
  CHECK(a.train.n_channels == 10);
  CHECK(a.train.series_length == 8);
}

TEST_CASE("all channels informative at the boundary") {
  const SynthSpec spec{6, 6, 2, 4, 12, 0.5, 1.5, 3};
  const SynthData data = chansel::generate_synth(spec);
  CHECK(data.informative == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("informative prototypes dominate noise prototypes at the default spec") {
  SynthSpec spec;
  spec.seed = 7;
  const SynthData data = chansel::generate_synth(spec);
  const auto ps = chansel::compute_prototypes(data.train);
  std::vector<char> informative(spec.channels, 0);
  for (std::size_t c : data.informative) informative[c] = 1;

  const auto mean_abs = [&](std::size_t k, std::size_t c) {
    double total = 0.0;
    for (std::size_t t = 0; t < ps.series_length; ++t) {
      total += std::fabs(ps.value(k, c, t));
    }
    return total / static_cast<double>(ps.series_length);
  };
  double min_informative = std::numeric_limits<double>::infinity();
  double max_noise = 0.0;
  for (std::size_t k = 0; k < ps.n_classes; ++k) {
    for (std::size_t c = 0; c < ps.n_channels; ++c) {
      const double m = mean_abs(k, c);
      if (informative[c]) {
        min_informative = std::min(min_informative, m);
      } else {
        max_noise = std::max(max_noise, m);
      }
    }
  }
  CHECK(min_informative >= 3.0 * max_noise);
}

TEST_CASE("spec validation") {
  SynthSpec spec;
  spec.informative = 0;
  CHECK_THROWS_AS(chansel::generate_synth(spec), chansel::Error);
  spec = SynthSpec{};
  spec.informative = spec.channels + 1;
  CHECK_THROWS_AS(chansel::generate_synth(spec), chansel::Error);
  spec = SynthSpec{};
  spec.classes = 1;
  CHECK_THROWS_AS(chansel::generate_synth(spec), chansel::Error);
  spec = SynthSpec{};
  spec.noise_sigma = -1.0;
  CHECK_THROWS_AS(chansel::generate_synth(spec), chansel::Error);
}

TEST_CASE("truth JSON lists the channels and the generating spec") {
  const SynthSpec spec{12, 2, 2, 3, 8, 0.7, 1.2, 77};
  const SynthData data = chansel::generate_synth(spec);
  const std::string text = chansel::synth_truth_json(spec, data.informative);
  CHECK(text.find("\"informative\":[") != std::string::npos);
  CHECK(text.find("\"seed\":77") != std::string::npos);
  CHECK(text.find("\"sigma\":0.7") != std::string::npos);
}
