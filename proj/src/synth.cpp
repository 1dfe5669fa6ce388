#include "chansel/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "chansel/errors.hpp"
#include "chansel/rng.hpp"

namespace chansel {

namespace {

void validate(const SynthSpec& spec) {
  if (spec.channels == 0) raise(errc::invalid_spec, "need at least one channel");
  if (spec.informative == 0 || spec.informative > spec.channels) {
    raise(errc::invalid_spec, "informative channel count must be in 1..channels");
  }
  if (spec.classes < 2) raise(errc::invalid_spec, "need at least two classes");
  if (spec.per_class == 0) raise(errc::invalid_spec, "need at least one instance per class");
  if (spec.length == 0) raise(errc::invalid_spec, "need at least one time point");
  if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
    raise(errc::invalid_spec, "noise sigma must be finite and non-negative");
  }
  if (!(spec.effect >= 0.0) || !std::isfinite(spec.effect)) {
    raise(errc::invalid_spec, "effect amplitude must be finite and non-negative");
  }
}

}  // namespace

SynthData generate_synth(const SynthSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);

  const auto order = shuffled_indices(spec.channels, rng);
  std::vector<std::size_t> informative(order.begin(),
                                       order.begin() + static_cast<std::ptrdiff_t>(spec.informative));
  std::sort(informative.begin(), informative.end());
  std::vector<char> is_informative(spec.channels, 0);
  for (std::size_t c : informative) is_informative[c] = 1;

  std::vector<std::string> label_names(spec.classes);
  for (std::size_t k = 0; k < spec.classes; ++k) label_names[k] = std::to_string(k);

  const auto draw_split = [&]() {
    const std::size_t n = spec.classes * spec.per_class;
    std::vector<double> values;
    values.reserve(n * spec.channels * spec.length);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t y = i / spec.per_class;
      labels[i] = static_cast<int>(y);
      for (std::size_t c = 0; c < spec.channels; ++c) {
        const double freq = 1.0 + static_cast<double>(y) + static_cast<double>(c % 3);
        const double phase = static_cast<double>(y) * std::numbers::pi /
                             static_cast<double>(spec.classes);
        for (std::size_t t = 0; t < spec.length; ++t) {
          double v = rng.gaussian(0.0, spec.noise_sigma);
          if (is_informative[c]) {
            v += spec.effect * std::sin(2.0 * std::numbers::pi * freq *
                                            static_cast<double>(t) /
                                            static_cast<double>(spec.length) +
                                        phase);
          }
          values.push_back(v);
        }
      }
    }
    return MtsDataset::make("synth", n, spec.channels, spec.length, std::move(values),
                            std::move(labels), label_names);
  };

  SynthData data;
  data.train = draw_split();
  data.test = draw_split();
  data.informative = std::move(informative);
  return data;
}

std::string synth_truth_json(const SynthSpec& spec,
                             const std::vector<std::size_t>& informative, bool pretty) {
  nlohmann::ordered_json j;
  j["informative"] = informative;
  j["spec"] = {{"channels", spec.channels}, {"informative", spec.informative},
               {"classes", spec.classes},   {"per_class", spec.per_class},
               {"length", spec.length},     {"sigma", spec.noise_sigma},
               {"effect", spec.effect},     {"seed", spec.seed}};
  return j.dump(pretty ? 2 : -1);
}

}  // namespace chansel
