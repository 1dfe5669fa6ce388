#include "chansel/distance.hpp"

#include <cmath>

#include "chansel/errors.hpp"

namespace chansel {

std::vector<ClassPair> enumerate_class_pairs(std::size_t n_classes) {
  std::vector<ClassPair> pairs;
  pairs.reserve(n_classes * (n_classes - 1) / 2);
  for (int a = 0; a + 1 < static_cast<int>(n_classes); ++a) {
    for (int b = a + 1; b < static_cast<int>(n_classes); ++b) {
      pairs.push_back({a, b});
    }
  }
  return pairs;
}

DistanceMatrix build_distance_matrix(const PrototypeSet& ps) {
  if (ps.n_classes < 2) raise(errc::single_class, "distance matrix needs at least two classes");
  DistanceMatrix dm;
  dm.n_channels = ps.n_channels;
  dm.pairs = enumerate_class_pairs(ps.n_classes);
  dm.d.resize(ps.n_channels * dm.pairs.size());
  for (std::size_t c = 0; c < ps.n_channels; ++c) {
    for (std::size_t p = 0; p < dm.pairs.size(); ++p) {
      const auto [a, b] = dm.pairs[p];
      const double* pa =
          ps.proto.data() + (static_cast<std::size_t>(a) * ps.n_channels + c) * ps.series_length;
      const double* pb =
          ps.proto.data() + (static_cast<std::size_t>(b) * ps.n_channels + c) * ps.series_length;
      double sum = 0.0;
      for (std::size_t t = 0; t < ps.series_length; ++t) {
        const double diff = pa[t] - pb[t];
        sum += diff * diff;
      }
      dm.d[c * dm.pairs.size() + p] = std::sqrt(sum);
    }
  }
  return dm;
}

std::vector<double> channel_sums(const DistanceMatrix& dm) {
  std::vector<double> scores(dm.n_channels, 0.0);
  for (std::size_t c = 0; c < dm.n_channels; ++c) {
    for (std::size_t p = 0; p < dm.pairs.size(); ++p) {
      scores[c] += dm.value(c, p);
    }
  }
  return scores;
}

std::string distance_matrix_csv(const DistanceMatrix& dm) {
  std::string out = "channel,classA,classB,distance\n";
  for (std::size_t c = 0; c < dm.n_channels; ++c) {
    for (std::size_t p = 0; p < dm.pairs.size(); ++p) {
      out += std::to_string(c);
      out += ',';
      out += std::to_string(dm.pairs[p].a);
      out += ',';
      out += std::to_string(dm.pairs[p].b);
      out += ',';
      out += format_value(dm.value(c, p));
      out += '\n';
    }
  }
  return out;
}

}  // namespace chansel
