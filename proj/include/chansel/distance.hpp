#pragma once

#include <compare>
#include <string>
#include <vector>

#include "chansel/prototype.hpp"

namespace chansel {

/// Unordered class pair, stored with a < b.
struct ClassPair {
  int a = 0;
  int b = 0;
  auto operator<=>(const ClassPair&) const = default;
};

/// All K*(K-1)/2 pairs in lexicographic order: (0,1), (0,2), ..., (K-2,K-1).
std::vector<ClassPair> enumerate_class_pairs(std::size_t n_classes);

/// Channels x class-pairs table of Euclidean distances between class
/// prototypes. A cell is zero exactly when the two prototypes coincide.
struct DistanceMatrix {
  std::size_t n_channels = 0;
  std::vector<ClassPair> pairs;
  std::vector<double> d;  // [channel][pair]

  double value(std::size_t c, std::size_t p) const { return d[c * pairs.size() + p]; }
};

DistanceMatrix build_distance_matrix(const PrototypeSet& ps);

/// score[c] = sum over pairs of d[c][p], accumulated in ascending pair order.
std::vector<double> channel_sums(const DistanceMatrix& dm);

/// CSV dump, one row per cell: "channel,classA,classB,distance".
std::string distance_matrix_csv(const DistanceMatrix& dm);

}  // namespace chansel
