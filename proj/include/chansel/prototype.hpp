#pragma once

#include <string_view>
#include <vector>

#include "chansel/dataset.hpp"

namespace chansel {

enum class PrototypeKind { Mean, Median };

std::string_view prototype_kind_token(PrototypeKind kind);  // "mean" / "median"
PrototypeKind parse_prototype_kind(std::string_view token);

/// One representative series per (class, channel): the per-time-point mean or
/// median over all class members.
struct PrototypeSet {
  std::size_t n_classes = 0;
  std::size_t n_channels = 0;
  std::size_t series_length = 0;
  PrototypeKind kind = PrototypeKind::Mean;
  std::vector<double> proto;  // [class][channel][time]
  std::vector<std::size_t> class_counts;

  double value(std::size_t k, std::size_t c, std::size_t t) const {
    return proto[(k * n_channels + c) * series_length + t];
  }
};

PrototypeSet compute_prototypes(const MtsDataset& ds,
                                PrototypeKind kind = PrototypeKind::Mean);

/// Rescale every (instance, channel) series to zero mean and unit population
/// standard deviation; series with stddev below 1e-12 become all-zero.
MtsDataset znormalize(const MtsDataset& ds);

}  // namespace chansel
