#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chansel {

/// Equal-length multivariate time series dataset. Values are stored as one
/// contiguous [instance][channel][time] block; labels are dense ids into
/// `label_names`. Instances are immutable after construction: build through
/// `make`, which validates every invariant (finite values, consistent shape,
/// complete label coverage) and refuses to return a partially valid dataset.
struct MtsDataset {
  std::string name;
  std::size_t n_instances = 0;
  std::size_t n_channels = 0;
  std::size_t series_length = 0;
  std::vector<double> values;              // n_instances * n_channels * series_length
  std::vector<int> labels;                 // per instance, 0..K-1
  std::vector<std::string> label_names;    // K distinct tokens
  std::vector<std::string> channel_names;  // empty, or exactly n_channels entries

  static MtsDataset make(std::string name, std::size_t n_instances,
                         std::size_t n_channels, std::size_t series_length,
                         std::vector<double> values, std::vector<int> labels,
                         std::vector<std::string> label_names,
                         std::vector<std::string> channel_names = {});

  double value(std::size_t n, std::size_t c, std::size_t t) const {
    return values[(n * n_channels + c) * series_length + t];
  }

  std::size_t num_classes() const { return label_names.size(); }

  bool operator==(const MtsDataset&) const = default;
};

/// Shortest decimal representation that parses back to the same double; keeps
/// a trailing ".0" on integral values so a value never reads as an integer.
std::string format_value(double v);

MtsDataset parse_archive_string(std::string_view text,
                                std::string fallback_name = "unnamed");
MtsDataset parse_archive_file(const std::filesystem::path& path);

std::string to_archive_string(const MtsDataset& ds);
void write_archive_file(const MtsDataset& ds, const std::filesystem::path& path);

/// Materialize the subset view: output channel i is input channel channels[i].
MtsDataset restrict_channels(const MtsDataset& ds,
                             std::span<const std::size_t> channels);

/// Canonical in-memory size: 8 bytes per value, independent of file encoding.
std::uint64_t byte_size(const MtsDataset& ds);

// Long-format CSV interchange: a values file with columns
// instance,channel,time,value and a labels file with columns instance,label.
void write_csv_files(const MtsDataset& ds, const std::filesystem::path& values_path,
                     const std::filesystem::path& labels_path);
MtsDataset read_csv_files(const std::filesystem::path& values_path,
                          const std::filesystem::path& labels_path,
                          std::string name = "csv");

}  // namespace chansel
