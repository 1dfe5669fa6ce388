#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chansel/classify.hpp"
#include "chansel/dataset.hpp"
#include "chansel/select.hpp"

namespace chansel {

struct BenchSide {
  double fit_ms = 0.0;
  double predict_ms = 0.0;
  std::uint64_t bytes = 0;
  double accuracy = 0.0;

  bool operator==(const BenchSide&) const = default;
};

/// Headline quantities for one (dataset, strategy, classifier) run: wall-clock
/// cost with and without selection, canonical data sizes, and accuracies.
struct BenchReport {
  std::string dataset_name;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t channels = 0;
  std::size_t length = 0;
  std::size_t classes = 0;
  Strategy strategy = Strategy::Ecs;
  PrototypeKind prototype_kind = PrototypeKind::Mean;
  bool znormalize = false;
  std::string clf;
  int threads = 1;
  std::vector<std::size_t> selected;
  double selection_ms = 0.0;
  BenchSide full;
  BenchSide reduced;
  double time_saved_pct = 0.0;     // counts selection cost against the savings
  double storage_saved_pct = 0.0;  // exactly 1 - |selected| / channels
  std::uint64_t seed = 0;

  bool operator==(const BenchReport&) const = default;
};

/// Full-channel evaluation, selection on the training set only, reduced
/// evaluation. When the selection keeps every channel the reduced run is the
/// full run, so its measurements are carried over as-is.
BenchReport run_benchmark(const MtsDataset& train, const MtsDataset& test,
                          const SelectionConfig& config, const ClassifierSpec& clf,
                          std::uint64_t seed);

std::string bench_report_to_json(const BenchReport& report, bool pretty = false);
BenchReport bench_report_from_json(std::string_view text);

struct SummaryRow {
  std::string strategy;
  std::size_t runs = 0;
  double mean_time_saved_pct = 0.0;
  double mean_storage_saved_pct = 0.0;
  double mean_accuracy_delta = 0.0;  // reduced minus full

  bool operator==(const SummaryRow&) const = default;
};

/// Per-strategy means, in order of first appearance.
std::vector<SummaryRow> summarize(std::span<const BenchReport> reports);

std::string summary_text(std::span<const SummaryRow> rows);
std::string summary_csv(std::span<const SummaryRow> rows);
std::vector<SummaryRow> summary_from_csv(std::string_view text);

}  // namespace chansel
