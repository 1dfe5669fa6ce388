#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chansel/classify.hpp"
#include "chansel/dataset.hpp"
#include "chansel/distance.hpp"
#include "chansel/elbow.hpp"
#include "chansel/prototype.hpp"

namespace chansel {

enum class Strategy { Ecs, Ecp, GreedyForward, All };

/// CLI token: "ecs", "ecp", "greedy" or "all".
Strategy parse_strategy(std::string_view token);
std::string_view strategy_name(Strategy s);  // "ECS", "ECP", "GreedyForward", "All"

struct SelectionConfig {
  Strategy strategy = Strategy::Ecs;
  PrototypeKind prototype_kind = PrototypeKind::Mean;
  bool znormalize = false;
  std::uint64_t seed = 0;  // echoed into results; ECS/ECP are deterministic
  std::string clf = "nn1";  // greedy wrapper classifier
  std::size_t folds = 3;
  std::size_t patience = 1;
  int threads = 1;
};

struct SelectionResult {
  Strategy strategy = Strategy::Ecs;
  std::vector<std::size_t> selected;  // ascending, distinct
  std::vector<double> scores;         // ECS: pair sums; ECP: max over pairs (diagnostic)
  std::vector<std::pair<ClassPair, std::vector<std::size_t>>> per_pair_cuts;  // ECP only
  double elapsed_ms = 0.0;
  PrototypeKind prototype_kind = PrototypeKind::Mean;
  bool znormalized = false;
  std::uint64_t seed = 0;
};

/// Rank channels by the sum of prototype distances over all class pairs and
/// keep everything above the elbow.
SelectionResult ecs_select(const MtsDataset& ds, PrototypeKind kind = PrototypeKind::Mean,
                           bool znorm = false, std::uint64_t seed = 0);

/// Elbow-cut each class-pair column separately and take the union across
/// pairs. A channel kept by a single pair stays in: no frequency filtering.
SelectionResult ecp_select(const MtsDataset& ds, PrototypeKind kind = PrototypeKind::Mean,
                           bool znorm = false, std::uint64_t seed = 0);

/// Wrapper baseline: grow the subset one channel at a time by stratified
/// cross-validated accuracy; stop after `patience`+1 consecutive rounds
/// without improvement and return the best subset seen.
SelectionResult greedy_forward_select(const MtsDataset& ds, const ClassifierSpec& clf,
                                      std::size_t folds, std::size_t patience,
                                      int threads = 1);

SelectionResult select_channels(const MtsDataset& ds, const SelectionConfig& config);

// Elbow stage on a prebuilt distance matrix; exposed for inspection and tests.
ElbowCut ecs_cut(const DistanceMatrix& dm);
SelectionResult ecp_from_matrix(const DistanceMatrix& dm);

std::string selection_to_json(const SelectionResult& result, bool pretty = false);
SelectionResult selection_from_json(std::string_view text);

}  // namespace chansel
