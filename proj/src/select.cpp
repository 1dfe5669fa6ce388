#include "chansel/select.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include <json.hpp>

#include "chansel/errors.hpp"

namespace chansel {

namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::ordered_json;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<std::size_t> sorted_copy(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Strategy parse_strategy(std::string_view token) {
  if (token == "ecs") return Strategy::Ecs;
  if (token == "ecp") return Strategy::Ecp;
  if (token == "greedy") return Strategy::GreedyForward;
  if (token == "all") return Strategy::All;
  raise(errc::unknown_strategy,
        "'" + std::string(token) + "' (expected ecs, ecp, greedy or all)");
}

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Ecs: return "ECS";
    case Strategy::Ecp: return "ECP";
    case Strategy::GreedyForward: return "GreedyForward";
    case Strategy::All: return "All";
  }
  return "ECS";
}

ElbowCut ecs_cut(const DistanceMatrix& dm) {
  const std::vector<double> scores = channel_sums(dm);
  return elbow_cut(scores);
}

SelectionResult ecp_from_matrix(const DistanceMatrix& dm) {
  SelectionResult result;
  result.strategy = Strategy::Ecp;
  result.scores.assign(dm.n_channels, 0.0);
  std::set<std::size_t> chosen;
  std::vector<double> column(dm.n_channels);
  for (std::size_t p = 0; p < dm.pairs.size(); ++p) {
    for (std::size_t c = 0; c < dm.n_channels; ++c) {
      column[c] = dm.value(c, p);
      result.scores[c] = std::max(result.scores[c], column[c]);
    }
    const ElbowCut cut = elbow_cut(column);
    std::vector<std::size_t> picked = sorted_copy(cut.selected);
    chosen.insert(picked.begin(), picked.end());
    result.per_pair_cuts.emplace_back(dm.pairs[p], std::move(picked));
  }
  result.selected.assign(chosen.begin(), chosen.end());
  return result;
}

SelectionResult ecs_select(const MtsDataset& ds, PrototypeKind kind, bool znorm,
                           std::uint64_t seed) {
  const auto t0 = Clock::now();
  MtsDataset normalized;
  if (znorm) normalized = znormalize(ds);
  const MtsDataset& input = znorm ? normalized : ds;
  const PrototypeSet ps = compute_prototypes(input, kind);
  const DistanceMatrix dm = build_distance_matrix(ps);
  SelectionResult result;
  result.strategy = Strategy::Ecs;
  result.scores = channel_sums(dm);
  result.selected = sorted_copy(elbow_cut(result.scores).selected);
  result.prototype_kind = kind;
  result.znormalized = znorm;
  result.seed = seed;
  result.elapsed_ms = ms_since(t0);
  return result;
}

SelectionResult ecp_select(const MtsDataset& ds, PrototypeKind kind, bool znorm,
                           std::uint64_t seed) {
  const auto t0 = Clock::now();
  MtsDataset normalized;
  if (znorm) normalized = znormalize(ds);
  const MtsDataset& input = znorm ? normalized : ds;
  const PrototypeSet ps = compute_prototypes(input, kind);
  const DistanceMatrix dm = build_distance_matrix(ps);
  SelectionResult result = ecp_from_matrix(dm);
  result.prototype_kind = kind;
  result.znormalized = znorm;
  result.seed = seed;
  result.elapsed_ms = ms_since(t0);
  return result;
}

SelectionResult greedy_forward_select(const MtsDataset& ds, const ClassifierSpec& clf,
                                      std::size_t folds, std::size_t patience,
                                      int threads) {
  if (ds.num_classes() < 2) raise(errc::single_class, "selection needs at least two classes");
  if (folds < 2) raise(errc::invalid_spec, "greedy selection needs at least two folds");
  std::vector<std::size_t> class_counts(ds.num_classes(), 0);
  for (int lbl : ds.labels) ++class_counts[static_cast<std::size_t>(lbl)];
  for (std::size_t cls = 0; cls < class_counts.size(); ++cls) {
    if (class_counts[cls] < folds) {
      raise(errc::insufficient_instances,
            "class '" + ds.label_names[cls] + "' has " + std::to_string(class_counts[cls]) +
                " instances, need at least " + std::to_string(folds));
    }
  }
  const auto t0 = Clock::now();
  const auto fold_of = stratified_fold_assignment(ds.labels, ds.num_classes(), folds);

  // cross-validated accuracy of a channel subset under the wrapped classifier
  const auto cv_accuracy = [&](const std::vector<std::size_t>& subset) {
    const MtsDataset view = restrict_channels(ds, subset);
    std::size_t correct = 0;
    for (std::size_t f = 0; f < folds; ++f) {
      std::vector<double> train_values, test_values;
      std::vector<int> train_labels, test_labels;
      std::vector<std::size_t> test_rows;
      const std::size_t width = view.n_channels * view.series_length;
      for (std::size_t n = 0; n < view.n_instances; ++n) {
        auto& dst_values = fold_of[n] == f ? test_values : train_values;
        auto& dst_labels = fold_of[n] == f ? test_labels : train_labels;
        dst_values.insert(dst_values.end(), view.values.begin() + static_cast<std::ptrdiff_t>(n * width),
                          view.values.begin() + static_cast<std::ptrdiff_t>((n + 1) * width));
        dst_labels.push_back(view.labels[n]);
      }
      if (test_labels.empty() || train_labels.empty()) continue;
      // fold slices keep the full vocabulary; a fold may miss a class, so
      // they are assembled directly instead of going through make()
      MtsDataset train;
      train.name = view.name;
      train.n_instances = train_labels.size();
      train.n_channels = view.n_channels;
      train.series_length = view.series_length;
      train.values = std::move(train_values);
      train.labels = std::move(train_labels);
      train.label_names = view.label_names;
      MtsDataset test;
      test.name = view.name;
      test.n_instances = test_labels.size();
      test.n_channels = view.n_channels;
      test.series_length = view.series_length;
      test.values = std::move(test_values);
      test.labels = std::move(test_labels);
      test.label_names = view.label_names;

      std::vector<int> preds;
      if (clf.kind == ClassifierSpec::Kind::Nn1) {
        preds = nn1_predict(nn1_fit(train), test, threads);
      } else {
        preds = rocket_predict(rocket_fit(train, clf.kernel_count, clf.seed, threads), test,
                               threads);
      }
      for (std::size_t i = 0; i < preds.size(); ++i) correct += preds[i] == test.labels[i];
    }
    return static_cast<double>(correct) / static_cast<double>(ds.n_instances);
  };

  SelectionResult result;
  result.strategy = Strategy::GreedyForward;
  result.scores.assign(ds.n_channels, 0.0);

  std::vector<std::size_t> current;
  std::vector<std::size_t> best_subset;
  double best_accuracy = -1.0;
  std::vector<char> used(ds.n_channels, 0);
  std::size_t stale_rounds = 0;

  while (current.size() < ds.n_channels) {
    double round_best = -1.0;
    std::size_t round_channel = ds.n_channels;
    for (std::size_t c = 0; c < ds.n_channels; ++c) {
      if (used[c]) continue;
      std::vector<std::size_t> candidate = current;
      candidate.push_back(c);
      const double acc = cv_accuracy(candidate);
      if (acc > round_best) {
        round_best = acc;
        round_channel = c;
      }
    }
    current.push_back(round_channel);
    used[round_channel] = 1;
    result.scores[round_channel] = round_best;
    if (round_best > best_accuracy) {
      best_accuracy = round_best;
      best_subset = current;
      stale_rounds = 0;
    } else {
      ++stale_rounds;
      if (stale_rounds > patience) break;
    }
  }

  result.selected = sorted_copy(best_subset);
  result.elapsed_ms = ms_since(t0);
  return result;
}

SelectionResult select_channels(const MtsDataset& ds, const SelectionConfig& config) {
  switch (config.strategy) {
    case Strategy::Ecs:
      return ecs_select(ds, config.prototype_kind, config.znormalize, config.seed);
    case Strategy::Ecp:
      return ecp_select(ds, config.prototype_kind, config.znormalize, config.seed);
    case Strategy::GreedyForward: {
      MtsDataset normalized;
      if (config.znormalize) normalized = znormalize(ds);
      const MtsDataset& input = config.znormalize ? normalized : ds;
      SelectionResult result =
          greedy_forward_select(input, parse_classifier_spec(config.clf), config.folds,
                                config.patience, config.threads);
      result.prototype_kind = config.prototype_kind;
      result.znormalized = config.znormalize;
      result.seed = config.seed;
      return result;
    }
    case Strategy::All: {
      const auto t0 = Clock::now();
      SelectionResult result;
      result.strategy = Strategy::All;
      result.selected.resize(ds.n_channels);
      std::iota(result.selected.begin(), result.selected.end(), std::size_t{0});
      result.scores.assign(ds.n_channels, 0.0);
      result.prototype_kind = config.prototype_kind;
      result.znormalized = config.znormalize;
      result.seed = config.seed;
      result.elapsed_ms = ms_since(t0);
      return result;
    }
  }
  raise(errc::unknown_strategy, "unhandled strategy");
}

std::string selection_to_json(const SelectionResult& result, bool pretty) {
  json j;
  j["strategy"] = strategy_name(result.strategy);
  j["selected"] = result.selected;
  j["scores"] = result.scores;
  json cuts = json::object();
  for (const auto& [pair, channels] : result.per_pair_cuts) {
    cuts[std::to_string(pair.a) + "-" + std::to_string(pair.b)] = channels;
  }
  j["per_pair_cuts"] = std::move(cuts);
  j["elapsed_ms"] = result.elapsed_ms;
  j["params"] = {{"prototype_kind", prototype_kind_token(result.prototype_kind)},
                 {"znormalize", result.znormalized},
                 {"seed", result.seed}};
  return j.dump(pretty ? 2 : -1);
}

SelectionResult selection_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(errc::invalid_spec, std::string("selection JSON: ") + e.what());
  }
  try {
    SelectionResult result;
    const std::string strat = j.at("strategy").get<std::string>();
    if (strat == "ECS") result.strategy = Strategy::Ecs;
    else if (strat == "ECP") result.strategy = Strategy::Ecp;
    else if (strat == "GreedyForward") result.strategy = Strategy::GreedyForward;
    else if (strat == "All") result.strategy = Strategy::All;
    else raise(errc::unknown_strategy, "'" + strat + "' in selection JSON");
    result.selected = j.at("selected").get<std::vector<std::size_t>>();
    result.scores = j.at("scores").get<std::vector<double>>();
    for (const auto& [key, value] : j.at("per_pair_cuts").items()) {
      const std::size_t dash = key.find('-');
      if (dash == std::string::npos) raise(errc::invalid_spec, "bad pair key '" + key + "'");
      ClassPair pair{std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1))};
      result.per_pair_cuts.emplace_back(pair, value.get<std::vector<std::size_t>>());
    }
    result.elapsed_ms = j.at("elapsed_ms").get<double>();
    const auto& params = j.at("params");
    result.prototype_kind =
        parse_prototype_kind(params.at("prototype_kind").get<std::string>());
    result.znormalized = params.at("znormalize").get<bool>();
    result.seed = params.at("seed").get<std::uint64_t>();
    return result;
  } catch (const json::exception& e) {
    raise(errc::invalid_spec, std::string("selection JSON: ") + e.what());
  }
}

}  // namespace chansel
