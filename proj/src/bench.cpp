#include "chansel/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "chansel/errors.hpp"
#include "chansel/rng.hpp"

namespace chansel {

namespace {

using json = nlohmann::ordered_json;

}  // namespace

BenchReport run_benchmark(const MtsDataset& train, const MtsDataset& test,
                          const SelectionConfig& config, const ClassifierSpec& clf,
                          std::uint64_t seed) {
  BenchReport report;
  report.dataset_name = train.name;
  report.n_train = train.n_instances;
  report.n_test = test.n_instances;
  report.channels = train.n_channels;
  report.length = train.series_length;
  report.classes = train.num_classes();
  report.strategy = config.strategy;
  report.prototype_kind = config.prototype_kind;
  report.znormalize = config.znormalize;
  report.clf = classifier_token(clf);
  report.threads = config.threads;
  report.seed = seed;

  std::vector<std::size_t> all_channels(train.n_channels);
  std::iota(all_channels.begin(), all_channels.end(), std::size_t{0});
  const EvalResult full = evaluate(train, test, all_channels, clf, config.threads);
  report.full = {full.fit_ms, full.predict_ms, byte_size(train) + byte_size(test),
                 full.accuracy};

  SelectionConfig selection_config = config;
  selection_config.seed = seed;
  const SelectionResult selection = select_channels(train, selection_config);
  report.selected = selection.selected;
  report.selection_ms = selection.elapsed_ms;

  if (selection.selected.size() == train.n_channels) {
    // identity selection: the reduced run is the full run
    report.reduced = report.full;
  } else {
    const EvalResult reduced = evaluate(train, test, selection.selected, clf, config.threads);
    const MtsDataset train_view = restrict_channels(train, selection.selected);
    const MtsDataset test_view = restrict_channels(test, selection.selected);
    report.reduced = {reduced.fit_ms, reduced.predict_ms,
                      byte_size(train_view) + byte_size(test_view), reduced.accuracy};
  }

  report.time_saved_pct =
      1.0 - (report.selection_ms + report.reduced.fit_ms + report.reduced.predict_ms) /
                (report.full.fit_ms + report.full.predict_ms);
  report.storage_saved_pct = 1.0 - static_cast<double>(report.reduced.bytes) /
                                       static_cast<double>(report.full.bytes);
  return report;
}

std::string bench_report_to_json(const BenchReport& report, bool pretty) {
  json j;
  j["dataset"] = {{"name", report.dataset_name}, {"n_train", report.n_train},
                  {"n_test", report.n_test},     {"channels", report.channels},
                  {"length", report.length},     {"classes", report.classes}};
  j["strategy"] = strategy_name(report.strategy);
  j["params"] = {{"prototype_kind", prototype_kind_token(report.prototype_kind)},
                 {"znormalize", report.znormalize},
                 {"clf", report.clf},
                 {"threads", report.threads},
                 {"rng", kRngAlgorithm}};
  j["selected"] = report.selected;
  j["selection_ms"] = report.selection_ms;
  j["full"] = {{"fit_ms", report.full.fit_ms},
               {"predict_ms", report.full.predict_ms},
               {"bytes", report.full.bytes},
               {"accuracy", report.full.accuracy}};
  j["reduced"] = {{"fit_ms", report.reduced.fit_ms},
                  {"predict_ms", report.reduced.predict_ms},
                  {"bytes", report.reduced.bytes},
                  {"accuracy", report.reduced.accuracy}};
  j["time_saved_pct"] = report.time_saved_pct;
  j["storage_saved_pct"] = report.storage_saved_pct;
  j["seed"] = report.seed;
  return j.dump(pretty ? 2 : -1);
}

BenchReport bench_report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(errc::invalid_spec, std::string("bench JSON: ") + e.what());
  }
  try {
    BenchReport report;
    const auto& ds = j.at("dataset");
    report.dataset_name = ds.at("name").get<std::string>();
    report.n_train = ds.at("n_train").get<std::size_t>();
    report.n_test = ds.at("n_test").get<std::size_t>();
    report.channels = ds.at("channels").get<std::size_t>();
    report.length = ds.at("length").get<std::size_t>();
    report.classes = ds.at("classes").get<std::size_t>();
    const std::string strat = j.at("strategy").get<std::string>();
    if (strat == "ECS") report.strategy = Strategy::Ecs;
    else if (strat == "ECP") report.strategy = Strategy::Ecp;
    else if (strat == "GreedyForward") report.strategy = Strategy::GreedyForward;
    else if (strat == "All") report.strategy = Strategy::All;
    else raise(errc::unknown_strategy, "'" + strat + "' in bench JSON");
    const auto& params = j.at("params");
    report.prototype_kind =
        parse_prototype_kind(params.at("prototype_kind").get<std::string>());
    report.znormalize = params.at("znormalize").get<bool>();
    report.clf = params.at("clf").get<std::string>();
    report.threads = params.at("threads").get<int>();
    report.selected = j.at("selected").get<std::vector<std::size_t>>();
    report.selection_ms = j.at("selection_ms").get<double>();
    const auto read_side = [](const json& side) {
      return BenchSide{side.at("fit_ms").get<double>(), side.at("predict_ms").get<double>(),
                       side.at("bytes").get<std::uint64_t>(),
                       side.at("accuracy").get<double>()};
    };
    report.full = read_side(j.at("full"));
    report.reduced = read_side(j.at("reduced"));
    report.time_saved_pct = j.at("time_saved_pct").get<double>();
    report.storage_saved_pct = j.at("storage_saved_pct").get<double>();
    report.seed = j.at("seed").get<std::uint64_t>();
    return report;
  } catch (const json::exception& e) {
    raise(errc::invalid_spec, std::string("bench JSON: ") + e.what());
  }
}

std::vector<SummaryRow> summarize(std::span<const BenchReport> reports) {
  if (reports.empty()) raise(errc::empty_input, "no reports to summarize");
  std::vector<SummaryRow> rows;
  for (const BenchReport& report : reports) {
    const std::string name(strategy_name(report.strategy));
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const SummaryRow& row) { return row.strategy == name; });
    if (it == rows.end()) {
      rows.push_back(SummaryRow{name, 0, 0.0, 0.0, 0.0});
      it = std::prev(rows.end());
    }
    it->runs += 1;
    it->mean_time_saved_pct += report.time_saved_pct;
    it->mean_storage_saved_pct += report.storage_saved_pct;
    it->mean_accuracy_delta += report.reduced.accuracy - report.full.accuracy;
  }
  for (SummaryRow& row : rows) {
    const double inv = 1.0 / static_cast<double>(row.runs);
    row.mean_time_saved_pct *= inv;
    row.mean_storage_saved_pct *= inv;
    row.mean_accuracy_delta *= inv;
  }
  return rows;
}

std::string summary_text(std::span<const SummaryRow> rows) {
  char line[160];
  std::snprintf(line, sizeof(line), "%-14s %5s %12s %15s %10s\n", "strategy", "runs",
                "time_saved%", "storage_saved%", "acc_delta");
  std::string out = line;
  for (const SummaryRow& row : rows) {
    std::snprintf(line, sizeof(line), "%-14s %5zu %12.2f %15.2f %+10.4f\n",
                  row.strategy.c_str(), row.runs, 100.0 * row.mean_time_saved_pct,
                  100.0 * row.mean_storage_saved_pct, row.mean_accuracy_delta);
    out += line;
  }
  return out;
}

std::string summary_csv(std::span<const SummaryRow> rows) {
  std::string out = "strategy,runs,mean_time_saved_pct,mean_storage_saved_pct,mean_accuracy_delta\n";
  for (const SummaryRow& row : rows) {
    out += row.strategy;
    out += ',';
    out += std::to_string(row.runs);
    out += ',';
    out += format_value(row.mean_time_saved_pct);
    out += ',';
    out += format_value(row.mean_storage_saved_pct);
    out += ',';
    out += format_value(row.mean_accuracy_delta);
    out += '\n';
  }
  return out;
}

std::vector<SummaryRow> summary_from_csv(std::string_view text) {
  std::vector<SummaryRow> rows;
  std::size_t start = 0;
  bool saw_header = false;
  while (start < text.size()) {
    std::size_t eol = text.find('\n', start);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(start, eol - start);
    start = eol + 1;
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "strategy,runs,mean_time_saved_pct,mean_storage_saved_pct,mean_accuracy_delta") {
        raise(errc::malformed_header, "unexpected summary CSV header");
      }
      saw_header = true;
      continue;
    }
    SummaryRow row;
    std::size_t field_start = 0;
    std::vector<std::string_view> fields;
    while (true) {
      const std::size_t comma = line.find(',', field_start);
      if (comma == std::string_view::npos) {
        fields.push_back(line.substr(field_start));
        break;
      }
      fields.push_back(line.substr(field_start, comma - field_start));
      field_start = comma + 1;
    }
    if (fields.size() != 5) raise(errc::ragged_data, "summary CSV row needs 5 fields");
    row.strategy = std::string(fields[0]);
    const auto parse_num = [](std::string_view tok, double& out) {
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
      if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        raise(errc::non_finite_value, "'" + std::string(tok) + "' in summary CSV");
      }
    };
    std::size_t runs = 0;
    const auto res = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), runs);
    if (res.ec != std::errc{} || res.ptr != fields[1].data() + fields[1].size()) {
      raise(errc::non_finite_value, "'" + std::string(fields[1]) + "' in summary CSV");
    }
    row.runs = runs;
    parse_num(fields[2], row.mean_time_saved_pct);
    parse_num(fields[3], row.mean_storage_saved_pct);
    parse_num(fields[4], row.mean_accuracy_delta);
    rows.push_back(std::move(row));
  }
  if (!saw_header) raise(errc::malformed_header, "summary CSV is empty");
  return rows;
}

}  // namespace chansel
