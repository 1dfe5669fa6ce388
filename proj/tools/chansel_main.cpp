// chansel: prototype-distance channel selection for multivariate time series.
// JSON and CSV payloads go to stdout; diagnostics go to stderr. Exit codes:
// 0 success, 2 unreadable or malformed input, 3 domain error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chansel/bench.hpp"
#include "chansel/classify.hpp"
#include "chansel/dataset.hpp"
#include "chansel/distance.hpp"
#include "chansel/errors.hpp"
#include "chansel/select.hpp"
#include "chansel/synth.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string in_path;
  std::string test_path;
  std::string out_path;
  std::string strategy = "ecs";
  std::string prototype = "mean";
  bool znorm = false;
  std::string clf = "nn1";
  std::uint64_t seed = 0;
  int threads = 1;
  bool pretty = false;
  std::string selection_path;  // restrict: positional, stdin when absent
  chansel::SynthSpec synth;
};

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) chansel::raise(chansel::errc::io_failure, "cannot open '" + out_path + "' for writing");
  out << payload;
  if (payload.empty() || payload.back() != '\n') out << '\n';
  if (!out) chansel::raise(chansel::errc::io_failure, "write error on '" + out_path + "'");
}

std::string read_selection_source(const std::string& path) {
  if (path.empty()) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) chansel::raise(chansel::errc::io_failure, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

chansel::SelectionConfig selection_config(const Options& opt) {
  chansel::SelectionConfig config;
  config.strategy = chansel::parse_strategy(opt.strategy);
  config.prototype_kind = chansel::parse_prototype_kind(opt.prototype);
  config.znormalize = opt.znorm;
  config.seed = opt.seed;
  config.clf = opt.clf;
  config.threads = opt.threads;
  return config;
}

int cmd_select(const Options& opt) {
  const chansel::MtsDataset train = chansel::parse_archive_file(opt.in_path);
  const chansel::SelectionResult result =
      chansel::select_channels(train, selection_config(opt));
  emit(chansel::selection_to_json(result, opt.pretty), opt.out_path);
  if (opt.pretty) {
    std::cerr << chansel::strategy_name(result.strategy) << " kept "
              << result.selected.size() << "/" << train.n_channels << " channels\n";
  }
  return 0;
}

int cmd_restrict(const Options& opt) {
  const chansel::MtsDataset full = chansel::parse_archive_file(opt.in_path);
  const chansel::SelectionResult selection =
      chansel::selection_from_json(read_selection_source(opt.selection_path));
  const chansel::MtsDataset reduced = chansel::restrict_channels(full, selection.selected);
  chansel::write_archive_file(reduced, opt.out_path);
  if (opt.pretty) {
    std::cerr << "wrote " << opt.out_path << " with " << reduced.n_channels << "/"
              << full.n_channels << " channels\n";
  }
  return 0;
}

int cmd_bench(const Options& opt) {
  const chansel::MtsDataset train = chansel::parse_archive_file(opt.in_path);
  const chansel::MtsDataset test = chansel::parse_archive_file(opt.test_path);
  const chansel::ClassifierSpec clf = chansel::parse_classifier_spec(opt.clf);
  const chansel::BenchReport report =
      chansel::run_benchmark(train, test, selection_config(opt), clf, opt.seed);
  emit(chansel::bench_report_to_json(report, opt.pretty), opt.out_path);
  if (opt.pretty) {
    const chansel::BenchReport reports[] = {report};
    std::cerr << chansel::summary_text(chansel::summarize(reports));
  }
  return 0;
}

int cmd_synth(const Options& opt) {
  const chansel::SynthData data = chansel::generate_synth(opt.synth);
  const fs::path outdir = opt.out_path.empty() ? fs::path(".") : fs::path(opt.out_path);
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec) chansel::raise(chansel::errc::io_failure, "cannot create '" + outdir.string() + "'");
  chansel::write_archive_file(data.train, outdir / "synth_TRAIN.ts");
  chansel::write_archive_file(data.test, outdir / "synth_TEST.ts");
  std::ofstream truth(outdir / "synth_truth.json", std::ios::binary | std::ios::trunc);
  if (!truth) chansel::raise(chansel::errc::io_failure, "cannot write synth_truth.json");
  truth << chansel::synth_truth_json(opt.synth, data.informative, opt.pretty) << '\n';
  if (opt.pretty) {
    std::cerr << "wrote synth_TRAIN.ts, synth_TEST.ts, synth_truth.json under "
              << outdir.string() << '\n';
  }
  return 0;
}

int cmd_inspect(const Options& opt) {
  const chansel::MtsDataset train = chansel::parse_archive_file(opt.in_path);
  chansel::MtsDataset normalized;
  if (opt.znorm) normalized = chansel::znormalize(train);
  const chansel::MtsDataset& input = opt.znorm ? normalized : train;
  const chansel::PrototypeSet ps =
      chansel::compute_prototypes(input, chansel::parse_prototype_kind(opt.prototype));
  const chansel::DistanceMatrix dm = chansel::build_distance_matrix(ps);
  const std::vector<double> scores = chansel::channel_sums(dm);

  const fs::path outdir = opt.out_path.empty() ? fs::path(".") : fs::path(opt.out_path);
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec) chansel::raise(chansel::errc::io_failure, "cannot create '" + outdir.string() + "'");

  std::ofstream dist(outdir / "distances.csv", std::ios::binary | std::ios::trunc);
  if (!dist) chansel::raise(chansel::errc::io_failure, "cannot write distances.csv");
  dist << chansel::distance_matrix_csv(dm);

  std::ofstream score_out(outdir / "scores.csv", std::ios::binary | std::ios::trunc);
  if (!score_out) chansel::raise(chansel::errc::io_failure, "cannot write scores.csv");
  score_out << "channel,score\n";
  for (std::size_t c = 0; c < scores.size(); ++c) {
    score_out << c << ',' << chansel::format_value(scores[c]) << '\n';
  }
  if (opt.pretty) {
    std::cerr << "wrote distances.csv and scores.csv under " << outdir.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Channel selection for multivariate time series"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub, bool with_strategy, bool with_clf) {
    sub->add_option("--out", opt.out_path, "Output file (default: stdout)");
    sub->add_flag("--pretty", opt.pretty, "Indent JSON and print a human summary to stderr");
    if (with_strategy) {
      sub->add_option("--strategy", opt.strategy, "ecs | ecp | greedy | all");
      sub->add_option("--prototype", opt.prototype, "mean | median");
      sub->add_flag("--znorm", opt.znorm, "Z-normalize each series before selection");
      sub->add_option("--seed", opt.seed, "Seed echoed into results");
      sub->add_option("--threads", opt.threads, "Worker threads for classifier internals");
    }
    if (with_clf) {
      sub->add_option("--clf", opt.clf, "nn1 | rocket:<count>:<seed>");
    }
  };

  CLI::App* select_cmd = app.add_subcommand("select", "Rank channels and print a selection JSON");
  select_cmd->add_option("--in", opt.in_path, "Training archive file")->required();
  add_common(select_cmd, true, true);

  CLI::App* restrict_cmd =
      app.add_subcommand("restrict", "Write an archive keeping only selected channels");
  restrict_cmd->add_option("--in", opt.in_path, "Input archive file")->required();
  restrict_cmd->add_option("selection", opt.selection_path,
                           "Selection JSON file (default: stdin)");
  restrict_cmd->add_flag("--pretty", opt.pretty, "Print a short note to stderr");
  restrict_cmd->add_option("--out", opt.out_path, "Output archive file")->required();

  CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark selection against full channels");
  bench_cmd->add_option("--in", opt.in_path, "Training archive file")->required();
  bench_cmd->add_option("--test", opt.test_path, "Test archive file")->required();
  add_common(bench_cmd, true, true);

  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic dataset with known useful channels");
  synth_cmd->add_option("--channels", opt.synth.channels, "Total channels");
  synth_cmd->add_option("--informative", opt.synth.informative, "Channels carrying signal");
  synth_cmd->add_option("--classes", opt.synth.classes, "Number of classes");
  synth_cmd->add_option("--per-class", opt.synth.per_class, "Instances per class per split");
  synth_cmd->add_option("--length", opt.synth.length, "Series length");
  synth_cmd->add_option("--sigma", opt.synth.noise_sigma, "Noise standard deviation");
  synth_cmd->add_option("--effect", opt.synth.effect, "Signal amplitude");
  synth_cmd->add_option("--seed", opt.synth.seed, "Generator seed");
  synth_cmd->add_option("--out", opt.out_path, "Output directory (default: .)");
  synth_cmd->add_flag("--pretty", opt.pretty, "Print a short note to stderr");

  CLI::App* inspect_cmd =
      app.add_subcommand("inspect", "Dump the distance matrix and channel scores as CSV");
  inspect_cmd->add_option("--in", opt.in_path, "Training archive file")->required();
  inspect_cmd->add_option("--out", opt.out_path, "Output directory (default: .)");
  inspect_cmd->add_option("--prototype", opt.prototype, "mean | median");
  inspect_cmd->add_flag("--znorm", opt.znorm, "Z-normalize each series first");
  inspect_cmd->add_flag("--pretty", opt.pretty, "Print a short note to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (select_cmd->parsed()) return cmd_select(opt);
    if (restrict_cmd->parsed()) return cmd_restrict(opt);
    if (bench_cmd->parsed()) return cmd_bench(opt);
    if (synth_cmd->parsed()) return cmd_synth(opt);
    if (inspect_cmd->parsed()) return cmd_inspect(opt);
  } catch (const chansel::Error& e) {
    std::cerr << e.what() << '\n';
    return chansel::is_input_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
