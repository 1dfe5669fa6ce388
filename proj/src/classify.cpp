#include "chansel/classify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "chansel/errors.hpp"
#include "chansel/parallel.hpp"
#include "chansel/rng.hpp"

namespace chansel {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_shapes(const MtsDataset& train, const MtsDataset& test) {
  if (train.n_channels != test.n_channels || train.series_length != test.series_length) {
    raise(errc::shape_mismatch,
          "train is " + std::to_string(train.n_channels) + "x" +
              std::to_string(train.series_length) + ", test is " +
              std::to_string(test.n_channels) + "x" + std::to_string(test.series_length));
  }
}

constexpr double kLambdaGrid[] = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};

}  // namespace

std::vector<std::size_t> stratified_fold_assignment(std::span<const int> labels,
                                                    std::size_t n_classes,
                                                    std::size_t folds) {
  if (folds == 0) raise(errc::invalid_spec, "fold count must be positive");
  std::vector<std::size_t> next(n_classes, 0);
  std::vector<std::size_t> fold_of(labels.size());
  for (std::size_t n = 0; n < labels.size(); ++n) {
    auto& counter = next[static_cast<std::size_t>(labels[n])];
    fold_of[n] = counter % folds;
    ++counter;
  }
  return fold_of;
}

// ---------------------------------------------------------------------------
// 1-NN

Nn1Model nn1_fit(const MtsDataset& ds) {
  if (ds.n_instances == 0) raise(errc::empty_input, "cannot fit on an empty training set");
  return Nn1Model{ds};
}

std::vector<int> nn1_predict(const Nn1Model& model, const MtsDataset& test, int threads) {
  check_shapes(model.train, test);
  const std::size_t width = model.train.n_channels * model.train.series_length;
  std::vector<int> out(test.n_instances);
  parallel_for(test.n_instances, threads, [&](std::size_t n) {
    const double* q = test.values.data() + n * width;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t m = 0; m < model.train.n_instances; ++m) {
      const double* r = model.train.values.data() + m * width;
      double dist = 0.0;
      for (std::size_t i = 0; i < width; ++i) {
        const double diff = q[i] - r[i];
        dist += diff * diff;
      }
      if (dist < best) {
        best = dist;
        best_idx = m;
      }
    }
    out[n] = model.train.labels[best_idx];
  });
  return out;
}

// ---------------------------------------------------------------------------
// Kernel sampling and transform

KernelBank sample_kernel_bank(std::size_t count, std::size_t series_length,
                              std::uint64_t seed) {
  if (count == 0) raise(errc::invalid_spec, "kernel count must be positive");
  if (series_length < 7) {
    raise(errc::too_short_series,
          "series of length " + std::to_string(series_length) + " cannot host a kernel");
  }
  std::vector<int> lengths;
  for (int len : {7, 9, 11}) {
    if (static_cast<std::size_t>(len) <= series_length) lengths.push_back(len);
  }
  Rng rng(seed);
  KernelBank bank;
  bank.input_length = series_length;
  bank.seed = seed;
  bank.kernels.resize(count);
  for (Kernel& k : bank.kernels) {
    k.length = lengths[rng.below(lengths.size())];
    double mean = 0.0;
    for (int j = 0; j < k.length; ++j) {
      k.weights[static_cast<std::size_t>(j)] = rng.gaussian();
      mean += k.weights[static_cast<std::size_t>(j)];
    }
    mean /= k.length;
    for (int j = 0; j < k.length; ++j) k.weights[static_cast<std::size_t>(j)] -= mean;
    k.bias = rng.uniform(-1.0, 1.0);
    // keep the dilated footprint (length-1)*dilation + 1 within the series
    const std::size_t max_dilation = (series_length - 1) / static_cast<std::size_t>(k.length - 1);
    const double max_exponent = std::log2(static_cast<double>(series_length - 1) /
                                          static_cast<double>(k.length - 1));
    const double exponent = rng.uniform(0.0, max_exponent);
    k.dilation = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(std::exp2(exponent)), max_dilation));
    if (k.dilation < 1) k.dilation = 1;
    k.padding = rng.next_unit() < 0.5;
  }
  return bank;
}

std::vector<double> rocket_transform(const KernelBank& bank, const MtsDataset& ds,
                                     int threads) {
  if (ds.series_length != bank.input_length) {
    raise(errc::shape_mismatch, "kernel bank was sampled for length " +
                                    std::to_string(bank.input_length) + ", data has length " +
                                    std::to_string(ds.series_length));
  }
  const std::size_t l = ds.series_length;
  const std::size_t n_features = 2 * bank.kernels.size();
  std::vector<double> feats(ds.n_instances * n_features, 0.0);

  std::size_t max_out = 0;
  for (const Kernel& k : bank.kernels) {
    const std::size_t footprint = static_cast<std::size_t>(k.length - 1) *
                                  static_cast<std::size_t>(k.dilation);
    const std::size_t pad = k.padding ? footprint / 2 : 0;
    max_out = std::max(max_out, l + 2 * pad - footprint);
  }

  parallel_for(ds.n_instances, threads, [&](std::size_t n) {
    std::vector<double> acc(max_out);
    for (std::size_t q = 0; q < bank.kernels.size(); ++q) {
      const Kernel& k = bank.kernels[q];
      const std::size_t dil = static_cast<std::size_t>(k.dilation);
      const std::size_t footprint = static_cast<std::size_t>(k.length - 1) * dil;
      const std::size_t pad = k.padding ? footprint / 2 : 0;
      const std::size_t out_len = l + 2 * pad - footprint;
      std::fill(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(out_len), k.bias);
      for (std::size_t c = 0; c < ds.n_channels; ++c) {
        const double* x = ds.values.data() + (n * ds.n_channels + c) * l;
        for (std::size_t s = 0; s < out_len; ++s) {
          const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(s) -
                                      static_cast<std::ptrdiff_t>(pad);
          double sum = 0.0;
          for (int j = 0; j < k.length; ++j) {
            const std::ptrdiff_t idx = base + static_cast<std::ptrdiff_t>(dil) * j;
            if (idx >= 0 && idx < static_cast<std::ptrdiff_t>(l)) {
              sum += k.weights[static_cast<std::size_t>(j)] * x[idx];
            }
          }
          acc[s] += sum;
        }
      }
      std::size_t positive = 0;
      double mx = -std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < out_len; ++s) {
        if (acc[s] > 0.0) ++positive;
        mx = std::max(mx, acc[s]);
      }
      feats[n * n_features + 2 * q] =
          static_cast<double>(positive) / static_cast<double>(out_len);
      feats[n * n_features + 2 * q + 1] = mx;
    }
  });
  return feats;
}

// ---------------------------------------------------------------------------
// Ridge

std::vector<double> ridge_solve_multi(const double* x, std::size_t n, std::size_t d,
                                      const double* y, std::size_t k, double lambda) {
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> xm(x, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  Eigen::Map<const RowMat> ym(y, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  Eigen::MatrixXd w;
  if (d <= n) {
    Eigen::MatrixXd gram = xm.transpose() * xm;
    gram.diagonal().array() += lambda;
    w = gram.llt().solve(xm.transpose() * ym);
  } else {
    // dual form: X^T (X X^T + lambda I)^-1 Y gives the identical solution
    Eigen::MatrixXd gram = xm * xm.transpose();
    gram.diagonal().array() += lambda;
    w = xm.transpose() * gram.llt().solve(Eigen::MatrixXd(ym));
  }
  std::vector<double> out(k * d);
  for (std::size_t cls = 0; cls < k; ++cls) {
    for (std::size_t j = 0; j < d; ++j) {
      out[cls * d + j] = w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(cls));
    }
  }
  return out;
}

std::vector<double> ridge_solve(const std::vector<double>& x, std::size_t n,
                                std::size_t d, const std::vector<double>& y,
                                double lambda) {
  return ridge_solve_multi(x.data(), n, d, y.data(), 1, lambda);
}

namespace {

struct OvrRidge {
  std::vector<double> weights;     // [class][feature]
  std::vector<double> intercepts;  // [class]
};

// One-vs-rest on +-1 targets; the intercept is the class target mean and the
// weights are fit on the centered targets.
OvrRidge fit_ovr(const double* x, std::size_t n, std::size_t d,
                 std::span<const int> labels, std::size_t n_classes, double lambda) {
  std::vector<double> targets(n * n_classes);
  std::vector<double> means(n_classes, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t cls = 0; cls < n_classes; ++cls) {
      const double t = labels[i] == static_cast<int>(cls) ? 1.0 : -1.0;
      targets[i * n_classes + cls] = t;
      means[cls] += t;
    }
  }
  for (double& m : means) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t cls = 0; cls < n_classes; ++cls) {
      targets[i * n_classes + cls] -= means[cls];
    }
  }
  OvrRidge fit;
  fit.weights = ridge_solve_multi(x, n, d, targets.data(), n_classes, lambda);
  fit.intercepts = std::move(means);
  return fit;
}

int ovr_predict_row(const OvrRidge& fit, const double* row, std::size_t d,
                    std::size_t n_classes) {
  int best_cls = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t cls = 0; cls < n_classes; ++cls) {
    double score = fit.intercepts[cls];
    const double* w = fit.weights.data() + cls * d;
    for (std::size_t j = 0; j < d; ++j) score += w[j] * row[j];
    if (score > best) {
      best = score;
      best_cls = static_cast<int>(cls);
    }
  }
  return best_cls;
}

double cv_accuracy_for_lambda(const std::vector<double>& feats, std::size_t d,
                              std::span<const int> labels, std::size_t n_classes,
                              const std::vector<std::vector<std::size_t>>& fold_rows,
                              double lambda) {
  std::size_t correct = 0, total = 0;
  std::vector<double> train_x;
  std::vector<int> train_y;
  for (std::size_t f = 0; f < fold_rows.size(); ++f) {
    const auto& val_rows = fold_rows[f];
    if (val_rows.empty()) continue;
    train_x.clear();
    train_y.clear();
    for (std::size_t g = 0; g < fold_rows.size(); ++g) {
      if (g == f) continue;
      for (std::size_t row : fold_rows[g]) {
        train_x.insert(train_x.end(), feats.begin() + static_cast<std::ptrdiff_t>(row * d),
                       feats.begin() + static_cast<std::ptrdiff_t>((row + 1) * d));
        train_y.push_back(labels[row]);
      }
    }
    if (train_y.empty()) continue;
    const OvrRidge fit = fit_ovr(train_x.data(), train_y.size(), d, train_y, n_classes, lambda);
    for (std::size_t row : val_rows) {
      const int pred = ovr_predict_row(fit, feats.data() + row * d, d, n_classes);
      correct += pred == labels[row];
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace

RocketModel rocket_fit(const MtsDataset& ds, std::size_t kernel_count,
                       std::uint64_t seed, int threads) {
  if (ds.num_classes() < 2) raise(errc::single_class, "training data has fewer than two classes");
  if (ds.n_instances == 0) raise(errc::empty_input, "cannot fit on an empty training set");
  const KernelBank bank = sample_kernel_bank(kernel_count, ds.series_length, seed);
  std::vector<double> feats = rocket_transform(bank, ds, threads);
  const std::size_t n = ds.n_instances;
  const std::size_t d = 2 * kernel_count;

  std::vector<double> mean(d, 0.0), stddev(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += feats[i * d + j];
  }
  for (double& m : mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = feats[i * d + j] - mean[j];
      stddev[j] += diff * diff;
    }
  }
  for (double& s : stddev) {
    s = std::sqrt(s / static_cast<double>(n));
    if (s < 1e-12) s = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) feats[i * d + j] = (feats[i * d + j] - mean[j]) / stddev[j];
  }

  const std::size_t n_classes = ds.num_classes();
  const auto fold_of = stratified_fold_assignment(ds.labels, n_classes, 5);
  std::vector<std::vector<std::size_t>> fold_rows(5);
  for (std::size_t i = 0; i < n; ++i) fold_rows[fold_of[i]].push_back(i);

  double best_lambda = kLambdaGrid[0];
  double best_acc = -1.0;
  for (double lambda : kLambdaGrid) {
    const double acc =
        cv_accuracy_for_lambda(feats, d, ds.labels, n_classes, fold_rows, lambda);
    if (acc > best_acc) {
      best_acc = acc;
      best_lambda = lambda;
    }
  }

  const OvrRidge fit = fit_ovr(feats.data(), n, d, ds.labels, n_classes, best_lambda);
  RocketModel model;
  model.bank = bank;
  model.ridge.n_features = d;
  model.ridge.n_classes = n_classes;
  model.ridge.weights = fit.weights;
  model.ridge.intercepts = fit.intercepts;
  model.ridge.feat_mean = std::move(mean);
  model.ridge.feat_std = std::move(stddev);
  model.ridge.lambda = best_lambda;
  model.label_names = ds.label_names;
  return model;
}

std::vector<int> rocket_predict(const RocketModel& model, const MtsDataset& test,
                                int threads) {
  if (test.n_instances == 0) return {};
  if (test.series_length != model.bank.input_length) {
    raise(errc::shape_mismatch, "test series length differs from the fitted length");
  }
  std::vector<double> feats = rocket_transform(model.bank, test, threads);
  const std::size_t d = model.ridge.n_features;
  std::vector<int> out(test.n_instances);
  OvrRidge fit{model.ridge.weights, model.ridge.intercepts};
  parallel_for(test.n_instances, threads, [&](std::size_t i) {
    double* row = feats.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = (row[j] - model.ridge.feat_mean[j]) / model.ridge.feat_std[j];
    }
    out[i] = ovr_predict_row(fit, row, d, model.ridge.n_classes);
  });
  return out;
}

// ---------------------------------------------------------------------------

ClassifierSpec parse_classifier_spec(std::string_view token) {
  if (token == "nn1") return ClassifierSpec{ClassifierSpec::Kind::Nn1, 0, 0};
  if (token.starts_with("rocket:")) {
    const std::string_view rest = token.substr(7);
    const std::size_t colon = rest.find(':');
    if (colon != std::string_view::npos) {
      const std::string_view count_tok = rest.substr(0, colon);
      const std::string_view seed_tok = rest.substr(colon + 1);
      std::size_t count = 0;
      std::uint64_t seed = 0;
      const auto r1 = std::from_chars(count_tok.data(), count_tok.data() + count_tok.size(), count);
      const auto r2 = std::from_chars(seed_tok.data(), seed_tok.data() + seed_tok.size(), seed);
      if (r1.ec == std::errc{} && r1.ptr == count_tok.data() + count_tok.size() &&
          r2.ec == std::errc{} && r2.ptr == seed_tok.data() + seed_tok.size() && count > 0) {
        return ClassifierSpec{ClassifierSpec::Kind::Rocket, count, seed};
      }
    }
  }
  raise(errc::unknown_classifier,
        "'" + std::string(token) + "' (expected nn1 or rocket:<count>:<seed>)");
}

std::string classifier_token(const ClassifierSpec& spec) {
  if (spec.kind == ClassifierSpec::Kind::Nn1) return "nn1";
  return "rocket:" + std::to_string(spec.kernel_count) + ":" + std::to_string(spec.seed);
}

EvalResult evaluate(const MtsDataset& train, const MtsDataset& test,
                    std::span<const std::size_t> channels, const ClassifierSpec& spec,
                    int threads) {
  if (test.n_instances == 0) raise(errc::empty_input, "test set is empty");
  check_shapes(train, test);
  if (train.label_names != test.label_names) {
    raise(errc::shape_mismatch, "train and test label vocabularies differ");
  }
  const MtsDataset tr = restrict_channels(train, channels);
  const MtsDataset te = restrict_channels(test, channels);

  EvalResult result;
  std::vector<int> preds;
  if (spec.kind == ClassifierSpec::Kind::Nn1) {
    auto t0 = Clock::now();
    const Nn1Model model = nn1_fit(tr);
    result.fit_ms = ms_since(t0);
    t0 = Clock::now();
    preds = nn1_predict(model, te, threads);
    result.predict_ms = ms_since(t0);
  } else {
    auto t0 = Clock::now();
    const RocketModel model = rocket_fit(tr, spec.kernel_count, spec.seed, threads);
    result.fit_ms = ms_since(t0);
    t0 = Clock::now();
    preds = rocket_predict(model, te, threads);
    result.predict_ms = ms_since(t0);
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) correct += preds[i] == te.labels[i];
  result.accuracy = static_cast<double>(correct) / static_cast<double>(preds.size());
  return result;
}

}  // namespace chansel
