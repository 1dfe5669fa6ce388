#pragma once

// Independent naive reimplementations used as test oracles. Everything here
// is written with direct loops against the public dataset fields and shares
// no code with the library internals it checks.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chansel/dataset.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// random small datasets (test-only generator, independent of the library RNG)

inline chansel::MtsDataset random_dataset(std::mt19937_64& gen, std::size_t max_c = 8,
                                          std::size_t max_k = 4, std::size_t max_n = 30,
                                          std::size_t max_l = 20,
                                          std::size_t min_per_class = 1) {
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  const std::size_t c = 2 + gen() % (max_c - 1);
  const std::size_t k = 2 + gen() % (max_k - 1);
  const std::size_t l = 2 + gen() % (max_l - 1);
  const std::size_t min_n = std::max<std::size_t>(k * min_per_class, 2);
  const std::size_t n = min_n + gen() % (max_n - min_n + 1);

  std::vector<int> labels(n);
  // guarantee coverage (and the per-class minimum), then fill randomly
  std::size_t at = 0;
  for (std::size_t cls = 0; cls < k; ++cls) {
    for (std::size_t rep = 0; rep < min_per_class; ++rep) labels[at++] = static_cast<int>(cls);
  }
  for (; at < n; ++at) labels[at] = static_cast<int>(gen() % k);
  std::shuffle(labels.begin(), labels.end(), gen);

  std::vector<double> values(n * c * l);
  for (double& v : values) v = value(gen);
  std::vector<std::string> label_names(k);
  for (std::size_t cls = 0; cls < k; ++cls) label_names[cls] = "r" + std::to_string(cls);
  return chansel::MtsDataset::make("rand", n, c, l, std::move(values), std::move(labels),
                                   std::move(label_names));
}

// ---------------------------------------------------------------------------
// prototypes and distances by direct triple loops

inline std::vector<std::vector<std::vector<double>>> naive_prototypes(
    const chansel::MtsDataset& ds, bool median = false) {
  const std::size_t k = ds.label_names.size();
  std::vector<std::vector<std::vector<double>>> proto(
      k, std::vector<std::vector<double>>(ds.n_channels,
                                          std::vector<double>(ds.series_length, 0.0)));
  for (std::size_t cls = 0; cls < k; ++cls) {
    std::vector<std::size_t> rows;
    for (std::size_t n = 0; n < ds.n_instances; ++n) {
      if (ds.labels[n] == static_cast<int>(cls)) rows.push_back(n);
    }
    for (std::size_t c = 0; c < ds.n_channels; ++c) {
      for (std::size_t t = 0; t < ds.series_length; ++t) {
        if (!median) {
          double total = 0.0;
          for (std::size_t r : rows) total += ds.value(r, c, t);
          proto[cls][c][t] = total / static_cast<double>(rows.size());
        } else {
          std::vector<double> vals;
          for (std::size_t r : rows) vals.push_back(ds.value(r, c, t));
          std::sort(vals.begin(), vals.end());
          const std::size_t mid = vals.size() / 2;
          proto[cls][c][t] = vals.size() % 2 == 1 ? vals[mid]
                                                  : (vals[mid - 1] + vals[mid]) / 2.0;
        }
      }
    }
  }
  return proto;
}

inline std::vector<std::pair<int, int>> naive_pairs(std::size_t k) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return pairs;
}

// [channel][pair] euclidean distances between class prototypes
inline std::vector<std::vector<double>> naive_distances(const chansel::MtsDataset& ds,
                                                        bool median = false) {
  const auto proto = naive_prototypes(ds, median);
  const auto pairs = naive_pairs(ds.label_names.size());
  std::vector<std::vector<double>> d(ds.n_channels, std::vector<double>(pairs.size(), 0.0));
  for (std::size_t c = 0; c < ds.n_channels; ++c) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      double sum = 0.0;
      for (std::size_t t = 0; t < ds.series_length; ++t) {
        const double diff = proto[static_cast<std::size_t>(pairs[p].first)][c][t] -
                            proto[static_cast<std::size_t>(pairs[p].second)][c][t];
        sum += diff * diff;
      }
      d[c][p] = std::sqrt(sum);
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// elbow by explicit chord geometry (vertical offsets from the line equation)

inline std::vector<std::size_t> naive_elbow_selected(const std::vector<double>& scores) {
  const std::size_t c = scores.size();
  std::vector<std::size_t> order(c);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return scores[x] > scores[y];
  });
  const double top = scores[order.front()];
  const double bottom = scores[order.back()];
  if (c <= 2 || top == bottom) return order;
  const double slope = (bottom - top) / static_cast<double>(c - 1);
  double best_abs = -1.0, best_signed = 0.0;
  std::size_t best_rank = 0;
  for (std::size_t r = 0; r < c; ++r) {
    const double chord = top + slope * static_cast<double>(r);
    const double diff = scores[order[r]] - chord;
    if (std::fabs(diff) > best_abs) {
      best_abs = std::fabs(diff);
      best_signed = diff;
      best_rank = r;
    }
  }
  std::size_t keep = best_rank + 1;
  if (best_signed < 0.0) keep -= 1;
  return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep)};
}

inline std::vector<std::size_t> naive_ecs(const chansel::MtsDataset& ds,
                                          bool median = false) {
  const auto d = naive_distances(ds, median);
  std::vector<double> sums(ds.n_channels, 0.0);
  for (std::size_t c = 0; c < ds.n_channels; ++c) {
    for (double v : d[c]) sums[c] += v;
  }
  auto selected = naive_elbow_selected(sums);
  std::sort(selected.begin(), selected.end());
  return selected;
}

inline std::vector<std::size_t> naive_ecp(const chansel::MtsDataset& ds,
                                          bool median = false) {
  const auto d = naive_distances(ds, median);
  const std::size_t n_pairs = d.empty() ? 0 : d[0].size();
  std::set<std::size_t> chosen;
  for (std::size_t p = 0; p < n_pairs; ++p) {
    std::vector<double> column(ds.n_channels);
    for (std::size_t c = 0; c < ds.n_channels; ++c) column[c] = d[c][p];
    for (std::size_t picked : naive_elbow_selected(column)) chosen.insert(picked);
  }
  return {chosen.begin(), chosen.end()};
}

// ---------------------------------------------------------------------------
// 1-NN by the obvious double loop

inline std::vector<int> naive_nn1(const chansel::MtsDataset& train,
                                  const chansel::MtsDataset& test) {
  std::vector<int> preds(test.n_instances);
  for (std::size_t q = 0; q < test.n_instances; ++q) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_row = 0;
    for (std::size_t r = 0; r < train.n_instances; ++r) {
      double dist = 0.0;
      for (std::size_t t = 0; t < train.series_length; ++t) {
        for (std::size_t c = 0; c < train.n_channels; ++c) {
          const double diff = test.value(q, c, t) - train.value(r, c, t);
          dist += diff * diff;
        }
      }
      if (dist < best) {
        best = dist;
        best_row = r;
      }
    }
    preds[q] = train.labels[best_row];
  }
  return preds;
}

// ---------------------------------------------------------------------------
// ridge normal equations solved by Gauss-Jordan with partial pivoting

inline std::vector<double> naive_ridge(const std::vector<double>& x, std::size_t n,
                                       std::size_t d, const std::vector<double>& y,
                                       double lambda) {
  std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double sum = 0.0;
      for (std::size_t r = 0; r < n; ++r) sum += x[r * d + i] * x[r * d + j];
      a[i][j] = sum + (i == j ? lambda : 0.0);
    }
    double rhs = 0.0;
    for (std::size_t r = 0; r < n; ++r) rhs += x[r * d + i] * y[r];
    a[i][d] = rhs;
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < d; ++row) {
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    }
    std::swap(a[col], a[pivot]);
    const double diag = a[col][col];
    for (std::size_t j = col; j <= d; ++j) a[col][j] /= diag;
    for (std::size_t row = 0; row < d; ++row) {
      if (row == col) continue;
      const double factor = a[row][col];
      for (std::size_t j = col; j <= d; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  std::vector<double> w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = a[i][d];
  return w;
}

inline bool close_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace oracle
