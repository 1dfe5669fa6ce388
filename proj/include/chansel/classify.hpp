#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chansel/dataset.hpp"

namespace chansel {

// ---------------------------------------------------------------------------
// 1-nearest-neighbour with squared Euclidean distance over all channels.

struct Nn1Model {
  MtsDataset train;
};

Nn1Model nn1_fit(const MtsDataset& ds);

/// Label of the closest training instance per test instance; distance ties go
/// to the lowest training index.
std::vector<int> nn1_predict(const Nn1Model& model, const MtsDataset& test,
                             int threads = 1);

// ---------------------------------------------------------------------------
// Random-kernel transform with PPV and max pooling feeding a ridge classifier.

struct Kernel {
  int length = 0;                   // 7, 9 or 11
  std::array<double, 11> weights{};  // mean-centered, first `length` entries used
  double bias = 0.0;
  int dilation = 1;
  bool padding = false;
};

struct KernelBank {
  std::vector<Kernel> kernels;
  std::size_t input_length = 0;
  std::uint64_t seed = 0;
};

/// Draw `count` kernels for series of the given length. Lengths are sampled
/// from {7, 9, 11} (restricted to those that fit), weights are standard
/// normal then mean-centered, bias is uniform in [-1, 1], dilation is
/// floor(2^x) with x uniform in [0, log2((L-1)/(len-1))], and zero padding is
/// applied with probability 1/2.
KernelBank sample_kernel_bank(std::size_t count, std::size_t series_length,
                              std::uint64_t seed);

/// Per-instance feature rows [ppv, max] per kernel (2 * count columns).
/// Convolution responses are computed per channel and summed per time step
/// before pooling; the bias enters once per time step.
std::vector<double> rocket_transform(const KernelBank& bank, const MtsDataset& ds,
                                     int threads = 1);

/// w = (X^T X + lambda I)^-1 X^T Y for row-major X (n x d) and Y (n x k);
/// returns row-major [k][d]. Solved in whichever of the primal/dual forms is
/// smaller; both are the same closed-form solution.
std::vector<double> ridge_solve_multi(const double* x, std::size_t n, std::size_t d,
                                      const double* y, std::size_t k, double lambda);
std::vector<double> ridge_solve(const std::vector<double>& x, std::size_t n,
                                std::size_t d, const std::vector<double>& y,
                                double lambda);

struct FittedRidge {
  std::size_t n_features = 0;
  std::size_t n_classes = 0;
  std::vector<double> weights;     // [class][feature]
  std::vector<double> intercepts;  // [class]
  std::vector<double> feat_mean;   // standardization constants
  std::vector<double> feat_std;
  double lambda = 0.0;
};

struct RocketModel {
  KernelBank bank;
  FittedRidge ridge;
  std::vector<std::string> label_names;
};

/// Sample a bank, transform, standardize features, and fit one-vs-rest ridge
/// with the regularization strength chosen from {1e-3..1e3} by stratified
/// 5-fold cross-validated accuracy (ties -> smaller strength).
RocketModel rocket_fit(const MtsDataset& ds, std::size_t kernel_count,
                       std::uint64_t seed, int threads = 1);

std::vector<int> rocket_predict(const RocketModel& model, const MtsDataset& test,
                                int threads = 1);

// ---------------------------------------------------------------------------

struct ClassifierSpec {
  enum class Kind { Nn1, Rocket };
  Kind kind = Kind::Nn1;
  std::size_t kernel_count = 500;
  std::uint64_t seed = 0;
};

/// "nn1" or "rocket:<count>:<seed>".
ClassifierSpec parse_classifier_spec(std::string_view token);
std::string classifier_token(const ClassifierSpec& spec);

struct EvalResult {
  double accuracy = 0.0;
  double fit_ms = 0.0;
  double predict_ms = 0.0;
};

/// Restrict both sets to `channels`, fit, predict, and score; wall-clock is
/// measured around fit and predict only.
EvalResult evaluate(const MtsDataset& train, const MtsDataset& test,
                    std::span<const std::size_t> channels, const ClassifierSpec& spec,
                    int threads = 1);

/// Deterministic stratified fold ids: within each class, instances are dealt
/// round-robin in dataset order.
std::vector<std::size_t> stratified_fold_assignment(std::span<const int> labels,
                                                    std::size_t n_classes,
                                                    std::size_t folds);

}  // namespace chansel
