#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "chansel/classify.hpp"
#include "chansel/errors.hpp"
#include "chansel/synth.hpp"
#include "oracles.hpp"

using chansel::ClassifierSpec;
using chansel::KernelBank;
using chansel::MtsDataset;

TEST_CASE("nn1 trivial predictions") {
  std::mt19937_64 gen(113);
  const MtsDataset train = oracle::random_dataset(gen, 4, 3, 10, 8);
  // a test instance equal to a training instance gets that instance's label
  const auto model = chansel::nn1_fit(train);
  const auto preds = chansel::nn1_predict(model, train);
  CHECK(preds == train.labels);

  // single training instance labels everything
  MtsDataset one = chansel::restrict_channels(train, std::vector<std::size_t>{0, 1});
  one.values.resize(one.n_channels * one.series_length);
  one.labels.resize(1);
  one.n_instances = 1;
  const MtsDataset test = chansel::restrict_channels(train, std::vector<std::size_t>{0, 1});
  for (int p : chansel::nn1_predict(chansel::nn1_fit(one), test)) {
    CHECK(p == one.labels[0]);
  }
}

TEST_CASE("nn1 matches the brute-force oracle") {
  std::mt19937_64 gen(127);
  for (int rep = 0; rep < 10; ++rep) {
    const MtsDataset train = oracle::random_dataset(gen, 4, 3, 12, 8);
    const MtsDataset test = oracle::random_dataset(gen, 4, 3, 8, 8);
    if (train.n_channels != test.n_channels || train.series_length != test.series_length) {
      continue;  // mismatched shapes are covered below
    }
    CHECK(chansel::nn1_predict(chansel::nn1_fit(train), test) ==
          oracle::naive_nn1(train, test));
  }
  const MtsDataset train = oracle::random_dataset(gen, 4, 2, 10, 8);
  MtsDataset longer = train;
  longer.series_length += 1;
  longer.values.resize(longer.n_instances * longer.n_channels * longer.series_length, 0.0);
  CHECK_THROWS_AS(chansel::nn1_predict(chansel::nn1_fit(train), longer), chansel::Error);
}

TEST_CASE("sampled kernels are centered and fit the series") {
  for (std::size_t length : {7u, 8u, 12u, 100u, 333u}) {
    const KernelBank bank = chansel::sample_kernel_bank(400, length, 99);
    for (const auto& k : bank.kernels) {
      double sum = 0.0;
      for (int j = 0; j < k.length; ++j) sum += k.weights[static_cast<std::size_t>(j)];
      CHECK(std::fabs(sum) <= 1e-9);
      CHECK((k.length == 7 || k.length == 9 || k.length == 11));
      CHECK(static_cast<std::size_t>(k.length) <= length);
      CHECK(k.dilation >= 1);
      CHECK(static_cast<std::size_t>(k.length - 1) * static_cast<std::size_t>(k.dilation) +
                1 <=
            length);
      CHECK(k.bias >= -1.0);
      CHECK(k.bias <= 1.0);
    }
  }
  CHECK_THROWS_AS(chansel::sample_kernel_bank(10, 6, 0), chansel::Error);
}

TEST_CASE("ppv bounds via a hand-built bank") {
  // zero weights leave only the bias, so the sign of the bias pins PPV
  KernelBank bank;
  bank.input_length = 12;
  chansel::Kernel k;
  k.length = 7;
  k.weights.fill(0.0);
  k.dilation = 1;
  k.padding = false;
  k.bias = -1.0;
  bank.kernels.push_back(k);
  k.bias = 1.0;
  bank.kernels.push_back(k);

  const MtsDataset ds = MtsDataset::make("ppv", 2, 1, 12, std::vector<double>(24, 3.0),
                                         {0, 1}, {"A", "B"});
  const auto feats = chansel::rocket_transform(bank, ds);
  REQUIRE(feats.size() == 2 * 4);
  CHECK(feats[0] == 0.0);  // all-negative responses
  CHECK(feats[1] == -1.0);
  CHECK(feats[2] == 1.0);  // all-positive responses
  CHECK(feats[3] == 1.0);
}

TEST_CASE("transform is bitwise deterministic in the seed") {
  std::mt19937_64 gen(131);
  const MtsDataset ds = oracle::random_dataset(gen, 4, 2, 12, 16);
  const KernelBank bank1 = chansel::sample_kernel_bank(64, ds.series_length, 5);
  const KernelBank bank2 = chansel::sample_kernel_bank(64, ds.series_length, 5);
  CHECK(chansel::rocket_transform(bank1, ds) == chansel::rocket_transform(bank2, ds));
  // threading must not change the result
  CHECK(chansel::rocket_transform(bank1, ds) == chansel::rocket_transform(bank1, ds, 4));

  const auto m1 = chansel::rocket_fit(ds, 64, 5);
  const auto m2 = chansel::rocket_fit(ds, 64, 5);
  CHECK(m1.ridge.lambda == m2.ridge.lambda);
  CHECK(m1.ridge.weights == m2.ridge.weights);
}

TEST_CASE("ridge solver agrees with the closed-form oracle") {
  std::mt19937_64 gen(137);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 6, d = 4 + gen() % 5;  // both d<n and d>n paths
    std::vector<double> x(n * d), y(n);
    for (double& v : x) v = value(gen);
    for (double& v : y) v = value(gen);
    for (double lambda : {1e-3, 1.0, 100.0}) {
      const auto w = chansel::ridge_solve(x, n, d, y, lambda);
      const auto expect = oracle::naive_ridge(x, n, d, y, lambda);
      REQUIRE(w.size() == expect.size());
      for (std::size_t j = 0; j < d; ++j) {
        CHECK(w[j] == doctest::Approx(expect[j]).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("rocket separates an easy synthetic and matches 1-nn on it") {
  const chansel::SynthSpec spec{3, 3, 2, 10, 40, 0.3, 1.5, 7};
  const auto data = chansel::generate_synth(spec);
  const auto nn_preds = chansel::nn1_predict(chansel::nn1_fit(data.train), data.test);
  std::size_t nn_correct = 0;
  for (std::size_t i = 0; i < nn_preds.size(); ++i) {
    nn_correct += nn_preds[i] == data.test.labels[i];
  }
  CHECK(nn_correct == data.test.n_instances);  // separable per the 1-NN oracle

  const auto model = chansel::rocket_fit(data.train, 200, 7);
  const auto preds = chansel::rocket_predict(model, data.test);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) correct += preds[i] == data.test.labels[i];
  CHECK(static_cast<double>(correct) / static_cast<double>(preds.size()) >= 0.95);

  // empty test set, pointwise order invariance
  MtsDataset empty;
  empty.n_channels = data.test.n_channels;
  empty.series_length = data.test.series_length;
  CHECK(chansel::rocket_predict(model, empty).empty());

  MtsDataset reversed;
  reversed.name = data.test.name;
  reversed.n_channels = data.test.n_channels;
  reversed.series_length = data.test.series_length;
  reversed.label_names = data.test.label_names;
  reversed.n_instances = data.test.n_instances;
  const std::size_t width = data.test.n_channels * data.test.series_length;
  for (std::size_t n = data.test.n_instances; n-- > 0;) {
    const double* src = data.test.values.data() + n * width;
    reversed.values.insert(reversed.values.end(), src, src + width);
    reversed.labels.push_back(data.test.labels[n]);
  }
  const auto rev_preds = chansel::rocket_predict(model, reversed);
  for (std::size_t i = 0; i < rev_preds.size(); ++i) {
    CHECK(rev_preds[i] == preds[preds.size() - 1 - i]);
  }
}

TEST_CASE("rocket guards") {
  std::mt19937_64 gen(139);
  const MtsDataset tiny = oracle::random_dataset(gen, 3, 2, 8, 6);
  REQUIRE(tiny.series_length < 7);
  try {
    chansel::rocket_fit(tiny, 10, 0);
    FAIL_CHECK("expected TooShortSeries");
  } catch (const chansel::Error& e) {
    CHECK(e.code() == chansel::errc::too_short_series);
  }

  std::vector<double> values(3 * 1 * 10, 0.5);
  const MtsDataset single = MtsDataset::make("s", 3, 1, 10, std::move(values), {0, 0, 0},
                                             {"A"});
  try {
    chansel::rocket_fit(single, 10, 0);
    FAIL_CHECK("expected SingleClass");
  } catch (const chansel::Error& e) {
    CHECK(e.code() == chansel::errc::single_class);
  }
}

TEST_CASE("classifier spec tokens") {
  const ClassifierSpec nn = chansel::parse_classifier_spec("nn1");
  CHECK(nn.kind == ClassifierSpec::Kind::Nn1);
  CHECK(chansel::classifier_token(nn) == "nn1");
  const ClassifierSpec rocket = chansel::parse_classifier_spec("rocket:500:7");
  CHECK(rocket.kind == ClassifierSpec::Kind::Rocket);
  CHECK(rocket.kernel_count == 500);
  CHECK(rocket.seed == 7);
  CHECK(chansel::classifier_token(rocket) == "rocket:500:7");
  CHECK_THROWS_AS(chansel::parse_classifier_spec("rocket:500"), chansel::Error);
  CHECK_THROWS_AS(chansel::parse_classifier_spec("forest"), chansel::Error);
}

TEST_CASE("evaluate restricts both sides and keeps the all-channel run intact") {
  const chansel::SynthSpec spec{6, 2, 2, 8, 20, 0.5, 1.5, 11};
  const auto data = chansel::generate_synth(spec);
  std::vector<std::size_t> all(data.train.n_channels);
  std::iota(all.begin(), all.end(), std::size_t{0});

  const auto spec_nn = chansel::parse_classifier_spec("nn1");
  const auto full = chansel::evaluate(data.train, data.test, all, spec_nn);
  const auto direct =
      chansel::nn1_predict(chansel::nn1_fit(data.train), data.test);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < direct.size(); ++i) {
    correct += direct[i] == data.test.labels[i];
  }
  CHECK(full.accuracy ==
        static_cast<double>(correct) / static_cast<double>(data.test.n_instances));

  // a test instance set equal to train scores a perfect accuracy
  const auto self = chansel::evaluate(data.train, data.train, all, spec_nn);
  CHECK(self.accuracy == 1.0);

  const ClassifierSpec rocket = chansel::parse_classifier_spec("rocket:100:3");
  CHECK(chansel::evaluate(data.train, data.test, all, rocket).accuracy ==
        chansel::evaluate(data.train, data.test, all, rocket).accuracy);
}

TEST_CASE("stratified folds deal classes round-robin") {
  const std::vector<int> labels{0, 0, 0, 1, 1, 0, 1};
  const auto folds = chansel::stratified_fold_assignment(labels, 2, 2);
  CHECK(folds == std::vector<std::size_t>{0, 1, 0, 0, 1, 1, 0});
}
