#include <doctest.h>

#include <cmath>
#include <random>

#include "ptw/predictor.hpp"
#include "support/oracles.hpp"

using namespace ptw;

namespace {

GaussianStats stats_of(std::initializer_list<double> xs) {
  GaussianStats s;
  for (double x : xs) s.update(x);
  return s;
}

// Intrinsic normalization constant of the sufficient-statistic density
// with unbiased variances: the integral over x equals this, -> 1 as n grows.
double ss_norm(double n) {
  return std::pow(n / (n - 1.0), n / 2.0) * std::pow(n / (n + 1.0), (n + 1.0) / 2.0);
}

}  // namespace

TEST_CASE("stats_update examples") {
  GaussianStats s;
  s = stats_update(s, 0.0);
  CHECK(s.count == 1);
  CHECK(s.mean == 0.0);
  CHECK(s.ssd == 0.0);

  auto two = stats_of({1.0, 3.0});
  CHECK(two.count == 2);
  CHECK(two.mean == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(two.ssd == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(two.variance() == doctest::Approx(2.0).epsilon(1e-15));

  GaussianStats c;
  for (int i = 0; i < 5; ++i) c.update(7.25);
  CHECK(c.mean == 7.25);
  CHECK(c.ssd == 0.0);
}

TEST_CASE("one-pass statistics match the two-pass formula") {
  std::mt19937_64 rng(2024);
  for (double offset : {0.0, 10.0, 1e3}) {
    std::vector<double> xs;
    GaussianStats s;
    std::normal_distribution<double> noise(offset, 3.0);
    for (int i = 0; i < 2000; ++i) {
      xs.push_back(noise(rng));
      s.update(xs.back());
    }
    const auto ref = oracles::two_pass(xs);
    CHECK(s.mean == doctest::Approx(ref.mean).epsilon(1e-12));
    CHECK(s.variance() == doctest::Approx(ref.variance).epsilon(1e-12));
  }
}

TEST_CASE("one-pass statistics stay stable at 1e8 offsets") {
  std::mt19937_64 rng(11);
  const double offset = 1e8;
  std::vector<double> xs;
  GaussianStats s;
  std::normal_distribution<double> noise(offset, 3.0);
  for (int i = 0; i < 2000; ++i) {
    xs.push_back(noise(rng));
    s.update(xs.back());
  }
  // reference on exactly shifted data: small-scale arithmetic is accurate
  std::vector<double> shifted;
  for (double x : xs) shifted.push_back(x - xs[0]);
  const auto ref = oracles::two_pass(shifted);
  CHECK(s.mean - xs[0] == doctest::Approx(ref.mean).epsilon(1e-6));
  CHECK(s.variance() == doctest::Approx(ref.variance).epsilon(1e-6));
}

TEST_CASE("ordinary predictive density examples") {
  GaussianStats s{2, 2.0, 2.0};  // count=2, mean=2, S^2=2
  const auto at_mean = predict_op(s, 2.0, 1e-12);
  CHECK(at_mean.log2_density == doctest::Approx(-1.8257480647361594).epsilon(1e-12));
  CHECK(std::exp2(at_mean.log2_density) == doctest::Approx(0.2820947917738781).epsilon(1e-12));

  GaussianStats unit{2, 0.0, 1.0};
  CHECK(std::exp2(predict_op(unit, 1.0, 1e-12).log2_density) ==
        doctest::Approx(0.24197072451914337).epsilon(1e-12));

  GaussianStats flat{5, 0.0, 0.0};  // constant data, floor takes over
  CHECK(std::exp2(predict_op(flat, 0.0, 1e-6).log2_density) ==
        doctest::Approx(398.9422804014327).epsilon(1e-12));
}

TEST_CASE("prediction requires two samples") {
  GaussianStats one{1, 5.0, 0.0};
  CHECK_THROWS_AS(predict_op(one, 0.0, 1e-8), DegenerateStatsError);
  CHECK_THROWS_AS(predict_ss(one, 0.0, 1e-8), DegenerateStatsError);
  CHECK_THROWS_AS(predict_ss(GaussianStats{}, 0.0, 1e-8), DegenerateStatsError);
}

TEST_CASE("sufficient-statistic density example and tails") {
  const auto s = stats_of({-1.0, 1.0});
  const auto d = predict_ss(s, 0.0, 1e-12);
  CHECK(std::exp2(d.log2_density) == doctest::Approx(0.3142696805273545).epsilon(1e-10));

  // density falls monotonically in |x| beyond the mean
  double prev = d.log2_density;
  for (double x = 0.5; x < 40.0; x += 0.5) {
    const double cur = predict_ss(s, x, 1e-12).log2_density;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("both densities integrate to one (quadrature)") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> mean_d(-10.0, 10.0);
  std::uniform_real_distribution<double> var_d(0.05, 50.0);

  for (int trial = 0; trial < 8; ++trial) {
    const std::uint64_t n = 128 + (rng() % 4000);
    GaussianStats s{n, mean_d(rng), var_d(rng) * static_cast<double>(n - 1)};
    const double scale = std::sqrt(s.variance());

    const double i_op = oracles::integrate_density(
        [&](double x) { return predict_op(s, x, 1e-12).log2_density; }, s.mean, scale);
    CHECK(i_op == doctest::Approx(1.0).epsilon(1e-4));

    const double i_ss = oracles::integrate_density(
        [&](double x) { return predict_ss(s, x, 1e-12).log2_density; }, s.mean, scale);
    CHECK(i_ss == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("ss integral at small counts equals its intrinsic constant") {
  // Pins the exact formula: with unbiased variances the integral is not 1
  // for small n but (n/(n-1))^(n/2) (n/(n+1))^((n+1)/2).
  for (std::uint64_t n : {2, 5, 10}) {
    GaussianStats s{n, 0.5, 1.7 * static_cast<double>(n - 1)};
    const double integral = oracles::integrate_density(
        [&](double x) { return predict_ss(s, x, 1e-12).log2_density; }, s.mean,
        std::sqrt(s.variance()));
    CHECK(integral == doctest::Approx(ss_norm(static_cast<double>(n))).epsilon(1e-6));
  }
}

TEST_CASE("ss density tracks the posterior-predictive quadrature oracle") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> mean_d(-5.0, 5.0);
  std::uniform_real_distribution<double> var_d(0.2, 20.0);
  std::uniform_real_distribution<double> x_off(-3.0, 3.0);

  for (int trial = 0; trial < 4; ++trial) {
    const std::uint64_t n = 2000 + (rng() % 3000);
    const double mean = mean_d(rng);
    const double var = var_d(rng);
    GaussianStats s{n, mean, var * static_cast<double>(n - 1)};
    const double x = mean + x_off(rng) * std::sqrt(var);

    const double ours = std::exp2(predict_ss(s, x, 1e-12).log2_density);
    const double oracle = oracles::posterior_predictive(n, mean, s.ssd, x);
    CHECK(ours == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("sequential ss product telescopes against from-scratch evaluation") {
  std::mt19937_64 rng(321);
  std::normal_distribution<double> noise(0.0, 2.0);
  std::vector<double> xs;
  for (int i = 0; i < 300; ++i) xs.push_back(noise(rng));

  GaussianStats running;
  running.update(xs[0]);
  running.update(xs[1]);
  double sequential = 0.0, from_scratch = 0.0;
  for (std::size_t i = 2; i < xs.size(); ++i) {
    sequential += predict_ss(running, xs[i], 1e-12).log2_density;

    const auto ref = oracles::two_pass(std::span(xs).first(i));
    GaussianStats rebuilt{i, ref.mean, ref.variance * static_cast<double>(i - 1)};
    from_scratch += predict_ss(rebuilt, xs[i], 1e-12).log2_density;

    running.update(xs[i]);
  }
  CHECK(sequential == doctest::Approx(from_scratch).epsilon(1e-10));
}

TEST_CASE("op and ss agree per-sample at length 10k and approach the entropy rate") {
  const double sigma2 = 4.0;
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
  std::vector<double> xs;
  for (int i = 0; i < 10000; ++i) xs.push_back(noise(rng));

  const double n_coded = static_cast<double>(xs.size() - 2);
  const double op = code_sequence(xs, PredictorKind::Op, 1e-12) / n_coded;
  const double ss = code_sequence(xs, PredictorKind::Ss, 1e-12) / n_coded;
  const double entropy = 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * sigma2);

  CHECK(std::abs(op - ss) < 0.01);
  CHECK(std::abs(op - entropy) < 0.05);
  CHECK(std::abs(ss - entropy) < 0.05);
}

TEST_CASE("code_sequence rejects too-short input") {
  const double xs[] = {1.0, 2.0};
  CHECK_THROWS_AS(code_sequence(xs, PredictorKind::Op, 1e-8), std::invalid_argument);
}
