#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ptw/pattern_tree.hpp"
#include "ptw/synth.hpp"

using namespace ptw;

namespace {

const MixtureSpec kBeats{{0.9, 0.1}, {{800.0, 900.0}, {400.0, 400.0}}};

}

TEST_CASE("generators are deterministic in the seed") {
  const auto a = gen_gaussian(256, 1.0, 2.0, 42);
  const auto b = gen_gaussian(256, 1.0, 2.0, 42);
  const auto c = gen_gaussian(256, 1.0, 2.0, 43);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(gen_gaussian(1, 0.0, 1.0, 9).size() == 1);
  CHECK(std::isfinite(gen_gaussian(1, 0.0, 1.0, 9)[0]));
}

TEST_CASE("gaussian sample moments match the target law") {
  const auto xs = gen_gaussian(100000, 0.0, 4.0, 7);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size() - 1);
  CHECK(std::abs(mean - 0.0) < 0.05);
  CHECK(std::abs(var - 4.0) < 0.1);
}

TEST_CASE("a one-component mixture replays the gaussian stream") {
  MixtureSpec spec{{1.0}, {{-2.0, 9.0}}};
  const auto mix = gen_mixture(512, spec, 2718);
  CHECK(mix.values == gen_gaussian(512, -2.0, 9.0, 2718));
  CHECK(std::all_of(mix.states.begin(), mix.states.end(),
                    [](std::uint32_t z) { return z == 0; }));
}

TEST_CASE("mixture component fractions and moments") {
  const std::size_t n = 100000;
  const auto mix = gen_mixture(n, kBeats, 99);

  double frac1 = 0.0;
  for (auto z : mix.states) frac1 += z;
  frac1 /= static_cast<double>(n);
  CHECK(std::abs(frac1 - 0.1) < 0.02);

  const double want_mean = 0.9 * 800.0 + 0.1 * 400.0;
  const double want_var =
      0.9 * (900.0 + 800.0 * 800.0) + 0.1 * (400.0 + 400.0 * 400.0) - want_mean * want_mean;
  double mean = 0.0;
  for (double x : mix.values) mean += x;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double x : mix.values) var += (x - mean) * (x - mean);
  var /= static_cast<double>(n - 1);

  // three standard errors of each empirical moment
  const double se_mean = std::sqrt(want_var / static_cast<double>(n));
  const double kurt_term = 3.0 * want_var * want_var;  // gaussian-mixture proxy
  const double se_var = std::sqrt(2.0 * kurt_term / static_cast<double>(n));
  CHECK(std::abs(mean - want_mean) < 3.0 * se_mean);
  CHECK(std::abs(var - want_var) < 3.0 * se_var);
}

TEST_CASE("well-separated two-component histogram is bimodal") {
  const auto mix = gen_mixture(100000, kBeats, 4);
  const auto [lo_it, hi_it] = std::minmax_element(mix.values.begin(), mix.values.end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<int> bins(100, 0);
  for (double x : mix.values) {
    auto b = static_cast<std::size_t>((x - lo) / (hi - lo) * 99.999);
    ++bins[b];
  }
  const auto bin_of = [&](double x) {
    return static_cast<std::size_t>((x - lo) / (hi - lo) * 99.999);
  };
  const int peak_low = *std::max_element(bins.begin() + bin_of(350.0), bins.begin() + bin_of(450.0));
  const int peak_high = *std::max_element(bins.begin() + bin_of(700.0), bins.begin() + bin_of(900.0));
  const int valley = *std::min_element(bins.begin() + bin_of(500.0), bins.begin() + bin_of(650.0));
  CHECK(valley < peak_low / 4);
  CHECK(valley < peak_high / 4);
}

TEST_CASE("composite concatenation, labels and degenerate cases") {
  const std::vector<SegmentSpec> segments = {
      {GaussianSegment{0.0, 4.0}, 2000}, {SinusoidSegment{2.0, 50.0, 0.0}, 400},
      {GaussianSegment{0.0, 4.0}, 2000}, {GaussianSegment{0.0, 1.0}, 400},
      {GaussianSegment{0.0, 4.0}, 2000}};
  const auto c = gen_composite(segments, 31);
  CHECK(c.values.size() == 6800);
  REQUIRE(c.labels.size() == 5);
  CHECK(c.labels[1].start == 2000);
  CHECK(c.labels[1].length == 400);
  CHECK(c.labels[1].kind == "sinusoid");
  CHECK(c.labels[3].start == 4400);
  CHECK(c.labels[3].length == 400);

  // single segment equals the bare generator with the derived stream
  const auto single = gen_composite({{GaussianSegment{1.0, 2.0}, 64}}, 5);
  CHECK(single.labels.size() == 1);
  CHECK(single.values.size() == 64);

  const auto flat = gen_composite({{SinusoidSegment{0.0, 25.0, 1.0}, 32}}, 5);
  CHECK(std::all_of(flat.values.begin(), flat.values.end(),
                    [](double v) { return v == 0.0; }));

  CHECK_THROWS_AS(gen_composite({}, 1), std::invalid_argument);
}

TEST_CASE("a depth-one pattern splits off all premature-like beats") {
  // every short RR interval follows a long one, so its depth-1 bit is
  // 'drop'; the drop child collects all of them (plus some normal beats)
  const auto mix = gen_mixture(2000, kBeats, 12);
  std::size_t premature_after_normal = 0;
  bool all_drops = true;
  for (std::size_t i = 1; i < mix.values.size(); ++i) {
    if (mix.states[i] == 1 && mix.states[i - 1] == 0) {
      ++premature_after_normal;
      const double prev = mix.values[i - 1];
      all_drops &= route(std::span(&prev, 1), mix.values[i]).bits[0] == 1;
    }
  }
  CHECK(premature_after_normal > 100);
  CHECK(all_drops);
}
