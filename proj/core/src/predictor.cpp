#include "ptw/predictor.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ptw {

namespace {

constexpr double kLog2E = std::numbers::log2e;

// lgamma at half-integer arguments dominates the sufficient-statistic hot
// path; counts are integers, so cache lgamma(m/2) for small m. Entries are
// produced by std::lgamma itself, keeping results bit-identical.
constexpr std::size_t kLgammaCacheSize = 1 << 16;

double lgamma_half(std::uint64_t m) {
  static const std::vector<double> cache = [] {
    std::vector<double> v(kLgammaCacheSize);
    for (std::size_t i = 1; i < v.size(); ++i) {
      v[i] = std::lgamma(static_cast<double>(i) / 2.0);
    }
    return v;
  }();
  if (m < kLgammaCacheSize) return cache[m];
  return std::lgamma(static_cast<double>(m) / 2.0);
}

double floored_variance(const GaussianStats& s, double floor) {
  return std::max(s.variance(), floor);
}

void require_predictable(const GaussianStats& s) {
  if (s.count < 2) {
    throw DegenerateStatsError(
        "predictor needs at least two samples (count=" + std::to_string(s.count) + ")");
  }
}

}  // namespace

PredictorKind predictor_kind_from_string(const std::string& name) {
  if (name == "op") return PredictorKind::Op;
  if (name == "ss") return PredictorKind::Ss;
  throw std::invalid_argument("unknown predictor kind: " + name);
}

const char* to_string(PredictorKind kind) {
  return kind == PredictorKind::Op ? "op" : "ss";
}

PredictiveDensity predict_op(const GaussianStats& s, double x_next, double floor) {
  require_predictable(s);
  const double var = floored_variance(s, floor);
  const double d = x_next - s.mean;
  const double log2_density =
      -0.5 * std::log2(2.0 * std::numbers::pi * var) - kLog2E * d * d / (2.0 * var);
  return {log2_density};
}

PredictiveDensity predict_ss(const GaussianStats& s, double x_next, double floor) {
  require_predictable(s);
  const double n = static_cast<double>(s.count);
  const double var_n = floored_variance(s, floor);

  // Sample variance after hypothetically appending x_next.
  const double new_mean = (n * s.mean + x_next) / (n + 1.0);
  const double ssd_next = s.ssd + (x_next - s.mean) * (x_next - new_mean);
  const double var_next = std::max(ssd_next / n, floor);

  const double log2_density =
      0.5 * std::log2(n / (std::numbers::pi * (n + 1.0))) +
      kLog2E * (lgamma_half(s.count + 1) - lgamma_half(s.count)) +
      (n / 2.0) * std::log2(n * var_n) -
      ((n + 1.0) / 2.0) * std::log2((n + 1.0) * var_next);
  return {log2_density};
}

PredictiveDensity predict(const GaussianStats& s, double x_next, double floor,
                          PredictorKind kind) {
  return kind == PredictorKind::Op ? predict_op(s, x_next, floor)
                                   : predict_ss(s, x_next, floor);
}

double code_sequence(std::span<const double> samples, PredictorKind kind, double floor) {
  if (samples.size() < 3) {
    throw std::invalid_argument("code_sequence needs at least 3 samples");
  }
  GaussianStats s;
  s.update(samples[0]);
  s.update(samples[1]);
  double bits = 0.0;
  for (std::size_t i = 2; i < samples.size(); ++i) {
    bits -= predict(s, samples[i], floor, kind).log2_density;
    s.update(samples[i]);
  }
  return bits;
}

}  // namespace ptw
