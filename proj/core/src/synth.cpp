#include "ptw/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ptw {

namespace {

double uniform_open(std::mt19937_64& rng) {
  // (0, 1]: keeps log(u) finite in Box-Muller.
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

double normal_draw(std::mt19937_64& rng) {
  const double u1 = uniform_open(rng);
  const double u2 = uniform_open(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint32_t draw_state(std::mt19937_64& rng, const std::vector<double>& weights) {
  const double u = uniform_open(rng);
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    acc += weights[k];
    if (u <= acc) return static_cast<std::uint32_t>(k);
  }
  return static_cast<std::uint32_t>(weights.size() - 1);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

void MixtureSpec::validate() const {
  if (weights.empty() || weights.size() != components.size()) {
    throw std::invalid_argument("mixture needs matching, nonempty weights/components");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0 || w > 1.0) throw std::invalid_argument("mixture weight outside [0,1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }
  for (const auto& c : components) {
    if (!(c.variance > 0.0)) throw std::invalid_argument("component variance must be positive");
  }
}

MixtureDraw gen_mixture(std::size_t n, const MixtureSpec& spec, std::uint64_t seed) {
  spec.validate();
  MixtureDraw out;
  out.values.resize(n);
  out.states.resize(n);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t z = draw_state(rng, spec.weights);
    const auto& c = spec.components[z];
    out.states[i] = z;
    out.values[i] = c.mean + std::sqrt(c.variance) * normal_draw(rng);
  }
  return out;
}

std::vector<double> gen_gaussian(std::size_t n, double mu, double sigma2,
                                 std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
  MixtureSpec spec{{1.0}, {{mu, sigma2}}};
  return gen_mixture(n, spec, seed).values;
}

Composite gen_composite(const std::vector<SegmentSpec>& segments, std::uint64_t seed) {
  if (segments.empty()) throw std::invalid_argument("need at least one segment");
  Composite out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    const std::uint64_t seg_seed = splitmix64(seed ^ splitmix64(i));
    std::vector<double> values;
    std::string kind;
    if (const auto* g = std::get_if<GaussianSegment>(&seg.source)) {
      values = gen_gaussian(seg.length, g->mu, g->sigma2, seg_seed);
      kind = "gaussian";
    } else if (const auto* m = std::get_if<MixtureSegment>(&seg.source)) {
      values = gen_mixture(seg.length, m->spec, seg_seed).values;
      kind = "mixture";
    } else {
      const auto& s = std::get<SinusoidSegment>(seg.source);
      if (!(s.period > 0.0)) throw std::invalid_argument("sinusoid period must be positive");
      values.resize(seg.length);
      for (std::size_t t = 0; t < seg.length; ++t) {
        values[t] = s.amplitude *
                    std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / s.period +
                             s.phase);
      }
      kind = "sinusoid";
    }
    out.labels.push_back({start, seg.length, kind});
    out.values.insert(out.values.end(), values.begin(), values.end());
    start += seg.length;
  }
  return out;
}

}  // namespace ptw
