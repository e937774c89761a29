#ifndef PTW_SYNTH_HPP
#define PTW_SYNTH_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ptw {

struct MixtureComponent {
  double mean;
  double variance;
};

/// Finite Gaussian mixture: weights sum to 1 (within 1e-12), all component
/// variances positive.
struct MixtureSpec {
  std::vector<double> weights;
  std::vector<MixtureComponent> components;

  std::size_t size() const { return weights.size(); }
  void validate() const;
};

struct MixtureDraw {
  std::vector<double> values;
  std::vector<std::uint32_t> states;  // latent component index per sample
};

/// n i.i.d. N(mu, sigma2) samples, deterministic per seed. Shares the draw
/// protocol of gen_mixture (it is the K=1 mixture), so equal seeds give
/// equal streams across the two entry points.
std::vector<double> gen_gaussian(std::size_t n, double mu, double sigma2,
                                 std::uint64_t seed);

/// Mixture sampling: z ~ weights, then x ~ N(mean_z, variance_z). Latent
/// states are returned so tests can check partitioning against ground truth.
MixtureDraw gen_mixture(std::size_t n, const MixtureSpec& spec, std::uint64_t seed);

struct GaussianSegment {
  double mu;
  double sigma2;
};
struct MixtureSegment {
  MixtureSpec spec;
};
struct SinusoidSegment {
  double amplitude;
  double period;
  double phase;
};

struct SegmentSpec {
  std::variant<GaussianSegment, MixtureSegment, SinusoidSegment> source;
  std::size_t length;
};

struct SegmentLabel {
  std::size_t start;
  std::size_t length;
  std::string kind;  // "gaussian", "mixture" or "sinusoid"
};

struct Composite {
  std::vector<double> values;
  std::vector<SegmentLabel> labels;
};

/// Concatenates the segments; each segment draws from an independent stream
/// derived from (seed, segment index), so a segment's samples do not depend
/// on the lengths of the segments before it.
Composite gen_composite(const std::vector<SegmentSpec>& segments, std::uint64_t seed);

}  // namespace ptw

#endif
