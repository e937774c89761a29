#ifndef PTW_GAUSSIAN_STATS_HPP
#define PTW_GAUSSIAN_STATS_HPP

#include <cstdint>

namespace ptw {

/// Running sufficient statistics of a scalar sample set: count, mean and
/// the accumulated squared deviation from the mean (Welford update, stable
/// for |x| up to ~1e8). The unbiased sample variance is ssd/(count-1).
struct GaussianStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double ssd = 0.0;  // sum of (x_i - mean)^2; 0 while count <= 1

  void update(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    ssd += delta * (x - mean);
  }

  /// Unbiased sample variance, defined for count >= 2.
  double variance() const { return ssd / static_cast<double>(count - 1); }
};

inline GaussianStats stats_update(GaussianStats s, double x) {
  s.update(x);
  return s;
}

}  // namespace ptw

#endif
