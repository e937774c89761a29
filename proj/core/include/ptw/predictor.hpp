#ifndef PTW_PREDICTOR_HPP
#define PTW_PREDICTOR_HPP

#include <span>
#include <stdexcept>
#include <string>

#include "ptw/gaussian_stats.hpp"

namespace ptw {

/// Thrown when a prediction is requested from statistics with fewer than
/// two samples and no seeded initialization.
struct DegenerateStatsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PredictorKind : std::uint8_t { Op = 0, Ss = 1 };

PredictorKind predictor_kind_from_string(const std::string& name);
const char* to_string(PredictorKind kind);

/// Base-2 log of a one-step predictive density evaluated at the next sample.
struct PredictiveDensity {
  double log2_density;
};

/// Ordinary predictive Gaussian plug-in density: N(mean, S^2) evaluated at
/// x_next, with S^2 floored at `floor` to keep constant runs codable.
/// Requires count >= 2.
PredictiveDensity predict_op(const GaussianStats& s, double x_next, double floor);

/// Sufficient-statistic predictive density. Evaluated entirely in the log
/// domain via lgamma; both the current and the hypothetically extended
/// sample variance are floored at `floor`. Requires count >= 2.
PredictiveDensity predict_ss(const GaussianStats& s, double x_next, double floor);

PredictiveDensity predict(const GaussianStats& s, double x_next, double floor,
                          PredictorKind kind);

/// Codes samples sequentially with the chosen predictor, seeding the
/// statistics from the first two samples (which are not coded). Returns the
/// total codelength in bits of samples[2..n). Used as the depth-0 reference
/// coder in tests and by the predictor acceptance checks.
double code_sequence(std::span<const double> samples, PredictorKind kind, double floor);

}  // namespace ptw

#endif
