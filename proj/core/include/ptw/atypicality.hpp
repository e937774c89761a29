#ifndef PTW_ATYPICALITY_HPP
#define PTW_ATYPICALITY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ptw/pattern_tree.hpp"

namespace ptw {

/// Universal integer codelength in bits: log2(c0) plus the sum of iterated
/// base-2 logs of k while they stay positive (c0 = 2.865064).
double log_star(std::uint64_t k);

struct ScanConfig {
  double tau = 40.0;                           // header cost in bits
  std::vector<std::uint32_t> depths = {1, 2, 3, 4, 5, 6};
  std::size_t max_len = 250;                   // longest candidate subsequence
  std::size_t stride = 1;                      // start-index spacing
  double floor = 1e-8;                         // variance floor
  PredictorKind predictor_kind = PredictorKind::Ss;
  unsigned workers = 1;

  void validate() const;
};

struct AtypicalBits {
  double bits;
  std::uint32_t best_depth;
};

/// Self-description cost of a segment: for each candidate depth D a fresh
/// tree is seeded from the segment's first D samples and codes the rest;
/// the minimum of codelength + log_star(D+1) over depths, plus log_star(l).
/// Depth D is carried as the integer D+1 so depth 0 stays codable. The
/// header cost tau is not included.
AtypicalBits atypical_codelength(std::span<const double> segment, const ScanConfig& cfg);

/// Codelength increment of samples [n, n+l) under a copy of the frozen
/// coder, which must already have been advanced through samples 0..n-1.
double typical_codelength(const PatternTree& coder, std::span<const double> series,
                          std::size_t n, std::size_t l);

struct DeltaPoint {
  std::size_t start;
  double delta_bits;     // min over (l, D) of L_A - L_T
  std::size_t best_len;  // minimizing l
  std::uint32_t best_depth;
};

using DeltaTrace = std::vector<DeltaPoint>;

struct AtypicalSegment {
  std::size_t start;
  std::size_t length;
  double score_bits;  // < -tau for every emitted segment
};

struct ScanResult {
  DeltaTrace trace;
  std::vector<AtypicalSegment> segments;
  std::uint64_t predictor_evals = 0;  // exact count across all coders
};

/// Scans every start index (step = stride) from the first position where
/// the frozen typical coder is warmed up. Flags starts with
/// delta_bits < -tau; overlapping flagged candidate segments merge into one
/// keeping the minimum score. Results are independent of cfg.workers.
ScanResult scan(std::span<const double> series, const PatternTree& typical,
                const ScanConfig& cfg);

}  // namespace ptw

#endif
