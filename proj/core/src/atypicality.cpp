#include "ptw/atypicality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ptw {

double log_star(std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("log_star needs k >= 1");
  constexpr double kC0 = 2.865064;
  double bits = std::log2(kC0);
  double term = std::log2(static_cast<double>(k));
  while (term > 0.0) {
    bits += term;
    term = std::log2(term);
  }
  return bits;
}

void ScanConfig::validate() const {
  if (depths.empty()) throw std::invalid_argument("candidate depth set is empty");
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be nonnegative");
  if (!(floor > 0.0)) throw std::invalid_argument("variance floor must be positive");
  const std::uint32_t dmax = *std::max_element(depths.begin(), depths.end());
  if (max_len < static_cast<std::size_t>(dmax) + 2) {
    throw std::invalid_argument("max_len must be at least max(depths) + 2");
  }
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

AtypicalBits atypical_codelength(std::span<const double> segment, const ScanConfig& cfg) {
  cfg.validate();
  const std::size_t l = segment.size();
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t best_depth = 0;
  bool feasible = false;
  for (std::uint32_t d : cfg.depths) {
    if (l < static_cast<std::size_t>(d) + 2) continue;
    feasible = true;
    PatternTree tree(d, segment.first(d), cfg.predictor_kind, cfg.floor);
    for (std::size_t i = d; i < l; ++i) tree.update(segment[i]);
    const double bits = tree.codelength() + log_star(d + 1);
    if (bits < best) {
      best = bits;
      best_depth = d;
    }
  }
  if (!feasible) {
    throw std::invalid_argument("segment too short for every candidate depth");
  }
  return {best + log_star(l), best_depth};
}

double typical_codelength(const PatternTree& coder, std::span<const double> series,
                          std::size_t n, std::size_t l) {
  if (!coder.frozen()) throw std::invalid_argument("typical coder must be frozen");
  if (n > series.size() || l > series.size() - n) {
    throw std::out_of_range("segment exceeds series bounds");
  }
  PatternTree copy = coder;
  double bits = 0.0;
  for (std::size_t i = n; i < n + l; ++i) bits -= copy.update(series[i]);
  return bits;
}

namespace {

// Per-start minimization of L_A(n,l) - L_T(n,l) over l and D. One growing
// tree per candidate depth makes the sweep over l O(1) amortized per l.
DeltaPoint scan_start(std::span<const double> series, std::size_t n,
                      const ScanConfig& cfg, std::span<const double> prefix,
                      std::size_t l_max, std::uint64_t& evals) {
  struct Candidate {
    PatternTree tree;
    std::uint32_t depth;
    double bits = 0.0;
  };
  std::vector<Candidate> cands;
  cands.reserve(cfg.depths.size());
  for (std::uint32_t d : cfg.depths) {
    if (l_max < static_cast<std::size_t>(d) + 2) continue;
    cands.push_back({PatternTree(d, series.subspan(n, d), cfg.predictor_kind, cfg.floor),
                     d, 0.0});
  }

  DeltaPoint point{n, std::numeric_limits<double>::infinity(), 0, 0};
  for (std::size_t l = 1; l <= l_max; ++l) {
    const double x = series[n + l - 1];
    double best_atypical = std::numeric_limits<double>::infinity();
    std::uint32_t best_depth = 0;
    for (auto& c : cands) {
      if (l <= c.depth) continue;  // sample still inside this tree's context
      c.bits -= c.tree.update(x);
      evals += c.depth + 1;
      if (l < static_cast<std::size_t>(c.depth) + 2) continue;
      const double bits = c.bits + log_star(c.depth + 1);
      if (bits < best_atypical) {
        best_atypical = bits;
        best_depth = c.depth;
      }
    }
    if (!std::isfinite(best_atypical)) continue;
    const double atypical = best_atypical + log_star(l);
    const double typical = prefix[n + l] - prefix[n];
    const double delta = atypical - typical;
    if (delta < point.delta_bits) {
      point.delta_bits = delta;
      point.best_len = l;
      point.best_depth = best_depth;
    }
  }
  return point;
}

}  // namespace

ScanResult scan(std::span<const double> series, const PatternTree& typical,
                const ScanConfig& cfg) {
  cfg.validate();
  if (!typical.frozen()) throw std::invalid_argument("typical coder must be frozen");
  if (series.size() < cfg.max_len) {
    throw std::invalid_argument("series shorter than max_len");
  }

  const std::size_t n_samples = series.size();
  const std::size_t d_typical = typical.depth();
  const std::uint32_t d_min = *std::min_element(cfg.depths.begin(), cfg.depths.end());
  const std::size_t l_min = static_cast<std::size_t>(d_min) + 2;
  if (n_samples < d_typical + l_min) {
    throw std::invalid_argument("series too short for the typical coder depth");
  }

  ScanResult result;

  // Frozen per-sample conditionals over the whole series; the first
  // d_typical samples only establish the routing context. prefix[j] is the
  // cumulative codelength of samples d_typical..j-1.
  std::vector<double> prefix(n_samples + 1, 0.0);
  {
    PatternTree coder = typical;
    coder.reset_context(series.first(d_typical));
    for (std::size_t i = d_typical; i < n_samples; ++i) {
      prefix[i + 1] = prefix[i] - coder.update(series[i]);
    }
    result.predictor_evals += (n_samples - d_typical) * (d_typical + 1);
  }

  std::vector<std::size_t> starts;
  for (std::size_t n = d_typical; n + l_min <= n_samples; n += cfg.stride) {
    starts.push_back(n);
  }

  result.trace.resize(starts.size());
  const unsigned workers = std::min<unsigned>(
      cfg.workers, std::max<std::size_t>(std::size_t{1}, starts.size()));
  std::vector<std::uint64_t> eval_counts(workers, 0);

  auto worker_body = [&](unsigned w) {
    for (std::size_t s = w; s < starts.size(); s += workers) {
      const std::size_t n = starts[s];
      const std::size_t l_max = std::min(cfg.max_len, n_samples - n);
      result.trace[s] =
          scan_start(series, n, cfg, prefix, l_max, eval_counts[w]);
    }
  };
  if (workers == 1) {
    worker_body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_body, w);
    for (auto& t : pool) t.join();
  }
  for (std::uint64_t c : eval_counts) result.predictor_evals += c;

  // Flag and merge overlapping candidates, keeping the minimum score.
  bool open = false;
  std::size_t seg_start = 0, seg_end = 0;
  double seg_score = 0.0;
  for (const DeltaPoint& p : result.trace) {
    if (!(p.delta_bits < -cfg.tau)) continue;
    const std::size_t end = p.start + p.best_len;
    if (open && p.start < seg_end) {
      seg_end = std::max(seg_end, end);
      seg_score = std::min(seg_score, p.delta_bits);
    } else {
      if (open) result.segments.push_back({seg_start, seg_end - seg_start, seg_score});
      open = true;
      seg_start = p.start;
      seg_end = end;
      seg_score = p.delta_bits;
    }
  }
  if (open) result.segments.push_back({seg_start, seg_end - seg_start, seg_score});

  return result;
}

}  // namespace ptw
