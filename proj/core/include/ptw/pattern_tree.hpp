#ifndef PTW_PATTERN_TREE_HPP
#define PTW_PATTERN_TREE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ptw/predictor.hpp"

namespace ptw {

/// Per-node coding state. log2_pe is the log block probability under the
/// node's own predictor (running sum of its predictive log densities);
/// log2_pw is the log weighted block probability of the CTW-style mixture.
/// Raw samples are never stored.
struct NodeState {
  GaussianStats stats;
  double log2_pe = 0.0;
  double log2_pw = 0.0;
};

/// The rise/fall comparison outcomes routing one sample, depth-1 bit first.
struct PathPattern {
  std::vector<std::uint8_t> bits;

  bool operator==(const PathPattern&) const = default;
};

/// Comparison pattern of x against its D predecessors: bit at depth d is 1
/// iff x_{n-d} > x_{n-d+1}, walking the consecutive pairs backward from
/// (x_{n-1}, x). Ties route as 0. `context` holds exactly D finite values,
/// oldest first.
PathPattern route(std::span<const double> context, double x);

/// Depth-D pattern-tree coder. Nodes live in a complete binary array,
/// index 1 = root, children of i at 2i and 2i+1 (bit b selects 2i+b).
/// Each sample is routed by the pattern of its D predecessors and updates
/// exactly the D+1 nodes on that path.
class PatternTree {
 public:
  /// Builds a tree whose every node is seeded with the mean/variance of the
  /// D context samples at pseudo-count 2, so predictions are immediately
  /// valid. A context with fewer than 2 samples (or zero spread) seeds
  /// variance = floor.
  PatternTree(std::uint32_t depth, std::span<const double> context,
              PredictorKind kind, double floor);

  /// Routes x, updates the root-to-leaf path (stats skipped when frozen,
  /// block probabilities always accumulated), advances the context window,
  /// and returns the root's log2 weighted-probability increment.
  double update(double x);

  /// Stops parameter adaptation; codelengths keep accruing under the
  /// frozen model. Idempotent.
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  /// -log2 of the root's weighted block probability, in bits
  /// (differential codelength).
  double codelength() const { return -nodes_[1].log2_pw; }

  /// Replaces the routing context (e.g. after loading a serialized model,
  /// whose file does not carry a context window).
  void reset_context(std::span<const double> context);
  bool context_ready() const { return context_ready_; }

  std::uint32_t depth() const { return depth_; }
  PredictorKind kind() const { return kind_; }
  double floor() const { return floor_; }
  std::uint64_t samples_coded() const { return samples_coded_; }

  /// Node access, 1-based; index() of the array is 2^{depth+1}-1 nodes.
  std::size_t node_count() const { return nodes_.size() - 1; }
  const NodeState& node(std::size_t index) const { return nodes_[index]; }

  /// Samples actually routed through a node (the seeding pseudo-count is
  /// excluded).
  std::uint64_t node_observed(std::size_t index) const {
    return nodes_[index].stats.count - kSeedCount;
  }

  /// Pseudo-count injected into every node by context seeding.
  static constexpr std::uint64_t kSeedCount = 2;

 private:
  friend class ModelCodec;

  std::uint32_t depth_;
  PredictorKind kind_;
  double floor_;
  bool frozen_ = false;
  bool context_ready_ = false;
  std::uint64_t samples_coded_ = 0;
  std::vector<NodeState> nodes_;   // slot 0 unused
  std::vector<double> context_;    // ring buffer of the last D samples
  std::size_t context_head_ = 0;   // index of the oldest sample

  double context_at(std::size_t logical) const {
    return context_[(context_head_ + logical) % context_.size()];
  }
};

inline std::pair<PatternTree, double> tree_update(PatternTree t, double x) {
  const double cond = t.update(x);
  return {std::move(t), cond};
}

inline PatternTree tree_freeze(PatternTree t) {
  t.freeze();
  return t;
}

inline double tree_codelength(const PatternTree& t) { return t.codelength(); }

/// log2(a + b) for log-domain a, b (base-2 logs).
double log2_add(double log2_a, double log2_b);

}  // namespace ptw

#endif
