#include "ptw/pattern_tree.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptw {

double log2_add(double log2_a, double log2_b) {
  if (log2_a < log2_b) std::swap(log2_a, log2_b);
  const double diff = log2_b - log2_a;  // <= 0
  if (diff < -1075.0) return log2_a;
  return log2_a + std::log1p(std::exp2(diff)) * std::numbers::log2e;
}

PathPattern route(std::span<const double> context, double x) {
  const std::size_t d = context.size();
  PathPattern p;
  p.bits.resize(d);
  double next = x;
  for (std::size_t depth = 1; depth <= d; ++depth) {
    const double prev = context[d - depth];
    p.bits[depth - 1] = prev > next ? 1 : 0;
    next = prev;
  }
  return p;
}

PatternTree::PatternTree(std::uint32_t depth, std::span<const double> context,
                         PredictorKind kind, double floor)
    : depth_(depth), kind_(kind), floor_(floor) {
  if (floor <= 0.0) throw std::invalid_argument("variance floor must be positive");
  if (depth > 30) throw std::invalid_argument("tree depth limited to 30");
  if (context.size() != depth) {
    throw std::invalid_argument("context must hold exactly D samples");
  }
  for (double c : context) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite context sample");
  }

  double mean = 0.0;
  for (double c : context) mean += c;
  if (!context.empty()) mean /= static_cast<double>(context.size());

  double var = floor;
  if (context.size() >= 2) {
    double ssd = 0.0;
    for (double c : context) ssd += (c - mean) * (c - mean);
    var = ssd / static_cast<double>(context.size() - 1);
    if (var <= 0.0) var = floor;
  }

  NodeState seeded;
  seeded.stats.count = kSeedCount;
  seeded.stats.mean = mean;
  seeded.stats.ssd = var * static_cast<double>(kSeedCount - 1);
  nodes_.assign((std::size_t{2} << depth), seeded);  // slot 0 unused

  context_.assign(context.begin(), context.end());
  context_head_ = 0;
  context_ready_ = true;
}

void PatternTree::reset_context(std::span<const double> context) {
  if (context.size() != depth_) {
    throw std::invalid_argument("context must hold exactly D samples");
  }
  for (double c : context) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite context sample");
  }
  context_.assign(context.begin(), context.end());
  context_head_ = 0;
  context_ready_ = true;
}

double PatternTree::update(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite sample");
  if (!context_ready_) throw std::logic_error("routing context not established");

  // Root-to-leaf path, bit at depth d compares x_{n-d} with x_{n-d+1}.
  std::size_t path[64];
  path[0] = 1;
  double next = x;
  for (std::uint32_t d = 1; d <= depth_; ++d) {
    const double prev = context_at(depth_ - d);
    path[d] = 2 * path[d - 1] + (prev > next ? 1 : 0);
    next = prev;
  }

  double root_density = 0.0;
  for (std::uint32_t d = 0; d <= depth_; ++d) {
    NodeState& node = nodes_[path[d]];
    const double log2_density = predict(node.stats, x, floor_, kind_).log2_density;
    if (d == 0) root_density = log2_density;
    node.log2_pe += log2_density;
    if (!frozen_) node.stats.update(x);
  }

  const double old_root_pw = nodes_[1].log2_pw;
  for (std::uint32_t d = depth_ + 1; d-- > 0;) {
    NodeState& node = nodes_[path[d]];
    if (d == depth_) {
      node.log2_pw = node.log2_pe;
    } else {
      const double children = nodes_[2 * path[d]].log2_pw + nodes_[2 * path[d] + 1].log2_pw;
      node.log2_pw = log2_add(node.log2_pe, children) - 1.0;
    }
  }

  if (depth_ > 0) {
    context_[context_head_] = x;  // overwrite the oldest sample
    context_head_ = (context_head_ + 1) % context_.size();
  }
  ++samples_coded_;
  // At depth 0 the root is the leaf and its conditional is the predictive
  // density itself; the block difference would only add rounding.
  return depth_ == 0 ? root_density : nodes_[1].log2_pw - old_root_pw;
}

}  // namespace ptw
