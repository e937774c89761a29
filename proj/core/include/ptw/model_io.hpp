#ifndef PTW_MODEL_IO_HPP
#define PTW_MODEL_IO_HPP

#include <string>

#include "ptw/pattern_tree.hpp"

namespace ptw {

/// Versioned binary model file. Logged quantities (per-node count, mean,
/// ssd, log2_pe, log2_pw) round-trip bit-exactly; the routing context is
/// not persisted and must be re-seeded from the series being coded.
void save_model(const PatternTree& tree, const std::string& path);

/// Loads a frozen model. The returned tree has no routing context yet.
PatternTree load_model(const std::string& path);

}  // namespace ptw

#endif
