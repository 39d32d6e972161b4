#pragma once

// JSON manifold files.

#include "gmslope/graph.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmslope {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ParseError on malformed input or unknown keys. Structural problems
// (cycles, wrong determinants) are left to validate().
PlumbingGraph parse_manifold(std::string_view text);
PlumbingGraph load_manifold(const std::string& path);
std::string dump_manifold(const PlumbingGraph& g);

}  // namespace gmslope
