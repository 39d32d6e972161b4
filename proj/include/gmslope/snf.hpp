#pragma once

// Smith normal form over the integers.

#include "gmslope/arith.hpp"

#include <cstddef>
#include <vector>

namespace gmslope {

using IntMatrix = std::vector<std::vector<Integer>>;

struct SmithForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  // Non-zero diagonal entries d_1 | d_2 | ... (all positive).
  std::vector<Integer> diagonal;
  // Column transform: rowspace(R) * V = rowspace(diag). A row vector v of
  // generator coefficients has coordinates v * V in the diagonal basis.
  IntMatrix column_transform;

  std::size_t rank() const { return diagonal.size(); }
  std::vector<Integer> coordinates(const std::vector<Integer>& v) const;
};

// Rows are relations, columns are generators.
SmithForm smith_normal_form(IntMatrix relations, std::size_t cols);

}  // namespace gmslope
