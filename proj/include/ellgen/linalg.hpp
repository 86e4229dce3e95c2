#pragma once

#include <cstddef>
#include <vector>

#include "ellgen/cyclo.hpp"

namespace ellgen {

using CycloRow = std::vector<Cyclo>;

/// Reduced row echelon form. Pivots are taken at the leftmost possible
/// columns and normalized to 1; rows are ordered by pivot column.
struct Echelon {
  std::vector<CycloRow> rows;
  std::vector<std::size_t> pivots;
  /// rows[r] = sum_i transform[r][i] * input[i] when tracking was requested.
  std::vector<CycloRow> transform;

  std::size_t rank() const { return rows.size(); }
};

/// All rows must share the same field and length.
Echelon row_reduce(const std::vector<CycloRow>& input, bool track_transform = false);

}  // namespace ellgen
