#pragma once

#include <vector>

namespace phibv {

/// Dense square matrix, row-major.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  explicit SquareMatrix(std::size_t size) : n(size), data(size * size, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }
};

/// Maximum-weight perfect matching by the Hungarian method, O(n^3).
/// Returns col_of_row: row r is matched with column col_of_row[r].
std::vector<std::size_t> max_weight_assignment(const SquareMatrix& weights);

}  // namespace phibv
