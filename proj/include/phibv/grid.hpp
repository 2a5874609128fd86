#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace phibv {

/// A real function known only at the points of a strictly increasing grid
/// 0 = t_0 < ... < t_m = 1. Nothing downstream interpolates between points.
class GridFunction {
 public:
  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t points() const noexcept { return grid_.size(); }
  std::size_t cells() const noexcept { return grid_.size() - 1; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Same grid, new values (validated).
  GridFunction with_values(std::vector<double> values) const;
  GridFunction scaled(double factor) const;
  bool same_grid(const GridFunction& other) const noexcept { return grid_ == other.grid_; }

 private:
  friend GridFunction make_grid_function(std::vector<double> grid, std::vector<double> values);
  GridFunction() = default;

  std::vector<double> grid_;
  std::vector<double> values_;
};

/// Throws Error(BadGrid) on unsorted or wrong-endpoint grids and non-finite values.
GridFunction make_grid_function(std::vector<double> grid, std::vector<double> values);

/// Uniform grid with `cells` cells; endpoints are exactly 0 and 1.
std::vector<double> uniform_grid(std::size_t cells);

/// x - y on their common grid; throws Error(MixedGrids) otherwise.
GridFunction difference(const GridFunction& x, const GridFunction& y);
GridFunction sum(const GridFunction& x, const GridFunction& y);

double sup_norm(const GridFunction& x);

/// Closed grid interval [t_a, t_b] given by point indices, a <= b.
struct GridInterval {
  std::size_t a = 0;
  std::size_t b = 0;

  bool degenerate() const noexcept { return a == b; }
  auto operator<=>(const GridInterval&) const = default;
};

/// x(b) - x(a).
inline double increment(const GridFunction& x, GridInterval iv) { return x[iv.b] - x[iv.a]; }

/// A finite set of grid intervals, kept sorted by (a, b) without duplicates.
class IntervalFamily {
 public:
  IntervalFamily() = default;
  explicit IntervalFamily(std::vector<GridInterval> intervals);

  const std::vector<GridInterval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  bool empty() const noexcept { return intervals_.empty(); }
  bool contains(GridInterval iv) const;
  /// Returns false when already present.
  bool insert(GridInterval iv);
  bool erase(GridInterval iv);
  IntervalFamily united(const IntervalFamily& other) const;
  bool subset_of(const IntervalFamily& other) const;

  auto begin() const { return intervals_.begin(); }
  auto end() const { return intervals_.end(); }

  bool operator==(const IntervalFamily&) const = default;

 private:
  std::vector<GridInterval> intervals_;
};

/// Every non-degenerate interval [t_a, t_b], a < b, of a grid with `points` points.
IntervalFamily all_intervals(std::size_t points);
IntervalFamily all_intervals(const GridFunction& x);

/// Throws Error(BadGrid) if an interval reaches past `points`.
void check_family(const IntervalFamily& family, std::size_t points);

/// Ordered list of intervals; assignment[i] is the 1-based Young index applied
/// to intervals[i]. An empty assignment means positional (i + 1).
struct IntervalSelection {
  std::vector<GridInterval> intervals;
  std::vector<int> assignment;

  std::size_t size() const noexcept { return intervals.size(); }
  int phi_index(std::size_t i) const {
    return assignment.empty() ? static_cast<int>(i) + 1 : assignment[i];
  }
};

/// True iff, sorted by left index, each right index is <= the next left index.
bool is_nonoverlapping(std::span<const GridInterval> intervals);
inline bool is_nonoverlapping(const IntervalSelection& sel) { return is_nonoverlapping(sel.intervals); }

/// True iff the intervals chain from t_0 to t_{points-1} without gaps.
bool covers_unit_interval(std::span<const GridInterval> intervals, std::size_t points);

}  // namespace phibv
