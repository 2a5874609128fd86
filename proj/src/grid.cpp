#include "phibv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phibv/error.hpp"

namespace phibv {
namespace {

void check_values(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(ErrorKind::BadGrid, "non-finite value at index " + std::to_string(i));
  }
}

}  // namespace

GridFunction make_grid_function(std::vector<double> grid, std::vector<double> values) {
  if (grid.size() < 2) throw Error(ErrorKind::BadGrid, "grid needs at least two points");
  if (grid.size() != values.size()) throw Error(ErrorKind::BadGrid, "grid and values differ in length");
  if (grid.front() != 0.0 || grid.back() != 1.0) throw Error(ErrorKind::BadGrid, "grid must start at 0 and end at 1");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw Error(ErrorKind::BadGrid, "grid not strictly increasing at index " + std::to_string(i));
  }
  check_values(values);
  GridFunction x;
  x.grid_ = std::move(grid);
  x.values_ = std::move(values);
  return x;
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
  if (values.size() != grid_.size()) throw Error(ErrorKind::BadGrid, "grid and values differ in length");
  check_values(values);
  GridFunction x;
  x.grid_ = grid_;
  x.values_ = std::move(values);
  return x;
}

GridFunction GridFunction::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& e : v) e *= factor;
  return with_values(std::move(v));
}

std::vector<double> uniform_grid(std::size_t cells) {
  if (cells == 0) throw Error(ErrorKind::BadGrid, "grid needs at least one cell");
  std::vector<double> g(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) g[i] = static_cast<double>(i) / static_cast<double>(cells);
  g.back() = 1.0;
  return g;
}

GridFunction difference(const GridFunction& x, const GridFunction& y) {
  if (!x.same_grid(y)) throw Error(ErrorKind::MixedGrids, "difference of functions on different grids");
  std::vector<double> v(x.points());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x[i] - y[i];
  return x.with_values(std::move(v));
}

GridFunction sum(const GridFunction& x, const GridFunction& y) {
  if (!x.same_grid(y)) throw Error(ErrorKind::MixedGrids, "sum of functions on different grids");
  std::vector<double> v(x.points());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x[i] + y[i];
  return x.with_values(std::move(v));
}

double sup_norm(const GridFunction& x) {
  double m = 0.0;
  for (double v : x.values()) m = std::max(m, std::abs(v));
  return m;
}

IntervalFamily::IntervalFamily(std::vector<GridInterval> intervals) : intervals_(std::move(intervals)) {
  for (const auto& iv : intervals_) {
    if (iv.a > iv.b) throw Error(ErrorKind::BadGrid, "interval with a > b");
  }
  std::sort(intervals_.begin(), intervals_.end());
  intervals_.erase(std::unique(intervals_.begin(), intervals_.end()), intervals_.end());
}

bool IntervalFamily::contains(GridInterval iv) const {
  return std::binary_search(intervals_.begin(), intervals_.end(), iv);
}

bool IntervalFamily::insert(GridInterval iv) {
  if (iv.a > iv.b) throw Error(ErrorKind::BadGrid, "interval with a > b");
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), iv);
  if (it != intervals_.end() && *it == iv) return false;
  intervals_.insert(it, iv);
  return true;
}

bool IntervalFamily::erase(GridInterval iv) {
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), iv);
  if (it == intervals_.end() || *it != iv) return false;
  intervals_.erase(it);
  return true;
}

IntervalFamily IntervalFamily::united(const IntervalFamily& other) const {
  std::vector<GridInterval> merged;
  std::set_union(intervals_.begin(), intervals_.end(), other.intervals_.begin(), other.intervals_.end(),
                 std::back_inserter(merged));
  IntervalFamily out;
  out.intervals_ = std::move(merged);
  return out;
}

bool IntervalFamily::subset_of(const IntervalFamily& other) const {
  return std::includes(other.intervals_.begin(), other.intervals_.end(), intervals_.begin(), intervals_.end());
}

IntervalFamily all_intervals(std::size_t points) {
  std::vector<GridInterval> out;
  out.reserve(points * (points - 1) / 2);
  for (std::size_t a = 0; a < points; ++a) {
    for (std::size_t b = a + 1; b < points; ++b) out.push_back({a, b});
  }
  return IntervalFamily(std::move(out));
}

IntervalFamily all_intervals(const GridFunction& x) { return all_intervals(x.points()); }

void check_family(const IntervalFamily& family, std::size_t points) {
  for (const auto& iv : family) {
    if (iv.b >= points) throw Error(ErrorKind::BadGrid, "interval index beyond the grid");
  }
}

bool is_nonoverlapping(std::span<const GridInterval> intervals) {
  std::vector<GridInterval> sorted(intervals.begin(), intervals.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].b > sorted[i].a) return false;
  }
  return true;
}

bool covers_unit_interval(std::span<const GridInterval> intervals, std::size_t points) {
  std::vector<GridInterval> sorted(intervals.begin(), intervals.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t reach = 0;
  for (const auto& iv : sorted) {
    if (iv.a > reach) return false;
    reach = std::max(reach, iv.b);
  }
  return reach + 1 == points;
}

}  // namespace phibv
