#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "phibv/error.hpp"
#include "phibv/variation.hpp"

namespace phibv {
namespace {

constexpr std::size_t kMaxCells = 16;
constexpr std::size_t kMaxPermuted = 6;

// Best assignment of a fixed multiset, by listing every permutation.
double best_by_permutation(const YoungSequence& seq, const std::vector<double>& d) {
  std::vector<std::size_t> perm(d.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = 0.0;
  do {
    double s = 0.0;
    for (std::size_t n = 0; n < perm.size(); ++n) s += seq(static_cast<int>(n) + 1, d[perm[n]]);
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Same quantity over subsets of used increments: f[mask] is the best value of
// giving phi_1..phi_|mask| to the increments in mask.
double best_by_subsets(const YoungSequence& seq, const std::vector<double>& d) {
  const std::size_t k = d.size();
  std::vector<double> f(std::size_t{1} << k, -1.0);
  f[0] = 0.0;
  for (std::size_t mask = 0; mask < f.size(); ++mask) {
    if (f[mask] < 0.0) continue;
    const int n = std::popcount(mask) + 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const std::size_t next = mask | (std::size_t{1} << j);
      f[next] = std::max(f[next], f[mask] + seq(n, d[j]));
    }
  }
  return f.back();
}

struct Enumerator {
  const GridFunction& x;
  const YoungSequence& seq;
  std::vector<double> d;
  double best = 0.0;

  double value() const {
    if (d.empty()) return 0.0;
    if (seq.index_invariant()) {
      double s = 0.0;
      for (double v : d) s += seq(1, v);
      return s;
    }
    return d.size() <= kMaxPermuted ? best_by_permutation(seq, d) : best_by_subsets(seq, d);
  }

  // Decide what happens from point p on: leave cell [p, p+1] out, or start an
  // interval [p, q].
  void from(std::size_t p) {
    if (p + 1 >= x.points()) {
      best = std::max(best, value());
      return;
    }
    from(p + 1);
    for (std::size_t q = p + 1; q < x.points(); ++q) {
      d.push_back(std::abs(x[q] - x[p]));
      from(q);
      d.pop_back();
    }
  }
};

}  // namespace

double brute_force_variation(const GridFunction& x, const YoungSequence& seq) {
  if (x.cells() > kMaxCells) throw Error(ErrorKind::TooLarge, "brute force limited to 16 cells");
  Enumerator e{x, seq, {}, 0.0};
  e.from(0);
  return e.best;
}

}  // namespace phibv
