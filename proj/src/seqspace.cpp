#include "phibv/seqspace.hpp"

#include <algorithm>
#include <cmath>

#include "phibv/error.hpp"

namespace phibv {

void check_sequence(const TruncatedSequence& x) {
  if (!(x.p >= 1.0) || !std::isfinite(x.p)) throw Error(ErrorKind::Domain, "exponent must be >= 1");
  if (!(x.tail_bound >= 0.0) || !std::isfinite(x.tail_bound)) throw Error(ErrorKind::Domain, "tail bound must be finite and >= 0");
  for (double v : x.head) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Domain, "non-finite head entry");
  }
}

namespace {

double power_sum(const TruncatedSequence& x, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t k = from; k < to; ++k) s += std::pow(std::abs(x.head[k]), x.p);
  return s;
}

double root(double s, double p) { return p == 1.0 ? s : std::pow(s, 1.0 / p); }

}  // namespace

double lp_seminorm(const TruncatedSequence& x, std::size_t i) {
  if (i > x.length()) throw Error(ErrorKind::IndexBeyondHead, "prefix index " + std::to_string(i) + " beyond head");
  return root(power_sum(x, 0, i), x.p);
}

double lp_tail(const TruncatedSequence& x, std::size_t n) {
  if (n > x.length()) throw Error(ErrorKind::IndexBeyondHead, "tail index " + std::to_string(n) + " beyond head");
  return root(power_sum(x, n, x.length()) + std::pow(x.tail_bound, x.p), x.p);
}

double lp_norm(const TruncatedSequence& x) { return lp_tail(x, 0); }

LpCompactnessResult lp_compactness_check(const std::vector<TruncatedSequence>& set, double epsilon) {
  LpCompactnessResult out;
  if (set.empty()) {
    out.success = true;
    return out;
  }
  for (const auto& x : set) {
    check_sequence(x);
    if (x.p != set[0].p) throw Error(ErrorKind::MixedExponents, "members use different exponents");
  }
  std::size_t n_head = set[0].length();
  for (const auto& x : set) n_head = std::max(n_head, x.length());
  for (const auto& x : set) {
    // The one-member stand-in for "everything past the head" has no head.
    if (x.length() != n_head && !x.head.empty()) throw Error(ErrorKind::Precondition, "members differ in head length");
  }
  for (std::size_t n = 0; n <= n_head; ++n) {
    double w = 0.0;
    for (const auto& x : set) w = std::max(w, x.head.empty() ? x.tail_bound : lp_tail(x, n));
    out.worst_tail = w;
    if (w <= epsilon) {
      out.success = true;
      out.witness = n;
      return out;
    }
  }
  out.witness = n_head;
  return out;
}

TruncatedSequence geometric_sequence(double r, std::size_t n_head, double p) {
  if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorKind::Domain, "ratio must lie in [0, 1)");
  TruncatedSequence x;
  x.p = p;
  x.head.resize(n_head);
  double v = 1.0;
  for (auto& e : x.head) {
    e = v;
    v *= r;
  }
  // sum_{k>N} r^{(k-1)p} = r^{Np} / (1 - r^p)
  const double rp = std::pow(r, p);
  x.tail_bound = root(std::pow(r, static_cast<double>(n_head) * p) / (1.0 - rp), p);
  return x;
}

std::vector<TruncatedSequence> unit_vector_family(std::size_t n_head, double p) {
  std::vector<TruncatedSequence> out;
  for (std::size_t k = 0; k < n_head; ++k) {
    TruncatedSequence e{p, std::vector<double>(n_head, 0.0), 0.0};
    e.head[k] = 1.0;
    out.push_back(std::move(e));
  }
  out.push_back({p, {}, 1.0});
  return out;
}

bool power_mean_inequality_check(double a, double b, double p) {
  if (!(a >= 0.0 && b >= 0.0 && p >= 1.0)) throw Error(ErrorKind::Domain, "need a, b >= 0 and p >= 1");
  const double lhs = std::pow(a + b, p);
  const double rhs = std::pow(a, p) + p * b * std::pow(a + b, p - 1.0);
  return lhs <= rhs + 1e-12 * std::max(1.0, rhs);
}

double cX_seminorm(const GridFunction& x, const DensePointFamily& family) {
  const auto& g = x.grid();
  double m = 0.0;
  for (double t : family.points) {
    auto it = std::lower_bound(g.begin(), g.end(), t - 1e-12);
    if (it == g.end() || std::abs(*it - t) > 1e-12) throw Error(ErrorKind::PointNotOnGrid, "point not on the grid");
    m = std::max(m, std::abs(x[static_cast<std::size_t>(it - g.begin())]));
  }
  return m;
}

double equicontinuity_modulus(const std::vector<GridFunction>& set, double delta) {
  for (std::size_t i = 1; i < set.size(); ++i) {
    if (!set[i].same_grid(set[0])) throw Error(ErrorKind::MixedGrids, "members live on different grids");
  }
  double m = 0.0;
  for (const auto& x : set) {
    const auto& g = x.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = i + 1; j < g.size() && g[j] - g[i] <= delta + 1e-12; ++j) {
        m = std::max(m, std::abs(x[j] - x[i]));
      }
    }
  }
  return m;
}

double sup_prefix_seminorm(std::span<const double> xi, std::size_t i) {
  double m = 0.0;
  for (std::size_t k = 0; k < std::min(i, xi.size()); ++k) m = std::max(m, std::abs(xi[k]));
  return m;
}

double sup_norm(std::span<const double> xi) { return sup_prefix_seminorm(xi, xi.size()); }

std::vector<SuiteRow> counterexample_suite(std::size_t n_head) {
  std::vector<SuiteRow> rows;
  const std::size_t n = n_head;

  SuiteRow unit{"unit vectors in c_0", "||e_k||_inf - ||e_k||_i, i < k", 1.0, 1.0, 0, true};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<double> e(n, 0.0);
    e[k - 1] = 1.0;
    for (std::size_t i = 1; i < k; ++i) {
      const double d = sup_norm(e) - sup_prefix_seminorm(e, i);
      ++unit.checks;
      if (d != 1.0) {
        unit.pass = false;
        unit.observed = d;
      }
    }
  }
  rows.push_back(unit);

  SuiteRow hull{"midpoints of y_k = e_1 + ... + e_k", "||(y_{i+1} - y_i)/2||_inf", 0.5, 0.5, 0, true};
  SuiteRow hull_prefix{"midpoints of y_k = e_1 + ... + e_k", "||(y_{i+1} - y_i)/2||_i", 0.0, 0.0, 0, true};
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<double> z(n, 0.0);
    for (std::size_t k = 0; k <= i; ++k) z[k] += 0.5;
    for (std::size_t k = 0; k < i; ++k) z[k] -= 0.5;
    ++hull.checks;
    ++hull_prefix.checks;
    if (sup_norm(z) != 0.5) {
      hull.pass = false;
      hull.observed = sup_norm(z);
    }
    if (sup_prefix_seminorm(z, i) != 0.0) {
      hull_prefix.pass = false;
      hull_prefix.observed = sup_prefix_seminorm(z, i);
    }
  }
  rows.push_back(hull);
  rows.push_back(hull_prefix);

  SuiteRow c00{"x_k = (1, 1/2, ..., 1/k) in c_00", "(l+1) ||x_m - x_l||_inf, l < m", 1.0, 1.0, 0, true};
  for (std::size_t m = 2; m <= n; ++m) {
    for (std::size_t l = 1; l < m; ++l) {
      std::vector<double> d(n, 0.0);
      for (std::size_t k = l; k < m; ++k) d[k] = 1.0 / static_cast<double>(k + 1);
      const double want = 1.0 / static_cast<double>(l + 1);
      ++c00.checks;
      if (sup_norm(d) != want) {
        c00.pass = false;
        c00.observed = sup_norm(d) * static_cast<double>(l + 1);
      }
    }
  }
  rows.push_back(c00);
  return rows;
}

}  // namespace phibv
