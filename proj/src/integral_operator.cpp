#include "phibv/integral_operator.hpp"

#include <algorithm>
#include <cmath>

#include "phibv/error.hpp"
#include "phibv/luxemburg.hpp"

namespace phibv {
namespace {

void check_grid(const std::vector<double>& g, const char* name) {
  // Reuse the grid validation of GridFunction.
  try {
    (void)make_grid_function(g, std::vector<double>(g.size(), 0.0));
  } catch (const Error& e) {
    throw Error(ErrorKind::BadGrid, std::string(name) + ": " + e.what());
  }
}

double trapezoid_row(const Kernel& k, std::size_t i, std::size_t upto, const GridFunction* x) {
  const auto& s = k.grid_s();
  double sum = 0.0;
  for (std::size_t j = 1; j <= upto; ++j) {
    const double l = k(i, j - 1) * (x ? (*x)[j - 1] : 1.0);
    const double r = k(i, j) * (x ? (*x)[j] : 1.0);
    sum += (s[j] - s[j - 1]) * (l + r) / 2.0;
  }
  return sum;
}

std::size_t locate(const std::vector<double>& grid, double t) {
  auto it = std::lower_bound(grid.begin(), grid.end(), t - 1e-12);
  if (it == grid.end() || std::abs(*it - t) > 1e-12) throw Error(ErrorKind::XiNotOnGrid, "xi is not a point of grid_s");
  return static_cast<std::size_t>(it - grid.begin());
}

GridFunction on_grid_t(const Kernel& k, std::vector<double> values) {
  return make_grid_function(k.grid_t(), std::move(values));
}

// var_Phi evaluations of fixed functions under varying scale factors.
struct ScaledVariation {
  std::vector<VariationProblem> problems;

  double at(std::size_t which, double scale, double divisor, const YoungSequence& seq,
            const SearchOptions& options) const {
    VariationProblem p = problems[which];
    for (double& d : p.magnitudes) d = d * scale / divisor;
    return solve_variation(p, seq, options).value;
  }
};

bool within_unit(double v) { return v <= 1.0 + 1e-12; }

}  // namespace

Kernel make_kernel(std::vector<double> grid_t, std::vector<double> grid_s, std::vector<double> values) {
  check_grid(grid_t, "grid_t");
  check_grid(grid_s, "grid_s");
  if (values.size() != grid_t.size() * grid_s.size()) throw Error(ErrorKind::BadGrid, "kernel size does not match its grids");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::BadGrid, "non-finite kernel entry");
  }
  Kernel k;
  k.grid_t_ = std::move(grid_t);
  k.grid_s_ = std::move(grid_s);
  k.values_ = std::move(values);
  return k;
}

Kernel make_kernel(std::vector<double> grid_t, std::vector<double> grid_s, const std::vector<std::vector<double>>& rows) {
  if (rows.size() != grid_t.size()) throw Error(ErrorKind::BadGrid, "one kernel row per t point required");
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != grid_s.size()) throw Error(ErrorKind::BadGrid, "kernel row length differs from grid_s");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return make_kernel(std::move(grid_t), std::move(grid_s), std::move(flat));
}

Kernel zero_kernel(std::size_t cells_t, std::size_t cells_s) { return constant_kernel(0.0, cells_t, cells_s); }

Kernel constant_kernel(double c, std::size_t cells_t, std::size_t cells_s) {
  return make_kernel(uniform_grid(cells_t), uniform_grid(cells_s), std::vector<double>((cells_t + 1) * (cells_s + 1), c));
}

Kernel lower_triangular_kernel(std::size_t cells) {
  const std::size_t n = cells + 1;
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) v[i * n + j] = 1.0;
    v[i * n + i] = 0.5;
  }
  return make_kernel(uniform_grid(cells), uniform_grid(cells), std::move(v));
}

Kernel rank_one_kernel(const GridFunction& g, std::vector<double> grid_s) {
  std::vector<double> v;
  v.reserve(g.points() * grid_s.size());
  for (std::size_t i = 0; i < g.points(); ++i) v.insert(v.end(), grid_s.size(), g[i]);
  return make_kernel(g.grid(), std::move(grid_s), std::move(v));
}

Kernel tent_kernel(std::size_t cells_s) {
  return rank_one_kernel(make_grid_function({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}), uniform_grid(cells_s));
}

GridFunction apply_operator(const Kernel& k, const GridFunction& x) {
  if (x.grid() != k.grid_s()) throw Error(ErrorKind::GridMismatch, "function does not live on the kernel's s grid");
  std::vector<double> out(k.rows());
  for (std::size_t i = 0; i < k.rows(); ++i) out[i] = trapezoid_row(k, i, k.cols() - 1, &x);
  return on_grid_t(k, std::move(out));
}

GridFunction primitive_field_at(const Kernel& k, std::size_t xi_index) {
  if (xi_index >= k.cols()) throw Error(ErrorKind::XiNotOnGrid, "xi index beyond grid_s");
  std::vector<double> out(k.rows());
  for (std::size_t i = 0; i < k.rows(); ++i) out[i] = trapezoid_row(k, i, xi_index, nullptr);
  return on_grid_t(k, std::move(out));
}

GridFunction primitive_field(const Kernel& k, double xi) { return primitive_field_at(k, locate(k.grid_s(), xi)); }

namespace {

ScaledVariation primitive_problems(const Kernel& k) {
  ScaledVariation sv;
  const auto family = all_intervals(k.rows());
  for (std::size_t j = 0; j < k.cols(); ++j) sv.problems.push_back(make_variation_problem(primitive_field_at(k, j), family));
  return sv;
}

std::pair<double, double> sup_over_xi(const Kernel& k, const ScaledVariation& sv, const YoungSequence& seq, double mu,
                                      const SearchOptions& options) {
  double best = -1.0, arg = 0.0;
  for (std::size_t j = 0; j < sv.problems.size(); ++j) {
    const double v = sv.at(j, mu, 1.0, seq, options);
    if (v > best) {
      best = v;
      arg = k.grid_s()[j];
    }
  }
  return {best, arg};
}

}  // namespace

std::pair<double, double> h2_sup_variation(const Kernel& k, const YoungSequence& seq, double mu,
                                           const SearchOptions& options) {
  return sup_over_xi(k, primitive_problems(k), seq, mu, options);
}

H2Certificate h2_certificate(const Kernel& k, const YoungSequence& seq, const SearchOptions& options) {
  const auto sv = primitive_problems(k);
  H2Certificate out;
  auto test = [&](double mu) {
    ++out.evaluations;
    return within_unit(sup_over_xi(k, sv, seq, mu, options).first);
  };
  double lo = 0x1p-40, hi = 0x1p40;
  if (test(hi)) {
    out.mu = hi;
    out.at_cap = true;
  } else if (test(lo)) {
    for (int i = 0; i < 60; ++i) {
      const double mid = std::sqrt(lo * hi);
      if (test(mid)) lo = mid;
      else hi = mid;
    }
    out.mu = lo;
  }
  if (out.mu) {
    const auto [v, xi] = sup_over_xi(k, sv, seq, *out.mu, options);
    out.sup_variation_at_mu = v;
    out.xi_argmax = xi;
  }
  return out;
}

bool H3Modulus::ok() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const H3Row& r) { return r.ok; });
}

H3Modulus h3_modulus(const Kernel& k, const YoungSequence& seq, std::vector<double> epsilons,
                     const SearchOptions& options) {
  for (double e : epsilons) {
    if (!(e > 0.0)) throw Error(ErrorKind::Domain, "epsilon must be positive");
  }
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  const auto& s = k.grid_s();
  std::vector<std::vector<double>> prim;
  for (std::size_t j = 0; j < k.cols(); ++j) prim.push_back(primitive_field_at(k, j).values());

  struct Piece {
    std::size_t a, b;
    double length;
  };
  std::vector<Piece> pieces;
  for (std::size_t a = 0; a < k.cols(); ++a) {
    for (std::size_t b = a + 1; b < k.cols(); ++b) pieces.push_back({a, b, s[b] - s[a]});
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& l, const Piece& r) { return l.length < r.length; });
  // groups[g] = [begin, end) of pieces sharing one length (within 1e-12)
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < pieces.size();) {
    std::size_t j = i + 1;
    while (j < pieces.size() && pieces[j].length - pieces[i].length <= 1e-12) ++j;
    groups.emplace_back(i, j);
    i = j;
  }

  ScaledVariation sv;
  const auto family = all_intervals(k.rows());
  for (const auto& p : pieces) {
    std::vector<double> g(k.rows());
    for (std::size_t i = 0; i < k.rows(); ++i) g[i] = prim[p.b][i] - prim[p.a][i];
    sv.problems.push_back(make_variation_problem(on_grid_t(k, std::move(g)), family));
  }

  H3Modulus out;
  for (double eps : epsilons) {
    H3Row row;
    row.epsilon = eps;
    bool failed = false;
    for (const auto& [begin, end] : groups) {
      double worst = 0.0;
      for (std::size_t i = begin; i < end && !failed; ++i) {
        const double v = sv.at(i, 1.0, eps, seq, options);
        if (!within_unit(v)) {
          failed = true;
          row.failing_interval = std::make_pair(s[pieces[i].a], s[pieces[i].b]);
        }
        worst = std::max(worst, v);
      }
      if (failed) break;
      row.ok = true;
      row.delta = pieces[end - 1].length;
      row.worst_variation = std::max(row.worst_variation, worst);
    }
    out.rows.push_back(row);
  }
  return out;
}

H3ImpliesH2 h3_implies_h2(const Kernel& k, const YoungSequence& seq, const SearchOptions& options) {
  const auto h3 = h3_modulus(k, seq, {1.0}, options);
  if (!h3.rows[0].ok) throw Error(ErrorKind::H3Unavailable, "no grid delta satisfies the bound at epsilon = 1");
  H3ImpliesH2 out;
  out.delta = h3.rows[0].delta;
  out.n = static_cast<std::size_t>(std::ceil(1.0 / out.delta - 1e-12));
  out.mu = 1.0 / static_cast<double>(out.n);
  out.sup_variation = h2_sup_variation(k, seq, out.mu, options).first;
  out.verified = within_unit(out.sup_variation);
  out.certificate_mu = h2_certificate(k, seq, options).mu;
  return out;
}

double bv_norm(const GridFunction& x) { return std::abs(x[0]) + jordan_variation(x); }

const char* to_string(Battery battery) noexcept {
  switch (battery) {
    case Battery::Spikes: return "spikes";
    case Battery::ShrinkingPlateaus: return "shrinking_plateaus";
    case Battery::Sawtooth: return "sawtooth";
  }
  return "unknown";
}

GridFunction battery_member(Battery battery, std::size_t v, const std::vector<double>& grid) {
  if (v == 0) throw Error(ErrorKind::Domain, "battery index starts at 1");
  const double vv = static_cast<double>(v);
  std::vector<double> x(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    switch (battery) {
      case Battery::Spikes: x[i] = 0.5 * std::max(0.0, 1.0 - std::abs(2.0 * vv * t - 1.0)); break;
      case Battery::ShrinkingPlateaus: x[i] = (t > 0.0 && t * vv <= 1.0) ? 0.5 : 0.0; break;
      case Battery::Sawtooth: {
        const double u = vv * t;
        x[i] = (u - std::floor(u)) / (2.0 * vv);
        break;
      }
    }
  }
  return make_grid_function(grid, std::move(x));
}

ContinuityReport continuity_bound(const Kernel& k, const YoungSequence& seq, double mu, const SearchOptions& options) {
  if (!(mu > 0.0)) throw Error(ErrorKind::Domain, "mu must be positive");
  ContinuityReport out;
  const auto& s = k.grid_s();
  for (std::size_t j = 1; j < k.cols(); ++j) out.row_integral += (s[j] - s[j - 1]) * (std::abs(k(0, j - 1)) + std::abs(k(0, j))) / 2.0;
  out.bound = out.row_integral + 2.0 / mu;

  std::vector<std::pair<std::string, GridFunction>> members;
  members.emplace_back("constant", make_grid_function(s, std::vector<double>(s.size(), 1.0)));
  members.emplace_back("identity", make_grid_function(s, s));
  for (Battery b : {Battery::Spikes, Battery::ShrinkingPlateaus, Battery::Sawtooth}) {
    for (std::size_t v = 1; v <= 8; v *= 2) {
      members.emplace_back(std::string(to_string(b)) + "/" + std::to_string(v), battery_member(b, v, s));
    }
  }
  out.ok = true;
  for (const auto& [name, x] : members) {
    const double bv = bv_norm(x);
    if (bv == 0.0) continue;
    const double kx = schramm_norm(apply_operator(k, x), seq, options);
    const double ratio = kx / bv;
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.max_ratio_member = name;
    }
    if (kx > out.bound * bv + 1e-6) out.ok = false;
  }
  return out;
}

ProbeReport compactness_probe(const Kernel& k, const YoungSequence& seq, Battery battery, std::size_t v_max,
                              double threshold, const SearchOptions& options) {
  ProbeReport out;
  out.battery = battery;
  out.threshold = threshold;
  for (std::size_t v = 1; v <= v_max; v *= 2) {
    const auto x = battery_member(battery, v, k.grid_s());
    if (sup_norm(x) == 0.0) {
      throw Error(ErrorKind::Precondition, std::string(to_string(battery)) + " member v = " + std::to_string(v) +
                                               " vanishes on grid_s; refine the s grid or lower v_max");
    }
    out.rows.push_back({v, bv_norm(x), schramm_norm(apply_operator(k, x), seq, options)});
  }
  out.monotone = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (out.rows[i].norm > out.rows[i - 1].norm * (1.0 + 1e-12)) out.monotone = false;
  }
  out.final_norm = out.rows.empty() ? 0.0 : out.rows.back().norm;
  out.decay_consistent = out.monotone && out.final_norm < threshold;
  return out;
}

double representation_residual(const Kernel& k, const GridFunction& x) {
  const auto kx = apply_operator(k, x);
  std::vector<GridFunction> prim;
  for (std::size_t j = 0; j < k.cols(); ++j) prim.push_back(primitive_field_at(k, j));
  const std::size_t last = k.cols() - 1;
  double worst = 0.0;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    double stieltjes = 0.0;
    for (std::size_t j = 1; j < k.cols(); ++j) stieltjes += prim[j][i] * (x[j] - x[j - 1]);
    worst = std::max(worst, std::abs(kx[i] - (x[last] * prim[last][i] - stieltjes)));
  }
  return worst;
}

namespace {

// Positions (into `vals`) of a longest monotone subsequence; non-decreasing wins ties.
std::vector<std::size_t> longest_monotone(const std::vector<double>& vals) {
  auto run = [&](bool up) {
    const std::size_t n = vals.size();
    std::vector<std::size_t> len(n, 1);
    std::vector<long> prev(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const bool fits = up ? vals[j] <= vals[i] : vals[j] >= vals[i];
        if (fits && len[j] + 1 > len[i]) {
          len[i] = len[j] + 1;
          prev[i] = static_cast<long>(j);
        }
      }
    }
    std::size_t end = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (len[i] > len[end]) end = i;
    }
    std::vector<std::size_t> out;
    for (long i = static_cast<long>(end); i >= 0; i = prev[static_cast<std::size_t>(i)]) out.push_back(static_cast<std::size_t>(i));
    std::reverse(out.begin(), out.end());
    return out;
  };
  auto up = run(true);
  auto down = run(false);
  return down.size() > up.size() ? down : up;
}

}  // namespace

HellyResult helly_extract(const std::vector<GridFunction>& seqs, double bound) {
  if (seqs.empty()) throw Error(ErrorKind::Precondition, "empty sequence");
  for (std::size_t v = 0; v < seqs.size(); ++v) {
    if (!seqs[v].same_grid(seqs[0])) throw Error(ErrorKind::MixedGrids, "members live on different grids");
    if (sup_norm(seqs[v]) > bound || jordan_variation(seqs[v]) > bound) {
      throw Error(ErrorKind::NotBounded, "member " + std::to_string(v) + " exceeds the bound");
    }
  }
  std::vector<std::size_t> keep(seqs.size());
  for (std::size_t v = 0; v < keep.size(); ++v) keep[v] = v;

  for (std::size_t i = 0; i < seqs[0].points(); ++i) {
    std::vector<double> vals;
    for (std::size_t v : keep) vals.push_back(seqs[v][i]);
    // Classes of values chained within 1e-9, ordered by first appearance.
    std::vector<std::size_t> order(vals.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::size_t> cls(vals.size());
    std::size_t classes = 0;
    for (std::size_t j = 0; j < order.size(); ++j) {
      if (j > 0 && vals[order[j]] - vals[order[j - 1]] > 1e-9) ++classes;
      cls[order[j]] = classes;
    }
    std::vector<std::size_t> size(classes + 1, 0), first(classes + 1, vals.size());
    for (std::size_t j = 0; j < vals.size(); ++j) {
      ++size[cls[j]];
      first[cls[j]] = std::min(first[cls[j]], j);
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c <= classes; ++c) {
      if (size[c] > size[best] || (size[c] == size[best] && first[c] < first[best])) best = c;
    }
    std::vector<std::size_t> pos;
    if (size[best] >= 2 && 2 * size[best] >= vals.size()) {
      for (std::size_t j = 0; j < vals.size(); ++j) {
        if (cls[j] == best) pos.push_back(j);
      }
    } else if (vals.size() > 1) {
      pos = longest_monotone(vals);
    } else {
      pos = {0};
    }
    std::vector<std::size_t> next;
    for (std::size_t j : pos) next.push_back(keep[j]);
    keep = std::move(next);
  }
  return {keep, seqs[keep.back()]};
}

}  // namespace phibv
