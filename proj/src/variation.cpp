#include "phibv/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phibv/assignment.hpp"
#include "phibv/error.hpp"

namespace phibv {

const char* to_string(SearchMode mode) noexcept {
  return mode == SearchMode::Exact ? "exact" : "heuristic";
}

AssignmentResult sorted_assignment_value(const YoungSequence& seq, std::span<const double> increments) {
  const std::size_t k = increments.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return increments[i] > increments[j]; });
  AssignmentResult out;
  out.phi_index.assign(k, 0);
  for (std::size_t r = 0; r < k; ++r) {
    const int n = static_cast<int>(r) + 1;
    out.phi_index[order[r]] = n;
    out.value += seq(n, increments[order[r]]);
  }
  return out;
}

AssignmentResult optimal_assignment_value(const YoungSequence& seq, std::span<const double> increments) {
  const std::size_t k = increments.size();
  AssignmentResult out;
  out.phi_index.assign(k, 0);
  if (k == 0) return out;
  SquareMatrix w(k);
  for (std::size_t n = 0; n < k; ++n) {
    for (std::size_t j = 0; j < k; ++j) w(n, j) = seq(static_cast<int>(n) + 1, increments[j]);
  }
  const auto col = max_weight_assignment(w);
  for (std::size_t n = 0; n < k; ++n) {
    out.phi_index[col[n]] = static_cast<int>(n) + 1;
    out.value += w(n, col[n]);
  }
  return out;
}

AssignmentResult assignment_value(const YoungSequence& seq, std::span<const double> increments) {
  if (seq.vince_flag() || seq.index_invariant()) return sorted_assignment_value(seq, increments);
  return optimal_assignment_value(seq, increments);
}

VariationProblem make_variation_problem(const GridFunction& x, const IntervalFamily& family) {
  check_family(family, x.points());
  VariationProblem p;
  p.points = x.points();
  p.intervals = family.intervals();
  p.magnitudes.reserve(p.intervals.size());
  for (const auto& iv : p.intervals) p.magnitudes.push_back(std::abs(increment(x, iv)));
  return p;
}

VariationProblem scaled_problem(const VariationProblem& problem, double factor) {
  VariationProblem p = problem;
  for (double& d : p.magnitudes) d *= factor;
  return p;
}

namespace {

struct Candidate {
  GridInterval iv;
  double d;
};

std::vector<Candidate> collect_candidates(const VariationProblem& problem) {
  std::vector<Candidate> c;
  for (std::size_t i = 0; i < problem.intervals.size(); ++i) {
    const auto& iv = problem.intervals[i];
    if (iv.b >= problem.points) throw Error(ErrorKind::BadGrid, "interval index beyond the grid");
    if (!problem.keep_null_intervals && (iv.degenerate() || problem.magnitudes[i] == 0.0)) continue;
    c.push_back({iv, problem.magnitudes[i]});
  }
  std::sort(c.begin(), c.end(), [](const Candidate& l, const Candidate& r) { return l.iv < r.iv; });
  return c;
}

VariationResult finish(const YoungSequence& seq, std::vector<Candidate> chosen, SearchMode mode,
                       std::uint64_t nodes) {
  std::sort(chosen.begin(), chosen.end(), [](const Candidate& l, const Candidate& r) { return l.iv < r.iv; });
  std::vector<double> d;
  VariationResult out;
  out.mode = mode;
  out.nodes_explored = nodes;
  for (const auto& c : chosen) {
    out.witness.intervals.push_back(c.iv);
    d.push_back(c.d);
  }
  auto a = assignment_value(seq, d);
  out.value = a.value;
  out.witness.assignment = std::move(a.phi_index);
  return out;
}

// Longest path over grid points; valid only when every phi_n is the same.
VariationResult solve_by_dp(const std::vector<Candidate>& cand, std::size_t points, const YoungSequence& seq) {
  const auto& phi = seq.phi(1);
  std::vector<double> best(points, 0.0);
  std::vector<long> choice(points, -1);
  std::vector<std::vector<std::size_t>> ending(points);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (!cand[i].iv.degenerate()) ending[cand[i].iv.b].push_back(i);
  }
  std::uint64_t nodes = 0;
  for (std::size_t p = 1; p < points; ++p) {
    best[p] = best[p - 1];
    for (std::size_t i : ending[p]) {
      ++nodes;
      const double v = best[cand[i].iv.a] + phi(cand[i].d);
      if (v > best[p]) {
        best[p] = v;
        choice[p] = static_cast<long>(i);
      }
    }
  }
  std::vector<Candidate> chosen;
  std::size_t p = points - 1;
  while (p > 0) {
    if (choice[p] < 0) {
      --p;
      continue;
    }
    const auto& c = cand[static_cast<std::size_t>(choice[p])];
    chosen.push_back(c);
    p = c.iv.a;
  }
  return finish(seq, std::move(chosen), SearchMode::Exact, nodes);
}

class BranchAndBound {
 public:
  BranchAndBound(const std::vector<Candidate>& cand, std::size_t points, const YoungSequence& seq,
                 const VariationProblem& problem, std::uint64_t budget)
      : cand_(cand), points_(points), seq_(seq), keep_null_(problem.keep_null_intervals),
        require_uncovered_(problem.require_uncovered), budget_(budget) {
    // Candidates are sorted by left index; first_[f] is the first one with a >= f.
    first_.assign(points_ + 1, cand_.size());
    for (std::size_t f = points_; f-- > 0;) {
      first_[f] = first_[f + 1];
      for (std::size_t i = 0; i < cand_.size(); ++i) {
        if (cand_[i].iv.a >= f) {
          first_[f] = std::min(first_[f], i);
          break;
        }
      }
    }
    tail_.resize(points_ + 1);
    for (std::size_t f = 0; f <= points_; ++f) {
      for (std::size_t i = first_[f]; i < cand_.size(); ++i) tail_[f].push_back(cand_[i].d);
      std::sort(tail_[f].begin(), tail_[f].end(), std::greater<>());
    }
  }

  VariationResult run() {
    visit(0, 0, true, 0);
    std::vector<Candidate> chosen;
    for (std::size_t i : best_set_) chosen.push_back(cand_[i]);
    return finish(seq_, std::move(chosen), SearchMode::Exact, nodes_);
  }

 private:
  // `next` is the first candidate index allowed, `frontier` the right end of the
  // last chosen interval, `chained`/`reach` track whether the selection is a
  // gap-free chain starting at t_0.
  void visit(std::size_t next, std::size_t frontier, bool chained, std::size_t reach) {
    if (++nodes_ > budget_) throw Error(ErrorKind::BudgetExceeded, "node budget exhausted");
    const double here = assignment_value(seq_, incs_).value;
    const bool covers = !set_.empty() && chained && reach + 1 == points_;
    if (!(require_uncovered_ && covers) && here > best_) {
      best_ = here;
      best_set_ = set_;
    }
    const std::size_t start = std::max(next, first_[frontier]);
    if (start >= cand_.size()) return;
    if (bound(frontier) <= best_) return;
    for (std::size_t i = start; i < cand_.size(); ++i) {
      const auto& c = cand_[i];
      if (c.iv.a < frontier) continue;
      set_.push_back(i);
      incs_.push_back(c.d);
      const bool ch = chained && c.iv.a == reach;
      visit(i + 1, c.iv.b, ch, ch ? c.iv.b : reach);
      set_.pop_back();
      incs_.pop_back();
    }
  }

  double bound(std::size_t frontier) {
    const auto& t = tail_[frontier];
    std::size_t r = t.size();
    if (!keep_null_) r = std::min(r, points_ - 1 - frontier);
    std::vector<double> opt(incs_);
    opt.insert(opt.end(), t.begin(), t.begin() + static_cast<long>(r));
    return assignment_value(seq_, opt).value;
  }

  const std::vector<Candidate>& cand_;
  std::size_t points_;
  const YoungSequence& seq_;
  bool keep_null_;
  bool require_uncovered_;
  std::uint64_t budget_;
  std::vector<std::size_t> first_;
  std::vector<std::vector<double>> tail_;
  std::vector<std::size_t> set_;
  std::vector<double> incs_;
  std::vector<std::size_t> best_set_;
  double best_ = 0.0;
  std::uint64_t nodes_ = 0;
};

bool compatible(const std::vector<Candidate>& chosen, const Candidate& c, std::size_t skip) {
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (i == skip) continue;
    const auto& s = chosen[i].iv;
    if (!(s.b <= c.iv.a || c.iv.b <= s.a)) return false;
  }
  return true;
}

double evaluate(const YoungSequence& seq, const std::vector<Candidate>& chosen, std::uint64_t& evals) {
  ++evals;
  std::vector<double> d;
  for (const auto& c : chosen) d.push_back(c.d);
  return assignment_value(seq, d).value;
}

bool covering(const std::vector<Candidate>& chosen, std::size_t points) {
  std::vector<GridInterval> ivs;
  for (const auto& c : chosen) ivs.push_back(c.iv);
  return !ivs.empty() && covers_unit_interval(ivs, points);
}

VariationResult solve_heuristic(const std::vector<Candidate>& cand, std::size_t points, const YoungSequence& seq,
                                bool require_uncovered, std::uint64_t budget) {
  std::vector<Candidate> chosen;
  std::vector<bool> used(cand.size(), false);
  std::uint64_t evals = 0;
  double value = 0.0;
  auto admissible = [&](const std::vector<Candidate>& s) { return !(require_uncovered && covering(s, points)); };

  for (;;) {
    long pick = -1;
    double pick_value = value;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (used[i] || !compatible(chosen, cand[i], chosen.size())) continue;
      auto trial = chosen;
      trial.push_back(cand[i]);
      if (!admissible(trial)) continue;
      const double v = evaluate(seq, trial, evals);
      if (v > pick_value) {
        pick_value = v;
        pick = static_cast<long>(i);
      }
    }
    if (pick < 0) break;
    used[static_cast<std::size_t>(pick)] = true;
    chosen.push_back(cand[static_cast<std::size_t>(pick)]);
    value = pick_value;
  }

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (used[i]) idx.push_back(i);
  }
  bool improved = true;
  while (improved && evals < budget) {
    improved = false;
    for (std::size_t s = 0; s < chosen.size() && !improved; ++s) {
      for (std::size_t i = 0; i < cand.size() && !improved; ++i) {
        if (used[i] || !compatible(chosen, cand[i], s)) continue;
        auto trial = chosen;
        trial[s] = cand[i];
        if (!admissible(trial)) continue;
        const double v = evaluate(seq, trial, evals);
        if (v > value) {
          used[idx[s]] = false;
          used[i] = true;
          idx[s] = i;
          chosen = std::move(trial);
          value = v;
          improved = true;
        }
      }
    }
    for (std::size_t i = 0; i < cand.size() && !improved; ++i) {
      if (used[i] || !compatible(chosen, cand[i], chosen.size())) continue;
      auto trial = chosen;
      trial.push_back(cand[i]);
      if (!admissible(trial)) continue;
      const double v = evaluate(seq, trial, evals);
      if (v > value) {
        used[i] = true;
        idx.push_back(i);
        chosen = std::move(trial);
        value = v;
        improved = true;
      }
    }
  }
  return finish(seq, std::move(chosen), SearchMode::Heuristic, evals);
}

}  // namespace

VariationResult solve_variation(const VariationProblem& problem, const YoungSequence& seq,
                                const SearchOptions& options) {
  if (problem.magnitudes.size() != problem.intervals.size()) {
    throw Error(ErrorKind::Precondition, "one magnitude per interval required");
  }
  const auto cand = collect_candidates(problem);
  if (options.mode == SearchMode::Heuristic) {
    return solve_heuristic(cand, problem.points, seq, problem.require_uncovered, options.node_budget);
  }
  if (seq.index_invariant() && !problem.require_uncovered) return solve_by_dp(cand, problem.points, seq);
  BranchAndBound bb(cand, problem.points, seq, problem, options.node_budget);
  return bb.run();
}

VariationResult variation_over_family(const GridFunction& x, const YoungSequence& seq, const IntervalFamily& family,
                                      const SearchOptions& options) {
  return solve_variation(make_variation_problem(x, family), seq, options);
}

VariationResult schramm_variation(const GridFunction& x, const YoungSequence& seq, const SearchOptions& options) {
  return variation_over_family(x, seq, all_intervals(x), options);
}

double jordan_variation(const GridFunction& x) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.points(); ++i) s += std::abs(x[i] - x[i - 1]);
  return s;
}

double selection_value(const GridFunction& x, const YoungSequence& seq, const IntervalSelection& sel, double factor) {
  double s = 0.0;
  for (std::size_t i = 0; i < sel.size(); ++i) {
    const auto& iv = sel.intervals[i];
    if (iv.a > iv.b || iv.b >= x.points()) throw Error(ErrorKind::BadGrid, "interval outside the grid");
    s += seq(sel.phi_index(i), factor * std::abs(increment(x, iv)));
  }
  return s;
}

FiveSuprema five_suprema(const GridFunction& x, const YoungSequence& seq, const SearchOptions& options) {
  SearchOptions exact = options;
  exact.mode = SearchMode::Exact;
  FiveSuprema out;

  std::vector<GridInterval> with_points(all_intervals(x).intervals());
  for (std::size_t a = 0; a < x.points(); ++a) with_points.push_back({a, a});
  auto delta_problem = make_variation_problem(x, IntervalFamily(std::move(with_points)));
  delta_problem.keep_null_intervals = true;
  const auto delta = solve_variation(delta_problem, seq, exact);
  out.delta_grid = delta.value;
  out.delta_witness = delta.witness;

  auto base = make_variation_problem(x, all_intervals(x));
  out.gamma_grid = solve_variation(base, seq, exact).value;
  out.beta_grid = out.delta_grid;

  auto uncovered = base;
  uncovered.require_uncovered = true;
  const auto alpha = solve_variation(uncovered, seq, exact);
  out.alpha_grid = alpha.value;
  out.alpha_witness = alpha.witness;

  const auto alpha_star = solve_variation(scaled_problem(base, 2.0), seq, exact);
  out.alpha_star_grid = alpha_star.value;
  out.alpha_star_witness = alpha_star.witness;
  return out;
}

}  // namespace phibv
