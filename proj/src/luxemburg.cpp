#include "phibv/luxemburg.hpp"

#include <algorithm>
#include <cmath>

#include "phibv/error.hpp"

namespace phibv {
namespace {

constexpr int kBisections = 40;
constexpr int kMaxBracketSteps = 2200;

// Narrows [lo, hi] with feasible(hi) true and feasible(lo) false.
template <class Feasible>
SeminormValue bisect(Feasible&& feasible) {
  SeminormValue out;
  auto test = [&](double lambda) {
    ++out.evaluations;
    return feasible(lambda);
  };
  double lo = 1.0;
  double hi = 1.0;
  int steps = 0;
  if (test(1.0)) {
    lo = 0.5;
    while (test(lo)) {
      hi = lo;
      lo *= 0.5;
      if (++steps > kMaxBracketSteps || lo == 0.0) throw Error(ErrorKind::Domain, "seminorm below representable range");
    }
  } else {
    hi = 2.0;
    while (!test(hi)) {
      lo = hi;
      hi *= 2.0;
      if (++steps > kMaxBracketSteps || std::isinf(hi)) throw Error(ErrorKind::OutOfRange, "seminorm above representable range");
    }
  }
  for (int i = 0; i < kBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (test(mid)) hi = mid;
    else lo = mid;
  }
  out.value = hi;
  out.lambda_lo = lo;
  out.lambda_hi = hi;
  return out;
}

}  // namespace

SeminormValue luxemburg_seminorm(const GridFunction& x, const YoungSequence& seq, const IntervalFamily& family,
                                 const SearchOptions& options) {
  const auto problem = make_variation_problem(x, family);
  if (std::all_of(problem.magnitudes.begin(), problem.magnitudes.end(), [](double d) { return d == 0.0; })) {
    return {};
  }
  VariationProblem scaled = problem;
  return bisect([&](double lambda) {
    for (std::size_t i = 0; i < problem.magnitudes.size(); ++i) scaled.magnitudes[i] = problem.magnitudes[i] / lambda;
    return solve_variation(scaled, seq, options).value <= 1.0;
  });
}

SeminormValue schramm_seminorm(const GridFunction& x, const YoungSequence& seq, const SearchOptions& options) {
  return luxemburg_seminorm(x, seq, all_intervals(x), options);
}

double luxemburg_norm(const GridFunction& x, const YoungSequence& seq, const IntervalFamily& family,
                      const SearchOptions& options) {
  return std::abs(x[0]) + luxemburg_seminorm(x, seq, family, options).value;
}

double schramm_norm(const GridFunction& x, const YoungSequence& seq, const SearchOptions& options) {
  return std::abs(x[0]) + schramm_seminorm(x, seq, options).value;
}

namespace {

struct DualSearch {
  const YoungSequence& seq;
  const std::vector<GridInterval>& ivs;
  const std::vector<double>& mags;
  std::uint64_t budget;
  std::uint64_t selections = 0;
  std::vector<double> chosen;
  double best = 0.0;

  double inner() const {
    if (std::all_of(chosen.begin(), chosen.end(), [](double d) { return d == 0.0; })) return 0.0;
    std::vector<double> scaled(chosen.size());
    return bisect([&](double lambda) {
             for (std::size_t i = 0; i < chosen.size(); ++i) scaled[i] = chosen[i] / lambda;
             return assignment_value(seq, scaled).value <= 1.0;
           }).value;
  }

  void extend(std::size_t next, std::size_t frontier) {
    if (++selections > budget) throw Error(ErrorKind::BudgetExceeded, "selection budget exhausted");
    best = std::max(best, inner());
    for (std::size_t i = next; i < ivs.size(); ++i) {
      if (ivs[i].a < frontier || ivs[i].degenerate()) continue;
      chosen.push_back(mags[i]);
      extend(i + 1, ivs[i].b);
      chosen.pop_back();
    }
  }
};

}  // namespace

double luxemburg_dual_formula(const GridFunction& x, const YoungSequence& seq, const IntervalFamily& family,
                              std::uint64_t selection_budget) {
  const auto problem = make_variation_problem(x, family);
  DualSearch s{seq, problem.intervals, problem.magnitudes, selection_budget, 0, {}, 0.0};
  s.extend(0, 0);
  return s.best;
}

double sup_norm_bound_constant(const YoungSequence& seq) { return std::max(1.0, young_inverse(seq, 1, 1.0)); }

}  // namespace phibv
