#pragma once

#include <cstdint>

#include "phibv/grid.hpp"
#include "phibv/variation.hpp"
#include "phibv/young.hpp"

namespace phibv {

/// |x|_J with the final bisection bracket. value == lambda_hi, which is feasible:
/// V_J(x / lambda_hi) <= 1.
struct SeminormValue {
  double value = 0.0;
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  std::uint64_t evaluations = 0;
};

/// inf{lambda > 0 : V_J(x / lambda) <= 1}. Exactly 0 when x(I) = 0 for all I in J.
/// The bracket is a dyadic interval [2^e, 2^(e+1)] narrowed by a fixed number
/// of halvings, so the relative width is below 1e-12.
SeminormValue luxemburg_seminorm(const GridFunction& x, const YoungSequence& seq, const IntervalFamily& family,
                                 const SearchOptions& options = {});

/// |x|_Phi over all grid intervals.
SeminormValue schramm_seminorm(const GridFunction& x, const YoungSequence& seq, const SearchOptions& options = {});

/// ||x||_J = |x(0)| + |x|_J.
double luxemburg_norm(const GridFunction& x, const YoungSequence& seq, const IntervalFamily& family,
                      const SearchOptions& options = {});

/// ||x||_Phi = |x(0)| + |x|_Phi.
double schramm_norm(const GridFunction& x, const YoungSequence& seq, const SearchOptions& options = {});

/// max over non-overlapping selections S from J of inf{lambda : sum phi_n(|x(I_n)|/lambda) <= 1},
/// each inner infimum bisected with the optimal assignment. Throws
/// Error(BudgetExceeded) past `selection_budget` selections.
double luxemburg_dual_formula(const GridFunction& x, const YoungSequence& seq, const IntervalFamily& family,
                              std::uint64_t selection_budget = 1'000'000);

/// max{1, phi_1^{-1}(1)}.
double sup_norm_bound_constant(const YoungSequence& seq);

}  // namespace phibv
