#pragma once

#include "phibv/grid.hpp"
#include "phibv/young.hpp"

namespace phibv {

/// Which value of the integrand a Stieltjes sum uses on a cell [t_{i-1}, t_i]:
/// f(t_{i-1}), f(t_i), or their average.
enum class RSConvention { Left, Right, Trapezoid };

const char* to_string(RSConvention conv) noexcept;

/// Composite trapezoid rule.
double lebesgue_integral(const GridFunction& f);

/// F(t_i) = trapezoid integral of f over [0, t_i].
GridFunction cumulative_primitive(const GridFunction& f);

/// sum_i f(tau_i) (g(t_i) - g(t_{i-1})); Error(MixedGrids) on differing grids.
double rs_integral(const GridFunction& f, const GridFunction& g, RSConvention conv);

/// Pointwise product on a common grid.
GridFunction product(const GridFunction& f, const GridFunction& g);

/// int f dg (right) + int g df (left) - (f(1)g(1) - f(0)g(0)); zero up to rounding.
double check_integration_by_parts(const GridFunction& f, const GridFunction& g);

/// int phi_n(f) dg - phi_n(int f dg), right-endpoint sums. Requires f >= 0 and
/// g non-decreasing with values in [0, 1] (Error(Precondition) otherwise).
double check_jensen(const YoungSequence& seq, int n, const GridFunction& f, const GridFunction& g);

/// int f g dt - int g dF with F the primitive of f. The Stieltjes sum uses the
/// trapezoid convention, which is what makes the residual O(mesh^2) on smooth data.
double check_reduction(const GridFunction& f, const GridFunction& g);

}  // namespace phibv
