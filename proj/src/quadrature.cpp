#include "phibv/quadrature.hpp"

#include "phibv/error.hpp"

namespace phibv {

const char* to_string(RSConvention conv) noexcept {
  switch (conv) {
    case RSConvention::Left: return "left";
    case RSConvention::Right: return "right";
    case RSConvention::Trapezoid: return "trapezoid";
  }
  return "unknown";
}

double lebesgue_integral(const GridFunction& f) {
  const auto& t = f.grid();
  double s = 0.0;
  for (std::size_t i = 1; i < f.points(); ++i) s += (t[i] - t[i - 1]) * (f[i] + f[i - 1]) / 2.0;
  return s;
}

GridFunction cumulative_primitive(const GridFunction& f) {
  const auto& t = f.grid();
  std::vector<double> F(f.points(), 0.0);
  for (std::size_t i = 1; i < f.points(); ++i) F[i] = F[i - 1] + (t[i] - t[i - 1]) * (f[i] + f[i - 1]) / 2.0;
  return f.with_values(std::move(F));
}

double rs_integral(const GridFunction& f, const GridFunction& g, RSConvention conv) {
  if (!f.same_grid(g)) throw Error(ErrorKind::MixedGrids, "Stieltjes sum over different grids");
  double s = 0.0;
  for (std::size_t i = 1; i < f.points(); ++i) {
    double tau = 0.0;
    switch (conv) {
      case RSConvention::Left: tau = f[i - 1]; break;
      case RSConvention::Right: tau = f[i]; break;
      case RSConvention::Trapezoid: tau = (f[i] + f[i - 1]) / 2.0; break;
    }
    s += tau * (g[i] - g[i - 1]);
  }
  return s;
}

GridFunction product(const GridFunction& f, const GridFunction& g) {
  if (!f.same_grid(g)) throw Error(ErrorKind::MixedGrids, "product over different grids");
  std::vector<double> v(f.points());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] * g[i];
  return f.with_values(std::move(v));
}

double check_integration_by_parts(const GridFunction& f, const GridFunction& g) {
  const std::size_t last = f.points() - 1;
  return rs_integral(f, g, RSConvention::Right) + rs_integral(g, f, RSConvention::Left) -
         (f[last] * g[last] - f[0] * g[0]);
}

double check_jensen(const YoungSequence& seq, int n, const GridFunction& f, const GridFunction& g) {
  if (!f.same_grid(g)) throw Error(ErrorKind::MixedGrids, "Jensen check over different grids");
  for (std::size_t i = 0; i < f.points(); ++i) {
    if (f[i] < 0.0) throw Error(ErrorKind::Precondition, "integrand must be non-negative");
    if (g[i] < 0.0 || g[i] > 1.0) throw Error(ErrorKind::Precondition, "integrator must take values in [0, 1]");
    if (i > 0 && g[i] < g[i - 1]) throw Error(ErrorKind::Precondition, "integrator must be non-decreasing");
  }
  std::vector<double> pf(f.points());
  for (std::size_t i = 0; i < pf.size(); ++i) pf[i] = seq(n, f[i]);
  return rs_integral(f.with_values(std::move(pf)), g, RSConvention::Right) -
         seq(n, rs_integral(f, g, RSConvention::Right));
}

double check_reduction(const GridFunction& f, const GridFunction& g) {
  return lebesgue_integral(product(f, g)) - rs_integral(g, cumulative_primitive(f), RSConvention::Trapezoid);
}

}  // namespace phibv
