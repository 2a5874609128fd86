#include "phibv/young.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "phibv/error.hpp"

namespace phibv {
namespace {

double power_term(double coef, double exponent, double t) {
  if (exponent == 1.0) return coef * t;
  if (exponent == 2.0) return coef * t * t;
  return coef * std::pow(t, exponent);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void invalid(int n, double t, const std::string& what) {
  std::ostringstream os;
  os.precision(17);
  os << "phi_" << n << " at t=" << t << ": " << what;
  throw Error(ErrorKind::InvalidYoung, os.str());
}

void check_form(int n, const YoungFunction& phi) {
  std::visit(Overloaded{
                 [&](const PowerLaw& f) {
                   if (!std::isfinite(f.coef) || f.coef <= 0.0) invalid(n, 0.0, "coefficient must be positive");
                   if (!std::isfinite(f.exponent) || f.exponent < 1.0) invalid(n, 0.0, "exponent must be >= 1");
                 },
                 [&](const PiecewisePower& f) {
                   if (f.pieces.empty()) invalid(n, 0.0, "no pieces");
                   if (f.pieces.front().from != 0.0) invalid(n, 0.0, "first piece must start at 0");
                   for (std::size_t i = 0; i < f.pieces.size(); ++i) {
                     const Piece& p = f.pieces[i];
                     if (!std::isfinite(p.from) || !std::isfinite(p.coef) || !std::isfinite(p.exponent) ||
                         !std::isfinite(p.offset))
                       invalid(n, p.from, "non-finite piece parameter");
                     if (p.exponent < 0.0) invalid(n, p.from, "negative exponent");
                     if (i > 0 && !(p.from > f.pieces[i - 1].from)) invalid(n, p.from, "pieces not increasing");
                   }
                 },
                 [&](const KnotTable& f) {
                   if (f.knots.size() < 2) invalid(n, 0.0, "table needs at least two knots");
                   if (f.knots.front().first != 0.0) invalid(n, 0.0, "table must start at t=0");
                   for (std::size_t i = 0; i < f.knots.size(); ++i) {
                     const auto& [t, y] = f.knots[i];
                     if (!std::isfinite(t) || !std::isfinite(y)) invalid(n, t, "non-finite knot");
                     if (i > 0 && !(t > f.knots[i - 1].first)) invalid(n, t, "knots not increasing");
                   }
                 },
             },
             phi.form());
}

std::vector<double> validation_mesh(const std::vector<YoungFunction>& phis) {
  std::vector<double> mesh;
  double reach = 4.0;
  for (const auto& phi : phis) {
    for (double b : phi.breakpoints()) {
      reach = std::max(reach, 2.0 * b + 1.0);
      const double eta = 1e-7 * std::max(1.0, b);
      mesh.push_back(b);
      if (b - eta > 0.0) mesh.push_back(b - eta);
      mesh.push_back(b + eta);
    }
  }
  constexpr int kSteps = 256;
  for (int k = 0; k <= kSteps; ++k) mesh.push_back(reach * k / kSteps);
  std::sort(mesh.begin(), mesh.end());
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());
  return mesh;
}

void check_shape(int n, const YoungFunction& phi, const std::vector<double>& mesh) {
  std::vector<double> y(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    y[i] = phi(mesh[i]);
    if (!std::isfinite(y[i])) invalid(n, mesh[i], "non-finite value");
  }
  if (std::abs(y[0]) > 1e-14) invalid(n, 0.0, "phi(0) != 0");
  for (std::size_t i = 1; i < mesh.size(); ++i) {
    if (!(y[i] > 0.0)) invalid(n, mesh[i], "phi must be positive for t > 0");
    if (y[i] < y[i - 1] - 1e-12 * (1.0 + std::abs(y[i - 1]))) invalid(n, mesh[i], "phi is decreasing");
  }
  double prev_slope = -INFINITY;
  for (std::size_t i = 1; i < mesh.size(); ++i) {
    const double slope = (y[i] - y[i - 1]) / (mesh[i] - mesh[i - 1]);
    if (slope < prev_slope - 1e-6 * (1.0 + std::abs(prev_slope))) invalid(n, mesh[i - 1], "phi is not convex");
    prev_slope = slope;
  }
}

}  // namespace

YoungFunction::YoungFunction(Form form) : form_(std::move(form)) {}

double YoungFunction::operator()(double t) const {
  return std::visit(Overloaded{
                        [t](const PowerLaw& f) { return power_term(f.coef, f.exponent, t); },
                        [t](const PiecewisePower& f) {
                          auto it = std::upper_bound(f.pieces.begin(), f.pieces.end(), t,
                                                     [](double v, const Piece& p) { return v < p.from; });
                          const Piece& p = (it == f.pieces.begin()) ? f.pieces.front() : *std::prev(it);
                          return power_term(p.coef, p.exponent, t) + p.offset;
                        },
                        [t](const KnotTable& f) {
                          const auto& k = f.knots;
                          auto it = std::upper_bound(k.begin(), k.end(), t,
                                                     [](double v, const auto& knot) { return v < knot.first; });
                          std::size_t hi = static_cast<std::size_t>(it - k.begin());
                          hi = std::clamp<std::size_t>(hi, 1, k.size() - 1);
                          const auto& [t0, y0] = k[hi - 1];
                          const auto& [t1, y1] = k[hi];
                          if (t == t0) return y0;
                          return y0 + (y1 - y0) * (t - t0) / (t1 - t0);
                        },
                    },
                    form_);
}

std::vector<double> YoungFunction::breakpoints() const {
  return std::visit(Overloaded{
                        [](const PowerLaw&) { return std::vector<double>{1.0}; },
                        [](const PiecewisePower& f) {
                          std::vector<double> out;
                          for (const auto& p : f.pieces) out.push_back(p.from);
                          return out;
                        },
                        [](const KnotTable& f) {
                          std::vector<double> out;
                          for (const auto& k : f.knots) out.push_back(k.first);
                          return out;
                        },
                    },
                    form_);
}

const char* to_string(YoungKind kind) noexcept {
  switch (kind) {
    case YoungKind::Jordan: return "jordan";
    case YoungKind::Wiener: return "wiener";
    case YoungKind::Young: return "young";
    case YoungKind::Waterman: return "waterman";
    case YoungKind::Custom: return "custom";
  }
  return "unknown";
}

const YoungFunction& YoungSequence::phi(int n) const {
  if (n < 1) throw Error(ErrorKind::Domain, "Young index must be >= 1");
  const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(n), phis_.size()) - 1;
  return phis_[idx];
}

YoungSequence make_young_sequence(YoungSpec spec) {
  std::vector<YoungFunction> phis;
  switch (spec.kind) {
    case YoungKind::Jordan:
      phis.push_back(YoungFunction::linear(1.0));
      break;
    case YoungKind::Wiener:
      if (!std::isfinite(spec.p) || spec.p < 1.0) invalid(1, 0.0, "wiener exponent must be >= 1");
      phis.push_back(YoungFunction::power(spec.p));
      break;
    case YoungKind::Waterman: {
      if (spec.lambdas.empty()) invalid(1, 0.0, "waterman needs at least one weight");
      for (std::size_t i = 0; i < spec.lambdas.size(); ++i) {
        const double l = spec.lambdas[i];
        if (!std::isfinite(l) || l <= 0.0) invalid(static_cast<int>(i + 1), 0.0, "waterman weight must be positive");
        if (i > 0 && l > spec.lambdas[i - 1])
          invalid(static_cast<int>(i + 1), 0.0, "waterman weights must be non-increasing");
      }
      std::size_t used = spec.lambdas.size();
      while (used > 1 && spec.lambdas[used - 1] == spec.lambdas[used - 2]) --used;
      for (std::size_t i = 0; i < used; ++i) phis.push_back(YoungFunction::linear(spec.lambdas[i]));
      break;
    }
    case YoungKind::Young:
      if (spec.functions.size() != 1) invalid(1, 0.0, "young kind takes exactly one function");
      phis = spec.functions;
      break;
    case YoungKind::Custom:
      if (spec.functions.empty()) invalid(1, 0.0, "custom kind needs at least one function");
      phis = spec.functions;
      break;
  }

  for (std::size_t i = 0; i < phis.size(); ++i) check_form(static_cast<int>(i + 1), phis[i]);
  const std::vector<double> mesh = validation_mesh(phis);
  for (std::size_t i = 0; i < phis.size(); ++i) check_shape(static_cast<int>(i + 1), phis[i], mesh);

  bool vince = true;
  for (std::size_t n = 0; n + 1 < phis.size(); ++n) {
    double prev_diff = 0.0;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      const double t = mesh[i];
      const double hi = phis[n](t);
      const double lo = phis[n + 1](t);
      if (t > 0.0 && lo > hi + 1e-12 * (1.0 + std::abs(hi)))
        invalid(static_cast<int>(n + 2), t, "phi_{n+1} exceeds phi_n");
      const double diff = lo - hi;
      if (i > 0 && diff > prev_diff + 1e-12 * (1.0 + std::abs(hi))) vince = false;
      prev_diff = diff;
    }
  }

  YoungSequence seq;
  seq.spec_ = std::move(spec);
  seq.phis_ = std::move(phis);
  seq.vince_flag_ = vince;
  return seq;
}

YoungSequence jordan_sequence() { return make_young_sequence(YoungSpec{YoungKind::Jordan, 1.0, {}, {}}); }

YoungSequence wiener_sequence(double p) {
  YoungSpec spec;
  spec.kind = YoungKind::Wiener;
  spec.p = p;
  return make_young_sequence(std::move(spec));
}

YoungSequence waterman_sequence(std::vector<double> lambdas) {
  YoungSpec spec;
  spec.kind = YoungKind::Waterman;
  spec.lambdas = std::move(lambdas);
  return make_young_sequence(std::move(spec));
}

YoungSequence young_sequence(YoungFunction phi) {
  YoungSpec spec;
  spec.kind = YoungKind::Young;
  spec.functions.push_back(std::move(phi));
  return make_young_sequence(std::move(spec));
}

YoungSequence custom_sequence(std::vector<YoungFunction> phis) {
  YoungSpec spec;
  spec.kind = YoungKind::Custom;
  spec.functions = std::move(phis);
  return make_young_sequence(std::move(spec));
}

YoungSequence helly_counterexample_sequence() {
  YoungFunction first(PiecewisePower{{Piece{0.0, 1.0, 1.0, 0.0}, Piece{1.0, 2.0, 1.0, -1.0}}});
  YoungFunction rest(PiecewisePower{{Piece{0.0, 1.0, 2.0, 0.0}, Piece{1.0, 2.0, 1.0, -1.0}}});
  return custom_sequence({std::move(first), std::move(rest)});
}

double young_eval(const YoungSequence& seq, int n, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::Domain, "Young argument must be finite and >= 0");
  return seq(n, t);
}

double young_inverse(const YoungSequence& seq, int n, double y, double cap_limit) {
  if (!(y >= 0.0) || !std::isfinite(y)) throw Error(ErrorKind::Domain, "inverse target must be finite and >= 0");
  const YoungFunction& phi = seq.phi(n);
  if (y == 0.0) return 0.0;
  double hi = 1.0;
  while (phi(hi) < y) {
    hi *= 2.0;
    if (hi > cap_limit) throw Error(ErrorKind::OutOfRange, "target exceeds phi at the bracket cap");
  }
  double lo = 0.0;
  for (int iter = 0; iter < 4096; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (phi(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (std::abs(phi(lo) - y) < std::abs(phi(hi) - y)) ? lo : hi;
}

}  // namespace phibv
