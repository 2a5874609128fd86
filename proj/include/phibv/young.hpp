#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace phibv {

/// coef * t^exponent, exponent >= 1.
struct PowerLaw {
  double coef = 1.0;
  double exponent = 1.0;
};

/// One branch of a piecewise closed form: coef * t^exponent + offset on [from, next.from).
struct Piece {
  double from = 0.0;
  double coef = 1.0;
  double exponent = 1.0;
  double offset = 0.0;
};

struct PiecewisePower {
  std::vector<Piece> pieces;  // sorted by `from`, pieces.front().from == 0
};

/// Knots (t, phi(t)) with t strictly increasing from 0. Evaluated by linear
/// interpolation, and by extending the last segment past the final knot.
struct KnotTable {
  std::vector<std::pair<double, double>> knots;
};

/// A single Young function. Convexity and monotonicity are not enforced here;
/// they are checked when a YoungSequence is assembled.
class YoungFunction {
 public:
  using Form = std::variant<PowerLaw, PiecewisePower, KnotTable>;

  explicit YoungFunction(Form form);

  static YoungFunction linear(double slope) { return YoungFunction(PowerLaw{slope, 1.0}); }
  static YoungFunction power(double exponent, double coef = 1.0) {
    return YoungFunction(PowerLaw{coef, exponent});
  }

  double operator()(double t) const;
  const Form& form() const noexcept { return form_; }

  /// Points where the closed form changes branch (knots for tables).
  std::vector<double> breakpoints() const;

 private:
  Form form_;
};

enum class YoungKind { Jordan, Wiener, Young, Waterman, Custom };

const char* to_string(YoungKind kind) noexcept;

/// Builder parameters for make_young_sequence.
struct YoungSpec {
  YoungKind kind = YoungKind::Jordan;
  double p = 1.0;                          // wiener
  std::vector<double> lambdas;             // waterman, non-increasing, positive
  std::vector<YoungFunction> functions;    // young (one entry) / custom (one per index)
};

/// A validated non-increasing sequence of Young functions (phi_n), n >= 1.
///
/// Only the first n_effective functions are stored; phi_n for n > n_effective
/// equals phi_{n_effective}. vince_flag records whether phi_{n+1} - phi_n was
/// found non-increasing on the validation mesh, in which case assigning the
/// largest increments to the smallest indices is an optimal assignment.
class YoungSequence {
 public:
  YoungKind kind() const noexcept { return spec_.kind; }
  const YoungSpec& spec() const noexcept { return spec_; }
  int n_effective() const noexcept { return static_cast<int>(phis_.size()); }
  bool vince_flag() const noexcept { return vince_flag_; }
  /// True when every phi_n is the same function.
  bool index_invariant() const noexcept { return phis_.size() == 1; }

  const YoungFunction& phi(int n) const;
  double operator()(int n, double t) const { return phi(n)(t); }

 private:
  friend YoungSequence make_young_sequence(YoungSpec spec);
  YoungSequence() = default;

  YoungSpec spec_;
  std::vector<YoungFunction> phis_;
  bool vince_flag_ = false;
};

/// Validates and assembles a sequence; throws Error(InvalidYoung) naming the
/// offending index and sample point.
YoungSequence make_young_sequence(YoungSpec spec);

YoungSequence jordan_sequence();
YoungSequence wiener_sequence(double p);
YoungSequence waterman_sequence(std::vector<double> lambdas);
YoungSequence young_sequence(YoungFunction phi);
YoungSequence custom_sequence(std::vector<YoungFunction> phis);

/// phi_1(t) = t, phi_n(t) = t^2 on [0,1], both continued by 2t - 1 beyond 1.
/// Assignment by sorted increments is not optimal for this sequence.
YoungSequence helly_counterexample_sequence();

double young_eval(const YoungSequence& seq, int n, double t);

/// Smallest t with phi_n(t) = y, by bisection over a doubling bracket [0, cap].
/// Throws Error(OutOfRange) when phi_n(cap_limit) < y.
double young_inverse(const YoungSequence& seq, int n, double y, double cap_limit = 0x1p60);

}  // namespace phibv
