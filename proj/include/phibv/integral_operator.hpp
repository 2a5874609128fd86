#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phibv/grid.hpp"
#include "phibv/variation.hpp"
#include "phibv/young.hpp"

namespace phibv {

/// Samples k(t_i, s_j) of a kernel, rows indexed by grid_t.
class Kernel {
 public:
  const std::vector<double>& grid_t() const noexcept { return grid_t_; }
  const std::vector<double>& grid_s() const noexcept { return grid_s_; }
  std::size_t rows() const noexcept { return grid_t_.size(); }
  std::size_t cols() const noexcept { return grid_s_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * grid_s_.size() + j]; }
  /// Row-major, rows() * cols() entries.
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  friend Kernel make_kernel(std::vector<double> grid_t, std::vector<double> grid_s, std::vector<double> values);
  Kernel() = default;

  std::vector<double> grid_t_;
  std::vector<double> grid_s_;
  std::vector<double> values_;
};

/// Throws Error(BadGrid) on invalid grids, wrong sizes or non-finite entries.
Kernel make_kernel(std::vector<double> grid_t, std::vector<double> grid_s, std::vector<double> values);
Kernel make_kernel(std::vector<double> grid_t, std::vector<double> grid_s, const std::vector<std::vector<double>>& rows);

Kernel zero_kernel(std::size_t cells_t, std::size_t cells_s);
Kernel constant_kernel(double c, std::size_t cells_t, std::size_t cells_s);
/// 1_{s <= t} on a uniform grid shared by t and s, with 1/2 on the diagonal.
Kernel lower_triangular_kernel(std::size_t cells);
/// k(t, s) = g(t) for s on `grid_s`.
Kernel rank_one_kernel(const GridFunction& g, std::vector<double> grid_s);
/// Rank-one kernel with g the tent (0, 1, 0) on {0, 1/2, 1}, s on a uniform grid.
Kernel tent_kernel(std::size_t cells_s);

/// (Kx)(t_i) = trapezoid integral of k(t_i, .) x(.); Error(GridMismatch) unless x lives on grid_s.
GridFunction apply_operator(const Kernel& k, const GridFunction& x);

/// t -> integral of k(t, s) over [0, xi]; Error(XiNotOnGrid) unless xi is a point of grid_s.
GridFunction primitive_field(const Kernel& k, double xi);
GridFunction primitive_field_at(const Kernel& k, std::size_t xi_index);

struct H2Certificate {
  std::optional<double> mu;         // largest certified mu, or none
  double sup_variation_at_mu = 0.0;
  double xi_argmax = 0.0;
  bool at_cap = false;              // every mu up to 2^40 certifies
  std::uint64_t evaluations = 0;
};

/// Largest mu in [2^-40, 2^40] with max over grid xi of var_Phi(mu * F_xi) <= 1,
/// by 60 bisection steps on log mu.
H2Certificate h2_certificate(const Kernel& k, const YoungSequence& seq, const SearchOptions& options = {});

/// max over grid xi of var_Phi(mu * F_xi), with the attaining xi.
std::pair<double, double> h2_sup_variation(const Kernel& k, const YoungSequence& seq, double mu,
                                           const SearchOptions& options = {});

struct H3Row {
  double epsilon = 0.0;
  bool ok = false;
  double delta = 0.0;
  double worst_variation = 0.0;           // max var_Phi(G / eps) over intervals of length <= delta
  std::optional<std::pair<double, double>> failing_interval;  // shortest failing [a, b]
};

struct H3Modulus {
  std::vector<H3Row> rows;  // decreasing epsilon
  bool ok() const noexcept;
};

/// For each epsilon, the largest grid length delta such that var_Phi(G_ab / eps) <= 1
/// for every grid_s interval [a, b] with b - a <= delta, G_ab(t) = integral of k(t, .) over [a, b].
H3Modulus h3_modulus(const Kernel& k, const YoungSequence& seq, std::vector<double> epsilons,
                     const SearchOptions& options = {});

struct H3ImpliesH2 {
  double delta = 0.0;
  std::size_t n = 0;
  double mu = 0.0;
  bool verified = false;
  double sup_variation = 0.0;
  std::optional<double> certificate_mu;
};

/// n = ceil(1 / delta(1)), checks the (H2) bound at mu = 1/n directly and
/// compares with h2_certificate. Error(H3Unavailable) when h3 fails at epsilon = 1.
H3ImpliesH2 h3_implies_h2(const Kernel& k, const YoungSequence& seq, const SearchOptions& options = {});

/// |x(0)| + Jordan variation.
double bv_norm(const GridFunction& x);

enum class Battery { Spikes, ShrinkingPlateaus, Sawtooth };

const char* to_string(Battery battery) noexcept;

/// x_v on `grid`: spike 1/2 max(0, 1 - |2vt - 1|); plateau 1/2 on (0, 1/v];
/// sawtooth of v teeth rising from 0 to 1/(2v) on each [j/v, (j+1)/v).
GridFunction battery_member(Battery battery, std::size_t v, const std::vector<double>& grid);

struct ContinuityReport {
  double row_integral = 0.0;  // integral of |k(t_0, .)|
  double bound = 0.0;         // row_integral + 2 / mu
  double max_ratio = 0.0;     // max ||Kx||_Phi / ||x||_BV over the battery
  std::string max_ratio_member;
  bool ok = false;            // every member satisfies ||Kx||_Phi <= bound ||x||_BV + 1e-6
};

ContinuityReport continuity_bound(const Kernel& k, const YoungSequence& seq, double mu,
                                  const SearchOptions& options = {});

struct ProbeRow {
  std::size_t v = 0;
  double bv = 0.0;
  double norm = 0.0;  // ||K x_v||_Phi
};

struct ProbeReport {
  Battery battery = Battery::Spikes;
  std::vector<ProbeRow> rows;
  bool monotone = false;
  double final_norm = 0.0;
  double threshold = 0.0;
  bool decay_consistent = false;
};

/// ||K x_v||_Phi for v = 1, 2, 4, ..., v_max. Decay-consistent when the values
/// never increase and the last is below `threshold`. Evidence, not proof.
/// Error(Precondition) when some x_v vanishes at every point of grid_s.
ProbeReport compactness_probe(const Kernel& k, const YoungSequence& seq, Battery battery, std::size_t v_max,
                              double threshold = 1e-3, const SearchOptions& options = {});

/// max over t of |Kx(t) - [x(1) F_1(t) - sum_j F_{s_j}(t) (x(s_j) - x(s_{j-1}))]|.
double representation_residual(const Kernel& k, const GridFunction& x);

struct HellyResult {
  std::vector<std::size_t> indices;
  GridFunction limit;
};

/// Diagonal extraction: coordinate by coordinate keep either a large class of
/// values equal within 1e-9 or a longest monotone subsequence. The limit is the
/// last selected member. Error(NotBounded) when a member exceeds `bound` in
/// sup norm or Jordan variation; members must share a grid.
HellyResult helly_extract(const std::vector<GridFunction>& seqs, double bound);

}  // namespace phibv
