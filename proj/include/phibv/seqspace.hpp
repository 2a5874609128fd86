#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phibv/grid.hpp"

namespace phibv {

/// (xi_k) in l^p as an explicit head xi_1..xi_N plus a certified bound on
/// (sum_{k>N} |xi_k|^p)^(1/p).
struct TruncatedSequence {
  double p = 1.0;
  std::vector<double> head;
  double tail_bound = 0.0;

  std::size_t length() const noexcept { return head.size(); }
};

/// Throws Error(Domain) for p < 1, negative or non-finite tail bound, non-finite head.
void check_sequence(const TruncatedSequence& x);

/// (sum_{k<=i} |xi_k|^p)^(1/p); Error(IndexBeyondHead) when i > N.
double lp_seminorm(const TruncatedSequence& x, std::size_t i);

/// Upper bound ((sum_{n<k<=N} |xi_k|^p) + tail_bound^p)^(1/p).
double lp_tail(const TruncatedSequence& x, std::size_t n);

/// Full norm bound, lp_tail(x, 0).
double lp_norm(const TruncatedSequence& x);

struct LpCompactnessResult {
  bool success = false;
  std::size_t witness = 0;   // smallest admissible n on success
  double worst_tail = 0.0;   // max tail at the witness, or at n = N on failure
};

/// Smallest n <= N with max over A of lp_tail(., n) <= epsilon. Members must
/// share p (Error(MixedExponents)) and head length (Error(Precondition)).
LpCompactnessResult lp_compactness_check(const std::vector<TruncatedSequence>& set, double epsilon);

/// (r^(k-1))_{k>=1} with N head terms and the exact geometric tail bound.
TruncatedSequence geometric_sequence(double r, std::size_t n_head, double p = 1.0);

/// e_1..e_N, plus one member with empty head and tail bound 1 standing for
/// every e_k with k > N.
std::vector<TruncatedSequence> unit_vector_family(std::size_t n_head, double p = 1.0);

/// (a+b)^p <= a^p + p b (a+b)^(p-1) with slack 1e-12 * max(1, rhs).
bool power_mean_inequality_check(double a, double b, double p);

/// Prefix l^p seminorms indexed by i, join = max, norm = head + tail bound.
class PrefixLpFamily {
 public:
  using Index = std::size_t;
  using Sample = TruncatedSequence;

  double evaluate(const TruncatedSequence& x, std::size_t i) const { return lp_seminorm(x, i); }
  double norm(const TruncatedSequence& x) const { return lp_norm(x); }
  std::size_t join(std::size_t i, std::size_t j) const { return i > j ? i : j; }
};

/// Finite prefix (t_j) of a dense sequence of points of [0,1].
struct DensePointFamily {
  std::vector<double> points;
};

/// max over F's points of |x(t_j)|; Error(PointNotOnGrid) when a point is not
/// a grid point (matched within 1e-12).
double cX_seminorm(const GridFunction& x, const DensePointFamily& family);

/// max over members and grid pairs with |t_i - t_j| <= delta of |x(t_i) - x(t_j)|.
double equicontinuity_modulus(const std::vector<GridFunction>& set, double delta);

/// max_{k<=i} |xi_k| on a finite sequence (zero beyond its length).
double sup_prefix_seminorm(std::span<const double> xi, std::size_t i);
double sup_norm(std::span<const double> xi);

struct SuiteRow {
  std::string name;
  std::string quantity;
  double expected = 0.0;
  double observed = 0.0;  // worst case over the instances checked
  std::size_t checks = 0;
  bool pass = false;
};

/// Unit vectors in c_0, the midpoints of convex combinations in c_0, and the
/// bounded set in c_00, truncated at n_head terms.
std::vector<SuiteRow> counterexample_suite(std::size_t n_head = 64);

}  // namespace phibv
