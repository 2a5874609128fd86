#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phibv/grid.hpp"
#include "phibv/young.hpp"

namespace phibv {

enum class SearchMode { Exact, Heuristic };

const char* to_string(SearchMode mode) noexcept;

struct SearchOptions {
  SearchMode mode = SearchMode::Exact;
  std::uint64_t node_budget = 10'000'000;
};

/// Best value of sum_n phi_n(d_{pi(n)}) over bijections pi, with the attaining
/// assignment: phi_index[j] is the Young index given to increments[j].
struct AssignmentResult {
  double value = 0.0;
  std::vector<int> phi_index;
};

/// Sorted-descending when vince_flag holds, Hungarian otherwise.
AssignmentResult assignment_value(const YoungSequence& seq, std::span<const double> increments);
/// Largest increment to phi_1, next to phi_2, ... regardless of the sequence.
AssignmentResult sorted_assignment_value(const YoungSequence& seq, std::span<const double> increments);
/// Exact linear assignment (Hungarian) regardless of the sequence.
AssignmentResult optimal_assignment_value(const YoungSequence& seq, std::span<const double> increments);

struct VariationResult {
  double value = 0.0;
  IntervalSelection witness;  // sorted by (a, b), with explicit assignment
  SearchMode mode = SearchMode::Exact;
  std::uint64_t nodes_explored = 0;
};

/// Candidate intervals with the magnitudes |x(I)| the objective sees. Scaling
/// a function (x / lambda, 2x) only changes the magnitudes.
struct VariationProblem {
  std::size_t points = 0;
  std::vector<GridInterval> intervals;
  std::vector<double> magnitudes;
  /// Keep degenerate and zero-magnitude intervals as search candidates.
  bool keep_null_intervals = false;
  /// Only selections whose union is not all of [0,1] are admissible.
  bool require_uncovered = false;
};

VariationProblem make_variation_problem(const GridFunction& x, const IntervalFamily& family);
VariationProblem scaled_problem(const VariationProblem& problem, double factor);

/// Maximizes over non-overlapping selections. Exact mode uses dynamic
/// programming when all phi_n coincide and branch-and-bound otherwise; throws
/// Error(BudgetExceeded) past the node budget. Heuristic mode is greedy plus
/// single swaps and returns a lower bound.
VariationResult solve_variation(const VariationProblem& problem, const YoungSequence& seq,
                                const SearchOptions& options = {});

/// V_J(x).
VariationResult variation_over_family(const GridFunction& x, const YoungSequence& seq, const IntervalFamily& family,
                                      const SearchOptions& options = {});

/// var_Phi(x) = V_J(x) over all grid intervals.
VariationResult schramm_variation(const GridFunction& x, const YoungSequence& seq, const SearchOptions& options = {});

/// Sum of |x(t_i) - x(t_{i-1})|.
double jordan_variation(const GridFunction& x);

/// sum_i phi_{sel.phi_index(i)}(factor * |x(I_i)|) for a fixed selection.
double selection_value(const GridFunction& x, const YoungSequence& seq, const IntervalSelection& sel,
                       double factor = 1.0);

/// Enumerates every non-overlapping selection and every assignment. Reference
/// value for tests; throws Error(TooLarge) beyond 16 cells.
double brute_force_variation(const GridFunction& x, const YoungSequence& seq);

/// Grid surrogates of the five suprema over finite/infinite, degenerate/non-degenerate
/// interval collections.
struct FiveSuprema {
  double alpha_grid = 0.0;       // non-degenerate selections leaving part of [0,1] uncovered
  double alpha_star_grid = 0.0;  // non-degenerate selections, doubled increments
  double beta_grid = 0.0;        // = delta_grid
  double gamma_grid = 0.0;       // non-degenerate selections
  double delta_grid = 0.0;       // selections that may contain degenerate intervals
  IntervalSelection alpha_witness;
  IntervalSelection alpha_star_witness;
  IntervalSelection delta_witness;
};

FiveSuprema five_suprema(const GridFunction& x, const YoungSequence& seq, const SearchOptions& options = {});

}  // namespace phibv
