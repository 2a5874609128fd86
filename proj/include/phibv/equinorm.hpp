#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "phibv/grid.hpp"
#include "phibv/luxemburg.hpp"
#include "phibv/variation.hpp"
#include "phibv/young.hpp"

namespace phibv {

/// max over members of |x|_Phi - |x|_J. With pairwise set, members are the
/// differences x_i - x_j, i < j, and the argmax is a pair.
struct DefectReport {
  double defect = 0.0;
  std::size_t argmax = 0;
  std::optional<std::size_t> argmax_second;
  IntervalFamily family;
};

/// Throws Error(MixedGrids) unless all members share a grid.
DefectReport defect(const std::vector<GridFunction>& set, const YoungSequence& seq, const IntervalFamily& family,
                    bool pairwise = false, const SearchOptions& options = {});

struct CompactnessRow {
  double epsilon = 0.0;
  bool success = false;
  IntervalFamily family;  // witness on success, last family tried otherwise
  double defect = 0.0;
  std::size_t cardinality = 0;
};

enum class CompactnessVerdict { CertifiedEquinormed, FailAtBudget };

const char* to_string(CompactnessVerdict verdict) noexcept;

struct CompactnessReport {
  std::vector<CompactnessRow> rows;  // decreasing epsilon
  CompactnessVerdict verdict = CompactnessVerdict::CertifiedEquinormed;
};

/// Greedy growth from the empty family: each step adds the grid interval
/// giving the smallest worst defect, then the smallest total defect, earliest
/// interval on ties. Stops at defect <= epsilon (then drops intervals that are
/// not needed) or when the family reaches `budget` intervals without success.
CompactnessRow witness_search(const std::vector<GridFunction>& set, const YoungSequence& seq, double epsilon,
                              bool pairwise, std::size_t budget, const SearchOptions& options = {});

CompactnessReport compactness_report(const std::vector<GridFunction>& set, const YoungSequence& seq,
                                     std::vector<double> epsilons, bool pairwise, std::size_t budget,
                                     const SearchOptions& options = {});

/// An indexed family of norms over samples, with a join on indices.
template <class F>
concept SeminormFamily = requires(const F& f, const typename F::Index& i, const typename F::Sample& x) {
  { f.evaluate(x, i) } -> std::convertible_to<double>;
  { f.norm(x) } -> std::convertible_to<double>;
  { f.join(i, i) } -> std::convertible_to<typename F::Index>;
};

struct AxiomRow {
  std::string axiom;  // "A1" or "A2"
  std::size_t sample = 0;
  std::size_t first = 0;   // index positions; A1 rows use first only
  std::size_t second = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
};

struct AxiomReport {
  std::vector<AxiomRow> rows;
  bool a1 = true;
  bool a2 = true;
  bool pass() const noexcept { return a1 && a2; }
};

/// A1: sup over the given indices equals the full norm within 1e-10 (relative
/// to max(1, norm)). A2: at the join of any two indices both values are
/// dominated within 1e-12.
template <SeminormFamily F>
AxiomReport check_A1_A2(const F& family, const std::vector<typename F::Sample>& samples,
                        const std::vector<typename F::Index>& indices) {
  AxiomReport report;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& x = samples[s];
    const double full = family.norm(x);
    std::vector<double> vals;
    vals.reserve(indices.size());
    for (const auto& i : indices) vals.push_back(family.evaluate(x, i));
    AxiomRow a1{"A1", s, 0, 0, 0.0, full, true};
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (vals[k] > a1.lhs) {
        a1.lhs = vals[k];
        a1.first = k;
      }
    }
    a1.pass = std::abs(a1.lhs - full) <= 1e-10 * std::max(1.0, full);
    report.a1 = report.a1 && a1.pass;
    report.rows.push_back(a1);
    for (std::size_t i = 0; i < indices.size(); ++i) {
      for (std::size_t j = i + 1; j < indices.size(); ++j) {
        const double joined = family.evaluate(x, family.join(indices[i], indices[j]));
        const double need = std::max(vals[i], vals[j]);
        AxiomRow a2{"A2", s, i, j, joined, need, joined >= need - 1e-12 * std::max(1.0, need)};
        if (!a2.pass) report.a2 = false;
        if (!a2.pass || (i == 0 && j == 1)) report.rows.push_back(a2);
      }
    }
  }
  return report;
}

/// ||x||_J indexed by interval families, join = union, norm = ||x||_Phi.
class IntervalSeminormFamily {
 public:
  using Index = IntervalFamily;
  using Sample = GridFunction;

  explicit IntervalSeminormFamily(YoungSequence seq, SearchOptions options = {})
      : seq_(std::move(seq)), options_(options) {}

  double evaluate(const GridFunction& x, const IntervalFamily& family) const {
    return luxemburg_norm(x, seq_, family, options_);
  }
  double norm(const GridFunction& x) const { return schramm_norm(x, seq_, options_); }
  IntervalFamily join(const IntervalFamily& a, const IntervalFamily& b) const { return a.united(b); }

 private:
  YoungSequence seq_;
  SearchOptions options_;
};

/// Multiplies every indexed value of another family, leaving the norm alone.
template <SeminormFamily F>
class ScaledFamily {
 public:
  using Index = typename F::Index;
  using Sample = typename F::Sample;

  ScaledFamily(F inner, double factor) : inner_(std::move(inner)), factor_(factor) {}

  double evaluate(const Sample& x, const Index& i) const { return factor_ * inner_.evaluate(x, i); }
  double norm(const Sample& x) const { return inner_.norm(x); }
  Index join(const Index& a, const Index& b) const { return inner_.join(a, b); }

 private:
  F inner_;
  double factor_;
};

}  // namespace phibv
