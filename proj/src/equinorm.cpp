#include "phibv/equinorm.hpp"

#include <algorithm>
#include <cmath>

#include "phibv/error.hpp"

namespace phibv {

const char* to_string(CompactnessVerdict verdict) noexcept {
  return verdict == CompactnessVerdict::CertifiedEquinormed ? "certified-equinormed" : "fail-at-budget";
}

namespace {

struct Member {
  GridFunction f;
  std::size_t first;
  std::optional<std::size_t> second;
};

std::vector<Member> members_of(const std::vector<GridFunction>& set, bool pairwise) {
  for (std::size_t i = 1; i < set.size(); ++i) {
    if (!set[i].same_grid(set[0])) throw Error(ErrorKind::MixedGrids, "members live on different grids");
  }
  std::vector<Member> out;
  if (!pairwise) {
    for (std::size_t i = 0; i < set.size(); ++i) out.push_back({set[i], i, std::nullopt});
    return out;
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) out.push_back({difference(set[i], set[j]), i, j});
  }
  return out;
}

double clamp_defect(double full, double part) {
  const double d = full - part;
  return d <= 1e-9 * std::max(1.0, full) ? 0.0 : d;
}

class DefectEvaluator {
 public:
  DefectEvaluator(std::vector<Member> members, const YoungSequence& seq, const SearchOptions& options)
      : members_(std::move(members)), seq_(seq), options_(options) {
    for (const auto& m : members_) full_.push_back(schramm_seminorm(m.f, seq_, options_).value);
  }

  const std::vector<Member>& members() const { return members_; }
  double full(std::size_t k) const { return full_[k]; }
  double scale() const {
    double s = 1.0;
    for (double v : full_) s = std::max(s, v);
    return s;
  }

  double member_defect(std::size_t k, const IntervalFamily& family) const {
    return clamp_defect(full_[k], luxemburg_seminorm(members_[k].f, seq_, family, options_).value);
  }

  std::vector<double> defects(const IntervalFamily& family) const {
    std::vector<double> d(members_.size());
    for (std::size_t k = 0; k < members_.size(); ++k) d[k] = member_defect(k, family);
    return d;
  }

 private:
  std::vector<Member> members_;
  const YoungSequence& seq_;
  SearchOptions options_;
  std::vector<double> full_;
};

double worst(const std::vector<double>& d) {
  double w = 0.0;
  for (double v : d) w = std::max(w, v);
  return w;
}

double total(const std::vector<double>& d) {
  double s = 0.0;
  for (double v : d) s += v;
  return s;
}

}  // namespace

DefectReport defect(const std::vector<GridFunction>& set, const YoungSequence& seq, const IntervalFamily& family,
                    bool pairwise, const SearchOptions& options) {
  DefectEvaluator ev(members_of(set, pairwise), seq, options);
  DefectReport out;
  out.family = family;
  const auto d = ev.defects(family);
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] > out.defect) {
      out.defect = d[k];
      out.argmax = ev.members()[k].first;
      out.argmax_second = ev.members()[k].second;
    }
  }
  if (out.defect == 0.0 && !ev.members().empty()) {
    out.argmax = ev.members()[0].first;
    out.argmax_second = ev.members()[0].second;
  }
  return out;
}

CompactnessRow witness_search(const std::vector<GridFunction>& set, const YoungSequence& seq, double epsilon,
                              bool pairwise, std::size_t budget, const SearchOptions& options) {
  if (!(epsilon >= 0.0)) throw Error(ErrorKind::Domain, "epsilon must be non-negative");
  DefectEvaluator ev(members_of(set, pairwise), seq, options);
  const auto& mem = ev.members();
  CompactnessRow row;
  row.epsilon = epsilon;
  if (mem.empty()) {
    row.success = true;
    return row;
  }
  const std::size_t points = mem[0].f.points();
  const double tol = 1e-9 * ev.scale();

  // Intervals on which every member is flat cannot change any seminorm.
  std::vector<GridInterval> pool;
  std::vector<std::vector<bool>> moves;  // moves[c][k]: member k changes on pool[c]
  for (const auto& iv : all_intervals(points)) {
    std::vector<bool> m(mem.size());
    bool any = false;
    for (std::size_t k = 0; k < mem.size(); ++k) {
      m[k] = increment(mem[k].f, iv) != 0.0;
      any = any || m[k];
    }
    if (!any) continue;
    pool.push_back(iv);
    moves.push_back(std::move(m));
  }

  IntervalFamily family;
  std::vector<double> cur = ev.defects(family);
  std::vector<bool> taken(pool.size(), false);
  while (worst(cur) > epsilon && family.size() < budget) {
    long pick = -1;
    std::vector<double> pick_d;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (taken[c]) continue;
      IntervalFamily trial = family;
      trial.insert(pool[c]);
      std::vector<double> d = cur;
      for (std::size_t k = 0; k < mem.size(); ++k) {
        if (moves[c][k] && cur[k] > 0.0) d[k] = ev.member_defect(k, trial);
      }
      bool better = pick < 0;
      if (!better) {
        const double w = worst(d), pw = worst(pick_d);
        better = w < pw - tol || (std::abs(w - pw) <= tol && total(d) < total(pick_d) - tol);
      }
      if (better) {
        pick = static_cast<long>(c);
        pick_d = std::move(d);
      }
    }
    if (pick < 0) break;
    taken[static_cast<std::size_t>(pick)] = true;
    family.insert(pool[static_cast<std::size_t>(pick)]);
    cur = std::move(pick_d);
  }

  row.success = worst(cur) <= epsilon;
  if (row.success) {
    const auto chosen = family.intervals();
    for (const auto& iv : chosen) {
      IntervalFamily trial = family;
      trial.erase(iv);
      const auto d = ev.defects(trial);
      if (worst(d) <= epsilon) {
        family = std::move(trial);
        cur = d;
      }
    }
  }
  row.defect = worst(cur);
  row.cardinality = family.size();
  row.family = std::move(family);
  return row;
}

CompactnessReport compactness_report(const std::vector<GridFunction>& set, const YoungSequence& seq,
                                     std::vector<double> epsilons, bool pairwise, std::size_t budget,
                                     const SearchOptions& options) {
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  CompactnessReport report;
  for (double eps : epsilons) {
    report.rows.push_back(witness_search(set, seq, eps, pairwise, budget, options));
    if (!report.rows.back().success) report.verdict = CompactnessVerdict::FailAtBudget;
  }
  return report;
}

}  // namespace phibv
