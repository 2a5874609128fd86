#include <random>

#include "doctest.h"
#include "phibv/equinorm.hpp"
#include "phibv/error.hpp"
#include "phibv/seqspace.hpp"

using namespace phibv;

namespace {

std::vector<GridFunction> spikes(std::size_t cells) {
  std::vector<GridFunction> out;
  for (std::size_t i = 1; i < cells; ++i) {
    std::vector<double> v(cells + 1, 0.0);
    v[i] = 1.0;
    out.push_back(make_grid_function(uniform_grid(cells), v));
  }
  return out;
}

GridFunction random_function(std::mt19937_64& rng, std::size_t cells) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(cells + 1);
  for (double& e : v) e = u(rng);
  return make_grid_function(uniform_grid(cells), std::move(v));
}

std::size_t monotone_runs(const GridFunction& x) {
  std::size_t runs = 0;
  int dir = 0;
  for (std::size_t i = 1; i < x.points(); ++i) {
    const double d = x[i] - x[i - 1];
    const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (s != 0 && s != dir) {
      ++runs;
      dir = s;
    }
  }
  return runs;
}

}  // namespace

TEST_CASE("defect examples") {
  const auto j = jordan_sequence();
  const auto sp = spikes(6);
  CHECK(defect(sp, j, all_intervals(7)).defect == 0.0);
  const auto r = defect(sp, j, IntervalFamily({{0, 6}}));
  CHECK(r.defect == doctest::Approx(2.0).epsilon(1e-10));

  const auto g = uniform_grid(4);
  const std::vector<GridFunction> steps{make_grid_function(g, {0, 0, 1, 1, 1}), make_grid_function(g, {0, 0, 2, 2, 2})};
  CHECK(defect(steps, j, IntervalFamily({{0, 4}})).defect == 0.0);

  const std::vector<GridFunction> mixed{make_grid_function(g, {0, 0, 1, 1, 1}), make_grid_function({0.0, 1.0}, {0, 1})};
  try {
    defect(mixed, j, IntervalFamily());
    FAIL("expected MixedGrids");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MixedGrids);
  }
}

TEST_CASE("defect properties") {
  std::mt19937_64 rng(17);
  const auto h = helly_counterexample_sequence();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<GridFunction> a{random_function(rng, 4), random_function(rng, 4), random_function(rng, 4)};
    std::vector<GridFunction> b{random_function(rng, 4)};
    IntervalFamily j1, j2;
    for (const auto& iv : all_intervals(5)) {
      if (rng() % 3 == 0) j1.insert(iv);
    }
    j2 = j1;
    j2.insert({0, 4});
    j2.insert({1, 2});
    CHECK(defect(a, h, j2).defect <= defect(a, h, j1).defect + 1e-10);
    const std::vector<GridFunction> sub(a.begin(), a.begin() + 2);
    CHECK(defect(sub, h, j1).defect <= defect(a, h, j1).defect);
    auto un = a;
    un.insert(un.end(), b.begin(), b.end());
    CHECK(defect(un, h, j1).defect == std::max(defect(a, h, j1).defect, defect(b, h, j1).defect));
    const std::vector<GridFunction> diffs{difference(a[0], a[1]), difference(a[0], a[2]), difference(a[1], a[2])};
    CHECK(defect(a, h, j1, true).defect == defect(diffs, h, j1).defect);
  }
}

TEST_CASE("witness search") {
  const auto j = jordan_sequence();
  const std::size_t m = 6;
  const auto sp = spikes(m);
  const auto full = witness_search(sp, j, 0.0, false, m * (m + 1) / 2);
  CHECK(full.success);
  CHECK(full.defect == 0.0);

  const auto half = witness_search(sp, j, 0.5, false, m * (m + 1) / 2);
  CHECK(half.success);
  CHECK(half.cardinality >= m - 1);
  CHECK(half.defect <= 0.5);

  const auto one = witness_search(sp, j, 0.5, false, 1);
  CHECK_FALSE(one.success);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_function(rng, 6);
    const auto r = witness_search({x}, j, 0.05, false, 21);
    CHECK(r.success);
    CHECK(r.cardinality <= monotone_runs(x));
  }
}

TEST_CASE("compactness report") {
  const auto j = jordan_sequence();
  const auto sp = spikes(5);
  const auto fail = compactness_report(sp, j, {0.5}, false, 1);
  CHECK(fail.verdict == CompactnessVerdict::FailAtBudget);

  const auto x0 = make_grid_function(uniform_grid(4), {0.0, 1.0, 0.5, 0.75, -0.25});
  std::vector<GridFunction> scaled;
  for (int k = 0; k <= 10; ++k) scaled.push_back(x0.scaled(0.1 * k));
  const auto rep = compactness_report(scaled, j, {0.2, 0.0, 0.05}, false, 10);
  CHECK(rep.verdict == CompactnessVerdict::CertifiedEquinormed);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].epsilon == 0.2);
  CHECK(rep.rows[2].epsilon == 0.0);
  const auto alone = compactness_report({x0}, j, {0.2, 0.0, 0.05}, false, 10);
  for (std::size_t i = 0; i < 3; ++i) CHECK(rep.rows[i].family == alone.rows[i].family);
}

TEST_CASE("witness families are invariant under scaling") {
  std::mt19937_64 rng(31);
  const auto h = helly_counterexample_sequence();
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<GridFunction> a{random_function(rng, 4), random_function(rng, 4)};
    const double c = -2.5;
    std::vector<GridFunction> ca{a[0].scaled(c), a[1].scaled(c)};
    const auto r = witness_search(a, h, 0.1, false, 10);
    const auto rc = witness_search(ca, h, 0.1 * std::abs(c), false, 10);
    CHECK(r.success == rc.success);
    CHECK(r.family == rc.family);
  }
}

TEST_CASE("axioms A1 and A2") {
  std::mt19937_64 rng(41);
  IntervalSeminormFamily fam(helly_counterexample_sequence());
  std::vector<GridFunction> xs{random_function(rng, 3), random_function(rng, 3)};
  std::vector<IntervalFamily> idx{IntervalFamily({{0, 1}}), IntervalFamily({{1, 3}, {0, 1}}), all_intervals(4),
                                  IntervalFamily({{2, 3}})};
  const auto ok = check_A1_A2(fam, xs, idx);
  CHECK(ok.a1);
  CHECK(ok.a2);

  PrefixLpFamily lp;
  std::vector<TruncatedSequence> seqs{{2.0, {1.0, -2.0, 0.5, 0.0, 3.0}, 0.0}, {2.0, {0.0, 0.0, 0.0, 1.0, 0.0}, 0.0}};
  std::vector<std::size_t> prefixes{1, 2, 3, 4, 5};
  const auto lp_ok = check_A1_A2(lp, seqs, prefixes);
  CHECK(lp_ok.pass());

  ScaledFamily<PrefixLpFamily> broken(lp, 0.5);
  const auto bad = check_A1_A2(broken, seqs, prefixes);
  CHECK_FALSE(bad.a1);
  CHECK(bad.a2);
}
