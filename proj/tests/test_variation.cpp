#include <cmath>
#include <random>

#include "doctest.h"
#include "phibv/error.hpp"
#include "phibv/variation.hpp"

using namespace phibv;

namespace {

GridFunction random_function(std::mt19937_64& rng, std::size_t cells, bool dyadic) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(cells + 1);
  for (double& e : v) e = dyadic ? std::round(u(rng) * 32.0) / 32.0 : u(rng);
  return make_grid_function(uniform_grid(cells), std::move(v));
}

void check_witness(const VariationResult& r, const GridFunction& x, const YoungSequence& seq) {
  CHECK(is_nonoverlapping(r.witness));
  std::vector<int> a = r.witness.assignment;
  std::sort(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == static_cast<int>(i) + 1);
  CHECK(selection_value(x, seq, r.witness) == doctest::Approx(r.value).epsilon(1e-13));
}

}  // namespace

TEST_CASE("assignment values") {
  const auto j = jordan_sequence();
  const double d[] = {0.3, 0.7};
  CHECK(assignment_value(j, d).value == doctest::Approx(1.0));

  const auto h = helly_counterexample_sequence();
  const double hd[] = {0.75, 0.5};
  const auto best = assignment_value(h, hd);
  CHECK(best.value == 1.0625);
  CHECK(best.phi_index == std::vector<int>{2, 1});
  CHECK(sorted_assignment_value(h, hd).value == 1.0);
  CHECK(assignment_value(h, std::span<const double>{}).value == 0.0);
}

TEST_CASE("Hungarian dominates sorted, and agrees under the Vince condition") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const auto h = helly_counterexample_sequence();
  const auto w = waterman_sequence({4.0, 2.5, 1.5, 1.0});
  const auto c = custom_sequence({YoungFunction::power(2.0, 3.0), YoungFunction::power(2.0, 2.0), YoungFunction::power(2.0)});
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> d(1 + rng() % 7);
    for (double& e : d) e = u(rng);
    CHECK(optimal_assignment_value(h, d).value >= sorted_assignment_value(h, d).value - 1e-12);
    CHECK(optimal_assignment_value(w, d).value == doctest::Approx(sorted_assignment_value(w, d).value).epsilon(1e-12));
    CHECK(c.vince_flag());
    CHECK(optimal_assignment_value(c, d).value == doctest::Approx(sorted_assignment_value(c, d).value).epsilon(1e-12));
  }
}

TEST_CASE("worked instances") {
  const auto flat = make_grid_function({0.0, 0.5, 1.0}, {2.0, 2.0, 2.0});
  const auto r0 = schramm_variation(flat, helly_counterexample_sequence());
  CHECK(r0.value == 0.0);
  CHECK(r0.witness.intervals.empty());

  const auto hx = make_grid_function({0.0, 0.5, 1.0}, {0.75, 0.0, 0.5});
  const auto r1 = schramm_variation(hx, helly_counterexample_sequence());
  CHECK(r1.value == 1.0625);
  CHECK(r1.witness.intervals == std::vector<GridInterval>{{0, 1}, {1, 2}});
  CHECK(r1.witness.assignment == std::vector<int>{2, 1});

  const auto fx = make_grid_function({0.0, 0.5, 0.75, 1.0}, {0.0, 1.5, 1.75, 3.0});
  const auto r2 = schramm_variation(fx, waterman_sequence({10.0, 1.0}));
  CHECK(r2.value == 30.0);
  CHECK(r2.witness.intervals == std::vector<GridInterval>{{0, 3}});

  const auto up_down = make_grid_function({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
  const auto r3 = schramm_variation(up_down, jordan_sequence());
  CHECK(r3.value == 2.0);
  CHECK(r3.witness.intervals == std::vector<GridInterval>{{0, 1}, {1, 2}});

  const auto step = make_grid_function({0.0, 1.0}, {0.0, 3.0});
  CHECK(schramm_variation(step, waterman_sequence({10.0, 1.0})).value == 30.0);

  CHECK(jordan_variation(make_grid_function({0.0, 1.0}, {0.0, 0.0})) == 0.0);
  CHECK(jordan_variation(up_down) == 2.0);
}

TEST_CASE("exact search equals brute force") {
  std::mt19937_64 rng(21);
  const YoungSequence seqs[] = {jordan_sequence(), wiener_sequence(2.0), wiener_sequence(1.5),
                                waterman_sequence({3.0, 2.0, 1.0}), helly_counterexample_sequence()};
  for (const auto& s : seqs) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto x = random_function(rng, 1 + rng() % 7, false);
      const auto r = schramm_variation(x, s);
      CHECK(r.value == doctest::Approx(brute_force_variation(x, s)).epsilon(1e-12));
      check_witness(r, x, s);
    }
  }
}

TEST_CASE("Jordan variation is the search value exactly on dyadic data") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_function(rng, 1 + rng() % 12, true);
    CHECK(schramm_variation(x, jordan_sequence()).value == jordan_variation(x));
  }
}

TEST_CASE("heuristic is a lower bound") {
  std::mt19937_64 rng(8);
  const auto h = helly_counterexample_sequence();
  const auto w = waterman_sequence({2.0, 1.0});
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = random_function(rng, 2 + rng() % 7, false);
    SearchOptions heur;
    heur.mode = SearchMode::Heuristic;
    for (const YoungSequence* s : {&h, &w}) {
      const auto lo = schramm_variation(x, *s, heur);
      CHECK(lo.mode == SearchMode::Heuristic);
      CHECK(lo.value <= schramm_variation(x, *s).value + 1e-12);
      CHECK(is_nonoverlapping(lo.witness));
    }
  }
}

TEST_CASE("monotone in the family and in scaling") {
  std::mt19937_64 rng(13);
  const auto h = helly_counterexample_sequence();
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = random_function(rng, 6, false);
    const auto all = all_intervals(x);
    IntervalFamily part;
    for (const auto& iv : all) {
      if (rng() % 2) part.insert(iv);
    }
    CHECK(variation_over_family(x, h, part).value <= variation_over_family(x, h, all).value);
    CHECK(schramm_variation(x.scaled(0.5), h).value <= schramm_variation(x, h).value);
  }
}

TEST_CASE("budget and size limits") {
  std::mt19937_64 rng(1);
  const auto x = random_function(rng, 12, false);
  SearchOptions tiny;
  tiny.node_budget = 10;
  try {
    schramm_variation(x, helly_counterexample_sequence(), tiny);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  const auto big = make_grid_function(uniform_grid(17), std::vector<double>(18, 0.0));
  try {
    brute_force_variation(big, jordan_sequence());
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("five suprema") {
  const auto seq = waterman_sequence({10.0, 1.0});
  const auto fx = make_grid_function({0.0, 0.5, 0.75, 1.0}, {0.0, 1.5, 1.75, 3.0});
  const auto f = five_suprema(fx, seq);
  CHECK(f.beta_grid == 30.0);
  CHECK(f.gamma_grid == 30.0);
  CHECK(f.delta_grid == 30.0);
  CHECK(f.alpha_grid == 17.5);
  CHECK(f.alpha_witness.intervals == std::vector<GridInterval>{{0, 2}});
  CHECK(f.alpha_star_grid >= 30.5);
  CHECK(selection_value(fx, seq, IntervalSelection{{{0, 1}, {1, 2}}, {}}, 2.0) == 30.5);

  const auto z = five_suprema(make_grid_function({0.0, 0.5, 1.0}, {1.0, 1.0, 1.0}), seq);
  CHECK(z.alpha_grid == 0.0);
  CHECK(z.alpha_star_grid == 0.0);
  CHECK(z.delta_grid == 0.0);

  std::mt19937_64 rng(2);
  const auto h = helly_counterexample_sequence();
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = random_function(rng, 1 + rng() % 5, false);
    for (const YoungSequence* s : {&seq, &h}) {
      const auto r = five_suprema(x, *s);
      CHECK(r.alpha_grid <= r.delta_grid + 1e-12);
      CHECK(r.delta_grid <= r.alpha_star_grid + 1e-12);
      CHECK(r.beta_grid == r.delta_grid);
      CHECK(r.gamma_grid == doctest::Approx(r.delta_grid).epsilon(1e-12));
    }
  }
}
