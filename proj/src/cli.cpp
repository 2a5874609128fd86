#include "phibv/cli.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "phibv/equinorm.hpp"
#include "phibv/error.hpp"
#include "phibv/integral_operator.hpp"
#include "phibv/json_io.hpp"
#include "phibv/luxemburg.hpp"
#include "phibv/seqspace.hpp"
#include "phibv/variation.hpp"

namespace phibv::cli {
namespace {

struct Config {
  std::string young = "jordan";
  std::string input;
  std::string kernel;
  std::string family;
  std::vector<double> eps;
  std::uint64_t budget = 0;
  std::string mode = "exact";
  std::string format = "json";
  std::string battery = "all";
  std::size_t v_max = 64;
  double threshold = 1e-3;
  bool pairwise = false;
  unsigned seed = 0;
};

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

SearchOptions search_options(const Config& c) {
  SearchOptions o;
  if (c.mode == "heuristic") o.mode = SearchMode::Heuristic;
  else if (c.mode != "exact") throw Error(ErrorKind::Parse, "mode must be exact or heuristic");
  if (c.budget > 0) o.node_budget = c.budget;
  return o;
}

std::string need(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorKind::Parse, std::string("missing ") + flag);
  return value;
}

std::vector<GridFunction> members_from(const json& j) {
  const json& arr = j.is_array() ? j : j.at("members");
  std::vector<GridFunction> out;
  for (const auto& m : arr) out.push_back(grid_function_from_json(m));
  return out;
}

std::string show(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void print_flat(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_flat(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  out << prefix << ": " << j.dump() << '\n';
}

void emit(const json& j, const Config& c, std::ostream& out) {
  if (c.format == "table") print_flat(j, "", out);
  else out << j.dump(2) << '\n';
}

int cmd_variation(const Config& c, std::ostream& out) {
  const auto x = load_grid_function(need(c.input, "--input"));
  const auto seq = parse_young_argument(c.young);
  const IntervalFamily family = c.family.empty() ? all_intervals(x) : interval_family_from_json(read_json_file(c.family));
  json j = to_json(variation_over_family(x, seq, family, search_options(c)));
  j["young"] = to_json(seq);
  emit(j, c, out);
  return Ok;
}

int cmd_oracle(const Config& c, std::ostream& out) {
  const auto x = load_grid_function(need(c.input, "--input"));
  const auto seq = parse_young_argument(c.young);
  emit(json{{"value", brute_force_variation(x, seq)}, {"young", to_json(seq)}}, c, out);
  return Ok;
}

int cmd_norm(const Config& c, std::ostream& out) {
  const auto x = load_grid_function(need(c.input, "--input"));
  const auto seq = parse_young_argument(c.young);
  const IntervalFamily family = c.family.empty() ? all_intervals(x) : interval_family_from_json(read_json_file(c.family));
  const auto semi = luxemburg_seminorm(x, seq, family, search_options(c));
  emit(json{{"seminorm", to_json(semi)},
            {"norm", std::abs(x[0]) + semi.value},
            {"sup_norm_bound_constant", sup_norm_bound_constant(seq)},
            {"young", to_json(seq)}},
       c, out);
  return Ok;
}

int cmd_five(const Config& c, std::ostream& out) {
  const auto x = load_grid_function(need(c.input, "--input"));
  const auto seq = parse_young_argument(c.young);
  emit(to_json(five_suprema(x, seq, search_options(c))), c, out);
  return Ok;
}

int cmd_equinorm(const Config& c, std::ostream& out) {
  const auto members = members_from(read_json_file(need(c.input, "--input")));
  const auto seq = parse_young_argument(c.young);
  if (c.eps.empty()) throw Error(ErrorKind::Parse, "missing --eps");
  const std::size_t points = members.empty() ? 0 : members[0].points();
  const std::size_t budget = c.budget > 0 ? c.budget : points * (points - 1) / 2;
  const auto report = compactness_report(members, seq, c.eps, c.pairwise, budget, SearchOptions{});
  emit(to_json(report), c, out);
  return report.verdict == CompactnessVerdict::CertifiedEquinormed ? Ok : CertificateFail;
}

int cmd_lp_check(const Config& c, std::ostream& out) {
  const json j = read_json_file(need(c.input, "--input"));
  const json& arr = j.is_array() ? j : j.at("members");
  std::vector<TruncatedSequence> set;
  for (const auto& m : arr) set.push_back(truncated_sequence_from_json(m));
  if (c.eps.size() != 1) throw Error(ErrorKind::Parse, "lp-check takes one --eps");
  const auto r = lp_compactness_check(set, c.eps[0]);
  emit(to_json(r), c, out);
  return r.success ? Ok : CertificateFail;
}

int cmd_h2(const Config& c, std::ostream& out) {
  const auto k = kernel_from_json(read_json_file(need(c.kernel, "--kernel")));
  const auto seq = parse_young_argument(c.young);
  const auto opts = search_options(c);
  const auto cert = h2_certificate(k, seq, opts);
  json j = to_json(cert);
  if (cert.mu) j["continuity"] = to_json(continuity_bound(k, seq, *cert.mu, opts));
  emit(j, c, out);
  return cert.mu ? Ok : CertificateFail;
}

int cmd_h3(const Config& c, std::ostream& out) {
  const auto k = kernel_from_json(read_json_file(need(c.kernel, "--kernel")));
  const auto seq = parse_young_argument(c.young);
  const auto m = h3_modulus(k, seq, c.eps.empty() ? std::vector<double>{1.0} : c.eps, search_options(c));
  emit(to_json(m), c, out);
  return m.ok() ? Ok : CertificateFail;
}

int cmd_probe(const Config& c, std::ostream& out) {
  const auto k = kernel_from_json(read_json_file(need(c.kernel, "--kernel")));
  const auto seq = parse_young_argument(c.young);
  std::vector<Battery> batteries;
  if (c.battery == "all") batteries = {Battery::Spikes, Battery::ShrinkingPlateaus, Battery::Sawtooth};
  else if (c.battery == "spikes") batteries = {Battery::Spikes};
  else if (c.battery == "shrinking_plateaus") batteries = {Battery::ShrinkingPlateaus};
  else if (c.battery == "sawtooth") batteries = {Battery::Sawtooth};
  else throw Error(ErrorKind::Parse, "unknown battery '" + c.battery + "'");
  json reports = json::array();
  bool all = true;
  for (Battery b : batteries) {
    const auto r = compactness_probe(k, seq, b, c.v_max, c.threshold, search_options(c));
    all = all && r.decay_consistent;
    reports.push_back(to_json(r));
  }
  emit(json{{"probes", reports}, {"decay_consistent", all}}, c, out);
  return all ? Ok : CertificateFail;
}

int cmd_reproduce(const Config& c, std::ostream& out) {
  const auto rows = reproduce_rows(c.seed);
  bool all = true;
  for (const auto& r : rows) all = all && r.pass;
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"name", r.name}, {"expected", r.expected}, {"observed", r.observed}, {"pass", r.pass}});
    }
    out << json{{"rows", arr}, {"seed", c.seed}, {"pass", all}}.dump(2) << '\n';
  } else {
    std::size_t w = 4;
    for (const auto& r : rows) w = std::max(w, r.name.size());
    for (const auto& r : rows) {
      out << std::left << std::setw(static_cast<int>(w) + 2) << r.name << (r.pass ? "PASS" : "FAIL")
          << "  expected " << r.expected << ", observed " << r.observed << '\n';
    }
  }
  return all ? Ok : CertificateFail;
}

ReproduceRow row(std::string name, std::string expected, std::string observed, bool pass) {
  return {std::move(name), std::move(expected), std::move(observed), pass};
}

}  // namespace

std::vector<ReproduceRow> reproduce_rows(unsigned seed) {
  std::vector<ReproduceRow> rows;

  const auto helly = helly_counterexample_sequence();
  const auto hx = make_grid_function({0.0, 0.5, 1.0}, {0.75, 0.0, 0.5});
  const double hv = schramm_variation(hx, helly).value;
  const double hb = brute_force_variation(hx, helly);
  rows.push_back(row("var_Φ = 17/16", "1.0625", show(hv) + " (brute force " + show(hb) + ")",
                     hv == 1.0625 && hb == 1.0625));
  const double d[] = {0.75, 0.5};
  const double sorted = sorted_assignment_value(helly, d).value;
  const double best = optimal_assignment_value(helly, d).value;
  rows.push_back(row("sorted assignment = 1 < 17/16", "1 and 1.0625", show(sorted) + " and " + show(best),
                     sorted == 1.0 && best == 1.0625));

  const auto five_seq = waterman_sequence({10.0, 1.0});
  const auto fx = make_grid_function({0.0, 0.5, 0.75, 1.0}, {0.0, 1.5, 1.75, 3.0});
  const auto f = five_suprema(fx, five_seq);
  rows.push_back(row("β=γ=δ=30", "30", show(f.beta_grid) + ", " + show(f.gamma_grid) + ", " + show(f.delta_grid),
                     f.beta_grid == 30.0 && f.gamma_grid == 30.0 && f.delta_grid == 30.0));
  IntervalSelection dyadic{{{0, 1}, {1, 2}}, {}};
  const double dv = selection_value(fx, five_seq, dyadic, 2.0);
  rows.push_back(row("α* ≥ 61/2", ">= 30.5 (dyadic witness 30.5)", show(f.alpha_star_grid) + " (witness " + show(dv) + ")",
                     dv == 30.5 && f.alpha_star_grid >= 30.5));
  rows.push_back(row("α ≤ 23 (grid value 17.5)", "17.5", show(f.alpha_grid), f.alpha_grid == 17.5));
  const auto step = make_grid_function({0.0, 1.0}, {0.0, 3.0});
  const double sv = schramm_variation(step, five_seq).value;
  rows.push_back(row("φ_1(|x(1)−x(0)|) = 30", "30", show(sv), sv == 30.0));

  std::vector<TruncatedSequence> geo;
  for (int i = 0; i <= 9; ++i) geo.push_back(geometric_sequence(0.1 * i, 200));
  const auto g = lp_compactness_check(geo, 0.01);
  rows.push_back(row("l^1 geometric witness n = 66", "66", g.success ? std::to_string(g.witness) : "FAIL",
                     g.success && g.witness == 66));
  const auto u = lp_compactness_check(unit_vector_family(64), 0.999);
  rows.push_back(row("unit vectors fail the tail test", "FAIL", u.success ? std::to_string(u.witness) : "FAIL",
                     !u.success && u.worst_tail == 1.0));
  for (const auto& s : counterexample_suite(64)) {
    rows.push_back(row(s.name + ": " + s.quantity, show(s.expected), show(s.observed), s.pass));
  }

  std::mt19937_64 rng(seed);
  std::size_t mismatches = 0;
  const auto wiener = wiener_sequence(2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t cells = 2 + rng() % 6;
    std::vector<double> v(cells + 1);
    for (double& e : v) e = std::round((uniform(rng) * 4.0 - 2.0) * 64.0) / 64.0;
    const auto x = make_grid_function(uniform_grid(cells), v);
    for (const YoungSequence* s : {&wiener, &helly}) {
      const double a = schramm_variation(x, *s).value;
      const double b = brute_force_variation(x, *s);
      if (std::abs(a - b) > 1e-12 * std::max(1.0, b)) ++mismatches;
    }
  }
  rows.push_back(row("search = brute force (seeded, 40 cases)", "0 mismatches", std::to_string(mismatches) + " mismatches",
                     mismatches == 0));
  std::size_t violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double a = uniform(rng) * 10.0, b = uniform(rng) * 10.0, p = 1.0 + uniform(rng) * 5.0;
    if (!power_mean_inequality_check(a, b, p)) ++violations;
  }
  rows.push_back(row("(a+b)^p ≤ a^p + pb(a+b)^(p−1) (seeded, 10^4 triples)", "0 violations",
                     std::to_string(violations) + " violations", violations == 0));
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schramm variation, Luxemburg seminorms and compactness certificates on grids", "phibv"};
  app.require_subcommand(1);
  Config c;

  auto add_young = [&](CLI::App* s) { s->add_option("--young", c.young, "jordan | wiener:P | waterman:l1,l2,... | helly | JSON | @file"); };
  auto add_format = [&](CLI::App* s) { s->add_option("--format", c.format, "json | table")->check(CLI::IsMember({"json", "table"})); };
  auto add_mode = [&](CLI::App* s) {
    s->add_option("--mode", c.mode, "exact | heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
    s->add_option("--budget", c.budget, "node budget of the exact search")->check(CLI::PositiveNumber);
  };

  auto* variation = app.add_subcommand("variation", "V_J(x), all grid intervals unless --family is given");
  auto* norm = app.add_subcommand("norm", "Luxemburg seminorm and norm");
  auto* five = app.add_subcommand("five", "the five suprema on the grid");
  auto* oracle = app.add_subcommand("oracle", "brute-force variation");
  for (auto* s : {variation, norm, five, oracle}) {
    add_young(s);
    add_format(s);
    s->add_option("--input", c.input, "grid function (.json or .csv)");
  }
  for (auto* s : {variation, norm, five}) add_mode(s);
  for (auto* s : {variation, norm}) s->add_option("--family", c.family, "JSON array of [a, b] index pairs");

  auto* equinorm = app.add_subcommand("equinorm", "equinormed witness search");
  add_young(equinorm);
  add_format(equinorm);
  equinorm->add_option("--input", c.input, "JSON {\"members\": [grid functions]}");
  equinorm->add_option("--eps", c.eps, "target defects")->check(CLI::NonNegativeNumber);
  equinorm->add_option("--budget", c.budget, "maximum family size")->check(CLI::PositiveNumber);
  equinorm->add_flag("--pairwise", c.pairwise, "use differences of members");

  auto* lp = app.add_subcommand("lp-check", "l^p tail criterion");
  add_format(lp);
  lp->add_option("--input", c.input, "JSON {\"members\": [truncated sequences]}");
  lp->add_option("--eps", c.eps, "tail tolerance")->check(CLI::PositiveNumber);

  auto* h2 = app.add_subcommand("operator-h2", "continuity certificate of an integral operator");
  auto* h3 = app.add_subcommand("operator-h3", "compactness modulus of an integral operator");
  auto* probe = app.add_subcommand("probe", "norms of K x_v along test batteries");
  for (auto* s : {h2, h3, probe}) {
    add_young(s);
    add_format(s);
    add_mode(s);
    s->add_option("--kernel", c.kernel, "kernel JSON");
  }
  h3->add_option("--eps", c.eps, "epsilons")->check(CLI::PositiveNumber);
  probe->add_option("--battery", c.battery, "spikes | shrinking_plateaus | sawtooth | all");
  probe->add_option("--vmax", c.v_max, "largest battery index")->check(CLI::PositiveNumber);
  probe->add_option("--threshold", c.threshold, "final-norm threshold");

  auto* reproduce = app.add_subcommand("reproduce", "regression table of the worked values");
  reproduce->add_option("--format", c.format, "json | table")->check(CLI::IsMember({"json", "table"}));
  reproduce->add_option("--seed", c.seed, "seed of the fuzz rows");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : Malformed;
  }

  try {
    if (*variation) return cmd_variation(c, out);
    if (*norm) return cmd_norm(c, out);
    if (*five) return cmd_five(c, out);
    if (*oracle) return cmd_oracle(c, out);
    if (*equinorm) return cmd_equinorm(c, out);
    if (*lp) return cmd_lp_check(c, out);
    if (*h2) return cmd_h2(c, out);
    if (*h3) return cmd_h3(c, out);
    if (*probe) return cmd_probe(c, out);
    if (*reproduce) {
      if (reproduce->count("--format") == 0) c.format = "table";
      return cmd_reproduce(c, out);
    }
  } catch (const phibv::Error& e) {
    err << "error: " << e.what() << '\n';
    return Malformed;
  } catch (const json::exception& e) {
    err << "error: Parse: " << e.what() << '\n';
    return Malformed;
  }
  return Malformed;
}

}  // namespace phibv::cli
