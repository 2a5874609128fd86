#include "phibv/json_io.hpp"

#include <fstream>
#include <sstream>

#include "phibv/error.hpp"

namespace phibv {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number(e, what));
  return out;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  return guarded([&] { return json::parse(in); });
}

YoungFunction young_function_from_json(const json& j) {
  if (!j.is_object()) bad("Young function must be an object");
  if (j.contains("power")) {
    const double coef = j.contains("coef") ? number(j["coef"], "coef") : 1.0;
    return YoungFunction(PowerLaw{coef, number(j["power"], "power")});
  }
  if (j.contains("pieces")) {
    PiecewisePower pw;
    if (!j["pieces"].is_array()) bad("pieces must be an array");
    for (const auto& p : j["pieces"]) {
      Piece piece;
      piece.from = number(field(p, "from"), "from");
      piece.coef = p.contains("coef") ? number(p["coef"], "coef") : 1.0;
      piece.exponent = p.contains("power") ? number(p["power"], "power") : 1.0;
      piece.offset = p.contains("offset") ? number(p["offset"], "offset") : 0.0;
      pw.pieces.push_back(piece);
    }
    return YoungFunction(std::move(pw));
  }
  if (j.contains("table")) {
    KnotTable t;
    if (!j["table"].is_array()) bad("table must be an array");
    for (const auto& k : j["table"]) {
      if (!k.is_array() || k.size() != 2) bad("table entries must be [t, y] pairs");
      t.knots.emplace_back(number(k[0], "table t"), number(k[1], "table y"));
    }
    return YoungFunction(std::move(t));
  }
  bad("Young function needs 'power', 'pieces' or 'table'");
}

json to_json(const YoungFunction& phi) {
  return std::visit(Overloaded{
                        [](const PowerLaw& p) { return json{{"power", p.exponent}, {"coef", p.coef}}; },
                        [](const PiecewisePower& pw) {
                          json arr = json::array();
                          for (const auto& p : pw.pieces) {
                            arr.push_back({{"from", p.from}, {"coef", p.coef}, {"power", p.exponent}, {"offset", p.offset}});
                          }
                          return json{{"pieces", arr}};
                        },
                        [](const KnotTable& t) {
                          json arr = json::array();
                          for (const auto& [x, y] : t.knots) arr.push_back({x, y});
                          return json{{"table", arr}};
                        },
                    },
                    phi.form());
}

YoungSequence young_sequence_from_json(const json& j) {
  const json& k = field(j, "kind");
  if (!k.is_string()) bad("kind must be a string");
  const std::string kind = k.get<std::string>();
  if (kind == "jordan") return jordan_sequence();
  if (kind == "wiener") return wiener_sequence(number(field(j, "p"), "p"));
  if (kind == "waterman") return waterman_sequence(numbers(field(j, "lambda"), "lambda"));
  if (kind == "young") return young_sequence(young_function_from_json(field(j, "function")));
  if (kind == "custom") {
    const json& fs = field(j, "functions");
    if (!fs.is_array()) bad("functions must be an array");
    std::vector<YoungFunction> phis;
    for (const auto& f : fs) phis.push_back(young_function_from_json(f));
    return custom_sequence(std::move(phis));
  }
  bad("unknown Young sequence kind '" + kind + "'");
}

json to_json(const YoungSequence& seq) {
  const auto& s = seq.spec();
  json j{{"kind", to_string(s.kind)}};
  switch (s.kind) {
    case YoungKind::Jordan: break;
    case YoungKind::Wiener: j["p"] = s.p; break;
    case YoungKind::Waterman: j["lambda"] = s.lambdas; break;
    case YoungKind::Young: j["function"] = to_json(s.functions.at(0)); break;
    case YoungKind::Custom: {
      json arr = json::array();
      for (const auto& f : s.functions) arr.push_back(to_json(f));
      j["functions"] = arr;
      break;
    }
  }
  return j;
}

YoungSequence parse_young_argument(const std::string& text) {
  if (text.empty()) bad("empty Young specification");
  if (text == "jordan") return jordan_sequence();
  if (text == "helly") return helly_counterexample_sequence();
  if (text[0] == '@') return young_sequence_from_json(read_json_file(text.substr(1)));
  if (text[0] == '{') return young_sequence_from_json(guarded([&] { return json::parse(text); }));
  const auto colon = text.find(':');
  if (colon == std::string::npos) bad("unrecognised Young specification '" + text + "'");
  const std::string head = text.substr(0, colon);
  std::vector<double> args;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      bad("bad number '" + item + "'");
    }
    if (used != item.size()) bad("bad number '" + item + "'");
    args.push_back(v);
  }
  if (head == "wiener" && args.size() == 1) return wiener_sequence(args[0]);
  if (head == "waterman" && !args.empty()) return waterman_sequence(args);
  bad("unrecognised Young specification '" + text + "'");
}

GridFunction grid_function_from_json(const json& j) {
  return make_grid_function(numbers(field(j, "grid"), "grid"), numbers(field(j, "values"), "values"));
}

json to_json(const GridFunction& x) { return json{{"grid", x.grid()}, {"values", x.values()}}; }

GridFunction grid_function_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    }
    std::stringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        bad("bad CSV number '" + tok + "'");
      }
      if (used != tok.size()) bad("bad CSV number '" + tok + "'");
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.size() != 2) bad("CSV needs exactly a grid row and a values row");
  return make_grid_function(std::move(rows[0]), std::move(rows[1]));
}

GridFunction load_grid_function(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return grid_function_from_csv(ss.str());
  }
  return grid_function_from_json(read_json_file(path));
}

Kernel kernel_from_json(const json& j) {
  const json& v = field(j, "values");
  if (!v.is_array()) bad("values must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : v) rows.push_back(numbers(r, "kernel row"));
  return make_kernel(numbers(field(j, "grid_t"), "grid_t"), numbers(field(j, "grid_s"), "grid_s"), rows);
}

json to_json(const Kernel& k) {
  json rows = json::array();
  for (std::size_t i = 0; i < k.rows(); ++i) {
    std::vector<double> r(k.cols());
    for (std::size_t j = 0; j < k.cols(); ++j) r[j] = k(i, j);
    rows.push_back(r);
  }
  return json{{"grid_t", k.grid_t()}, {"grid_s", k.grid_s()}, {"values", rows}};
}

TruncatedSequence truncated_sequence_from_json(const json& j) {
  TruncatedSequence x;
  x.p = j.contains("p") ? number(j["p"], "p") : 1.0;
  x.head = numbers(field(j, "head"), "head");
  x.tail_bound = j.contains("tail_bound") ? number(j["tail_bound"], "tail_bound") : 0.0;
  check_sequence(x);
  return x;
}

json to_json(const TruncatedSequence& x) { return json{{"p", x.p}, {"head", x.head}, {"tail_bound", x.tail_bound}}; }

IntervalFamily interval_family_from_json(const json& j) {
  if (!j.is_array()) bad("interval family must be an array of [a, b] index pairs");
  std::vector<GridInterval> ivs;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned()) {
      bad("interval must be a pair of non-negative indices");
    }
    ivs.push_back({p[0].get<std::size_t>(), p[1].get<std::size_t>()});
  }
  try {
    return IntervalFamily(std::move(ivs));
  } catch (const Error& e) {
    bad(e.what());
  }
}

json to_json(const IntervalFamily& family) {
  json arr = json::array();
  for (const auto& iv : family) arr.push_back({iv.a, iv.b});
  return arr;
}

json to_json(const IntervalSelection& sel) {
  json ivs = json::array();
  for (const auto& iv : sel.intervals) ivs.push_back({iv.a, iv.b});
  std::vector<int> assignment;
  for (std::size_t i = 0; i < sel.size(); ++i) assignment.push_back(sel.phi_index(i));
  return json{{"intervals", ivs}, {"assignment", assignment}};
}

json to_json(const VariationResult& r) {
  return json{{"value", r.value},
              {"witness", to_json(r.witness)},
              {"mode", to_string(r.mode)},
              {"nodes_explored", r.nodes_explored}};
}

json to_json(const SeminormValue& v) {
  return json{{"value", v.value}, {"bracket", {v.lambda_lo, v.lambda_hi}}, {"evaluations", v.evaluations}};
}

json to_json(const FiveSuprema& f) {
  return json{{"alpha_grid", f.alpha_grid},
              {"alpha_star_grid", f.alpha_star_grid},
              {"beta_grid", f.beta_grid},
              {"gamma_grid", f.gamma_grid},
              {"delta_grid", f.delta_grid},
              {"alpha_witness", to_json(f.alpha_witness)},
              {"alpha_star_witness", to_json(f.alpha_star_witness)},
              {"delta_witness", to_json(f.delta_witness)}};
}

json to_json(const DefectReport& r) {
  json j{{"defect", r.defect}, {"family", to_json(r.family)}};
  if (r.argmax_second) j["argmax"] = {r.argmax, *r.argmax_second};
  else j["argmax"] = r.argmax;
  return j;
}

json to_json(const CompactnessRow& r) {
  json j{{"epsilon", r.epsilon}, {"defect", r.defect}, {"cardinality", r.cardinality}};
  j["family"] = r.success ? to_json(r.family) : json("FAIL");
  j["success"] = r.success;
  return j;
}

json to_json(const CompactnessReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  return json{{"rows", rows}, {"verdict", to_string(r.verdict)}};
}

json to_json(const LpCompactnessResult& r) {
  json j{{"success", r.success}, {"worst_tail", r.worst_tail}};
  j["witness"] = r.success ? json(r.witness) : json("FAIL");
  return j;
}

json to_json(const H2Certificate& c) {
  json j{{"sup_variation_at_mu", c.sup_variation_at_mu},
         {"xi_argmax", c.xi_argmax},
         {"at_cap", c.at_cap},
         {"evaluations", c.evaluations}};
  j["mu"] = c.mu ? json(*c.mu) : json("NONE");
  return j;
}

json to_json(const H3Modulus& m) {
  json rows = json::array();
  for (const auto& r : m.rows) {
    json row{{"epsilon", r.epsilon}, {"verdict", r.ok ? "ok" : "fail"}, {"delta", r.delta},
             {"worst_variation", r.worst_variation}};
    if (r.failing_interval) row["failing_interval"] = {r.failing_interval->first, r.failing_interval->second};
    rows.push_back(row);
  }
  return json{{"rows", rows}, {"ok", m.ok()}};
}

json to_json(const H3ImpliesH2& r) {
  json j{{"delta", r.delta}, {"n", r.n}, {"mu", r.mu}, {"verified", r.verified}, {"sup_variation", r.sup_variation}};
  j["certificate_mu"] = r.certificate_mu ? json(*r.certificate_mu) : json("NONE");
  j["match"] = r.certificate_mu && std::abs(*r.certificate_mu - r.mu) <= 1e-9 * std::max(1.0, r.mu);
  return j;
}

json to_json(const ContinuityReport& r) {
  return json{{"row_integral", r.row_integral},
              {"bound", r.bound},
              {"max_ratio", r.max_ratio},
              {"max_ratio_member", r.max_ratio_member},
              {"ok", r.ok}};
}

json to_json(const ProbeReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back({{"v", row.v}, {"bv_norm", row.bv}, {"norm", row.norm}});
  return json{{"battery", to_string(r.battery)},
              {"rows", rows},
              {"monotone", r.monotone},
              {"final_norm", r.final_norm},
              {"threshold", r.threshold},
              {"verdict", r.decay_consistent ? "decay-consistent" : "not-decay-consistent"}};
}

json to_json(const AxiomReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"axiom", row.axiom}, {"sample", row.sample}, {"first", row.first}, {"second", row.second},
                    {"lhs", row.lhs}, {"rhs", row.rhs}, {"pass", row.pass}});
  }
  return json{{"rows", rows}, {"A1", r.a1}, {"A2", r.a2}};
}

json to_json(const SuiteRow& r) {
  return json{{"name", r.name}, {"quantity", r.quantity}, {"expected", r.expected},
              {"observed", r.observed}, {"checks", r.checks}, {"pass", r.pass}};
}

}  // namespace phibv
