#include "otcalc/pipeline.hpp"

#include "json.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace otcalc {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kModule = "cli";

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, kModule, "parse_config", msg); }

Integer parse_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.dump());
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    Integer v;
    const std::string digits = !text.empty() && text[0] == '+' ? text.substr(1) : text;
    if (digits.empty() || v.set_str(digits, 10) != 0) config_error(where + ": '" + text + "' is not an integer");
    return v;
  }
  config_error(where + ": expected an integer (number or string)");
}

Rational parse_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    Rational v;
    if (text.empty() || v.set_str(text, 10) != 0 || v.get_den() == 0)
      config_error(where + ": '" + text + "' is not a rational");
    v.canonicalize();
    return v;
  }
  config_error(where + ": expected a rational (integer or \"p/q\" string)");
}

unsigned parse_bits(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() || j.get<unsigned long>() < 1 || j.get<unsigned long>() > (1u << 20))
    config_error(where + ": expected a positive integer");
  return j.get<unsigned>();
}

Table square_table(std::initializer_list<std::initializer_list<std::size_t>> rows) {
  Table t;
  for (const auto& r : rows) t.emplace_back(r);
  return t;
}

std::vector<Preset> make_presets() {
  std::vector<Preset> out;
  {
    Preset p;
    p.name = "inoue-cubic";
    p.description = "Inoue surface of type S0";
    p.coefficients = {-1, -1, 0, 1};
    p.units = {{0, 1, 0}};
    p.s = 1;
    p.t = 1;
    p.expected_betti = {1, 1, 0, 1, 1};
    p.expected_hodge = square_table({{1, 1, 0}, {0, 0, 0}, {0, 1, 1}});
    p.expected_bc = square_table({{1, 0, 0}, {0, 1, 1}, {0, 1, 1}});
    p.expected_at_deficiency = {0, 0, 2, 0, 0};
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "quartic-s2";
    p.description = "type (2,1), U generated by theta^2 and 1 + theta^2";
    p.coefficients = {-1, -1, 0, 0, 1};
    p.units = {{0, 0, 1, 0}, {1, 0, 1, 0}};
    p.s = 2;
    p.t = 1;
    p.expected_betti = {1, 2, 1, 0, 1, 2, 1};
    p.expected_hodge = square_table({{1, 2, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 1, 2, 1}});
    p.expected_bc = square_table({{1, 0, 0, 0}, {0, 2, 0, 1}, {0, 0, 0, 2}, {0, 1, 2, 1}});
    p.expected_at_deficiency = {0, 0, 2, 0, 2, 0, 0};
    out.push_back(std::move(p));
  }
  return out;
}

RunConfig resolved(const RunConfig& config) {
  if (!config.preset) return config;
  RunConfig out = config;
  const Preset& p = find_preset(*config.preset);
  out.field.assign(p.coefficients.begin(), p.coefficients.end());
  out.units.clear();
  for (const auto& u : p.units) out.units.emplace_back(u.begin(), u.end());
  return out;
}

json table_json(const Table& t) {
  json out = json::array();
  for (const auto& row : t) out.push_back(row);
  return out;
}

std::vector<int> failure_degrees(const std::vector<long>& delta) {
  std::vector<int> out;
  for (std::size_t k = 0; k < delta.size(); ++k)
    if (delta[k] != 0) out.push_back(static_cast<int>(k));
  return out;
}

// Columns p, rows q, top degree last.
void print_grid(std::ostream& os, const std::string& title, const Table& t) {
  os << title << " (columns p, rows q)\n";
  os << "     ";
  for (std::size_t p = 0; p < t.size(); ++p) os << std::setw(5) << ("p=" + std::to_string(p));
  os << "\n";
  for (std::size_t q = 0; q < t.size(); ++q) {
    os << std::setw(5) << ("q=" + std::to_string(q));
    for (std::size_t p = 0; p < t.size(); ++p) os << std::setw(5) << t[p][q];
    os << "\n";
  }
}

template <class V>
std::string joined(const V& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) config_error("config must be a JSON object");
  static const std::set<std::string> known = {"preset", "field", "units", "integral_basis", "precision_bits",
                                              "precision_cap", "rank_threshold_log2", "compute", "output"};
  for (const auto& [key, value] : root.items())
    if (!known.contains(key)) config_error("unknown key '" + key + "'");

  RunConfig config;
  if (root.contains("preset")) {
    if (!root["preset"].is_string()) config_error("preset must be a string");
    if (root.contains("field") || root.contains("units") || root.contains("integral_basis"))
      config_error("preset and explicit field/units are mutually exclusive");
    config.preset = root["preset"].get<std::string>();
    find_preset(*config.preset);
  } else {
    if (!root.contains("field")) config_error("missing 'field'");
    const json& field = root["field"];
    if (!field.is_object() || !field.contains("polynomial") || !field["polynomial"].is_array())
      config_error("'field.polynomial' must be an array of ascending integer coefficients");
    for (const auto& c : field["polynomial"]) config.field.push_back(parse_integer(c, "field.polynomial"));
    if (!root.contains("units")) config_error("missing 'units'");
    if (!root["units"].is_array() || root["units"].empty()) config_error("'units' must be a nonempty array");
    for (const auto& u : root["units"]) {
      if (!u.is_array()) config_error("each unit must be an array of integer coordinates");
      std::vector<Integer> coords;
      for (const auto& c : u) coords.push_back(parse_integer(c, "units"));
      config.units.push_back(std::move(coords));
    }
    if (root.contains("integral_basis")) {
      const json& b = root["integral_basis"];
      if (!b.is_array()) config_error("'integral_basis' must be a matrix");
      RationalMatrix m;
      for (const auto& row : b) {
        if (!row.is_array()) config_error("'integral_basis' rows must be arrays");
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(parse_rational(v, "integral_basis"));
        m.push_back(std::move(r));
      }
      config.integral_basis = std::move(m);
    }
  }
  if (root.contains("precision_bits")) config.precision_bits = parse_bits(root["precision_bits"], "precision_bits");
  if (root.contains("precision_cap")) config.precision_cap = parse_bits(root["precision_cap"], "precision_cap");
  if (root.contains("rank_threshold_log2")) {
    const json& r = root["rank_threshold_log2"];
    if (!r.is_number_integer() || r.get<int>() >= -20 || r.get<int>() < -60)
      config_error("rank_threshold_log2 must be an integer in [-60, -21]");
    config.rank_threshold_log2 = r.get<int>();
  }
  if (root.contains("compute")) {
    static const std::set<std::string> items = {"betti", "hodge", "bottchern", "checks"};
    if (!root["compute"].is_array()) config_error("'compute' must be an array");
    config.compute.clear();
    for (const auto& c : root["compute"]) {
      if (!c.is_string() || !items.contains(c.get<std::string>()))
        config_error("'compute' entries must be betti, hodge, bottchern or checks");
      config.compute.insert(c.get<std::string>());
    }
  }
  if (root.contains("output")) {
    const json& o = root["output"];
    if (o == "table") config.format = OutputFormat::table;
    else if (o == "json") config.format = OutputFormat::json;
    else config_error("'output' must be \"table\" or \"json\"");
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

// ---------------------------------------------------------------------------
// Presets

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = make_presets();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  std::string names;
  for (const auto& p : presets()) names += (names.empty() ? "" : ", ") + p.name;
  throw Error(ErrorKind::UnknownPreset, kModule, "find_preset",
              "unknown preset '" + name + "'; available presets: " + names);
}

RunConfig preset_config(const std::string& name) {
  find_preset(name);
  RunConfig config;
  config.preset = name;
  return config;
}

std::string list_presets(OutputFormat format) {
  if (format == OutputFormat::json) {
    json out = json::array();
    for (const auto& p : presets()) {
      json units = json::array();
      for (const auto& u : p.units) units.push_back(u);
      out.push_back({{"name", p.name},
                     {"polynomial", Polynomial::from_integers(std::vector<Integer>(p.coefficients.begin(), p.coefficients.end())).to_string()},
                     {"coefficients", p.coefficients},
                     {"s", p.s},
                     {"t", p.t},
                     {"units", units},
                     {"description", p.description}});
    }
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& p : presets()) {
    const std::vector<Integer> c(p.coefficients.begin(), p.coefficients.end());
    os << std::left << std::setw(14) << p.name << std::setw(24) << Polynomial::from_integers(c).to_string()
       << "(s,t)=(" << p.s << "," << p.t << ")  " << p.description << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Runs

OTStructure prepare(const RunConfig& raw) {
  const RunConfig config = resolved(raw);
  if (config.field.empty()) config_error("no field polynomial given");
  if (config.units.empty()) config_error("no units given");
  FieldSpec field = parse_field(config.field);
  if (config.integral_basis) set_integral_basis(field, *config.integral_basis);
  EmbeddingSet emb = compute_embeddings(field, config.precision_bits, config.precision_cap);
  emb.require_ot_signature();

  std::vector<AlgebraicNumber> units;
  const auto n = static_cast<std::size_t>(field.degree());
  for (const auto& coords : config.units) {
    if (coords.size() != n)
      config_error("unit has " + std::to_string(coords.size()) + " coordinates, field degree is " + std::to_string(n));
    std::vector<Rational> power(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!field.integral_basis) {
        power[i] = coords[i];
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) power[j] += Rational(coords[i]) * (*field.integral_basis)[i][j];
    }
    units.push_back(make_number(field, power));
  }
  return build_ot_structure(field, emb, units);
}

ComputeResult run_compute(const RunConfig& config) {
  OTStructure ot = prepare(config);
  AdmissibleSet characters = decide_characters(ot);
  ReportOptions options;
  options.bott_chern = config.compute.contains("bottchern") || config.compute.contains("checks");
  options.rank_options.zero_log2 = config.rank_threshold_log2;
  CohomologyReport report = build_report(ot, characters, options);
  return {std::move(ot), std::move(characters), std::move(report)};
}

std::string render_report(const ComputeResult& result, const RunConfig& config) {
  const auto& r = result.report;
  const auto& ot = result.ot;
  const bool want_betti = config.compute.contains("betti");
  const bool want_hodge = config.compute.contains("hodge");
  const bool want_bc = config.compute.contains("bottchern") && r.bc;
  const bool want_checks = config.compute.contains("checks");

  std::vector<std::string> units;
  for (const auto& u : ot.units) units.push_back(u.to_string());
  std::vector<std::string> admissible;
  for (const auto& tr : result.characters.admissible) admissible.push_back(tr.to_string(ot.s, ot.t));

  std::optional<bool> closed_match;
  if (r.bc && r.bc_closed_form) closed_match = r.bc->dims == *r.bc_closed_form;

  if (config.format == OutputFormat::json) {
    json out;
    out["s"] = r.s;
    out["t"] = r.t;
    out["polynomial"] = ot.field.to_string();
    out["units"] = units;
    out["precision_bits"] = ot.emb.precision_bits;
    out["admissible_triples"] = admissible;
    if (want_betti) out["betti"] = r.betti;
    if (want_hodge) out["hodge"] = table_json(r.hodge);
    if (want_bc) {
      out["bott_chern"] = table_json(r.bc->dims);
      out["bott_chern_experimental"] = r.bc->experimental;
      if (r.bc_closed_form) out["bott_chern_closed_form"] = table_json(*r.bc_closed_form);
    }
    if (want_checks) {
      json checks;
      checks["frolicher"] = r.frolicher.ok;
      checks["hodge_sums"] = r.frolicher.hodge_sums;
      checks["star_closure"] = r.star_closure;
      checks["formality"] = r.formality;
      checks["hodge_star_duality"] = hodge_star_duality(r.hodge);
      checks["poincare_duality"] = poincare_duality(r.betti);
      checks["hodge_symmetry_violation"] = {{"h01", r.hodge_symmetry.h01},
                                            {"h10", r.hodge_symmetry.h10},
                                            {"violated", r.hodge_symmetry.violated()}};
      if (r.bc) {
        checks["at_deficiency"] = r.at_deficiency;
        checks["at_failure_degrees"] = failure_degrees(r.at_deficiency);
      }
      if (closed_match) {
        checks["bc_closed_form_match"] = *closed_match;
        checks["bc_representatives_harmonic"] = r.bc->representatives_harmonic;
      }
      out["checks"] = checks;
    }
    return out.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "field       " << ot.field.to_string() << "\n";
  os << "signature   s=" << r.s << " t=" << r.t << "\n";
  os << "units       " << joined(units) << "\n";
  os << "admissible  " << joined(admissible) << "\n";
  if (want_betti) {
    os << "\nBetti numbers\n  k  ";
    for (std::size_t k = 0; k < r.betti.size(); ++k) os << std::setw(4) << k;
    os << "\n  b_k";
    for (auto b : r.betti) os << std::setw(4) << b;
    os << "\n";
  }
  if (want_hodge) {
    os << "\n";
    print_grid(os, "Hodge numbers h^{p,q}", r.hodge);
  }
  if (want_bc) {
    os << "\n";
    print_grid(os, r.bc->experimental ? "Bott-Chern numbers (Lie-algebra level, experimental)" : "Bott-Chern numbers",
               r.bc->dims);
    if (r.bc_closed_form && !*closed_match) {
      os << "\n";
      print_grid(os, "Bott-Chern closed form for type (s,1) (differs from the computation)", *r.bc_closed_form);
    }
  }
  if (want_checks) {
    auto flag = [](bool b) { return b ? "pass" : "FAIL"; };
    os << "\nchecks\n";
    os << "  frolicher             " << flag(r.frolicher.ok) << "\n";
    os << "  star_closure          " << flag(r.star_closure) << "\n";
    os << "  formality             " << flag(r.formality) << "\n";
    os << "  hodge_star_duality    " << flag(hodge_star_duality(r.hodge)) << "\n";
    os << "  poincare_duality      " << flag(poincare_duality(r.betti)) << "\n";
    os << "  hodge_symmetry        h01=" << r.hodge_symmetry.h01 << " h10=" << r.hodge_symmetry.h10
       << (r.hodge_symmetry.violated() ? " (violated)" : " (holds)") << "\n";
    if (r.bc) {
      os << "  at_deficiency         " << joined(r.at_deficiency) << "\n";
      os << "  at_failure_degrees    " << joined(failure_degrees(r.at_deficiency)) << "\n";
    }
    if (closed_match) {
      os << "  bc_closed_form_match  " << flag(*closed_match) << "\n";
      os << "  bc_representatives    " << flag(r.bc->representatives_harmonic) << "\n";
    }
  }
  return os.str();
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

VerifyReport run_verify(const RunConfig& config) {
  const OTStructure ot = prepare(config);
  const AdmissibleSet set = decide_characters(ot);
  VerifyReport out;
  out.field = ot.field.to_string();
  out.s = ot.s;
  out.t = ot.t;
  auto add = [&](std::string name, bool passed, std::string detail = {}) {
    out.checks.push_back({std::move(name), passed, std::move(detail)});
  };

  NumericRankOptions rank_options;
  rank_options.zero_log2 = config.rank_threshold_log2;
  const auto exact = exact_structure(ot);
  const auto numeric = numeric_structure(ot);
  add("d_squared_exact", d_squared_scan(exact).ok());
  add("d_squared_numeric", d_squared_scan(numeric).ok());

  add("star_closure", star_closure_check(set));
  add("complement_duality", complement_closure_check(set));
  add("formality", formality_check(set));

  const auto betti = betti_numbers(set);
  const auto hodge = hodge_numbers(set);
  const auto fr = frolicher_check(hodge, betti);
  add("frolicher", fr.ok, "sum h = " + joined(fr.hodge_sums) + ", b = " + joined(betti));
  add("hodge_star_duality", hodge_star_duality(hodge));
  add("poincare_duality", poincare_duality(betti));
  add("hodge_symmetry_violation", hodge[0][1] == static_cast<std::size_t>(ot.s) && hodge[1][0] == 0,
      "h01=" + std::to_string(hodge[0][1]) + " h10=" + std::to_string(hodge[1][0]));

  CohomologyCalculator<ExactScalar> ce(exact);
  CohomologyCalculator<NumericScalar> cn(numeric, rank_options);
  const Table dol_e = ce.dolbeault_table(), dol_n = cn.dolbeault_table();
  const Table bc_e = ce.bott_chern_table(), bc_n = cn.bott_chern_table();
  const auto dr_e = ce.derham_vector(), dr_n = cn.derham_vector();
  add("backend_agreement", dol_e == dol_n && bc_e == bc_n && dr_e == dr_n,
      "Dolbeault, de Rham and Bott-Chern, exact-generic vs numeric");
  if (ot.t == 1) {
    add("lie_algebra_matches_model", dol_e == hodge && dr_e == betti,
        "Lie-algebra Dolbeault and de Rham equal the counts from admissible triples");
    add("bc_representatives_harmonic", bc_from_lie_algebra(ot, Backend::exact).representatives_harmonic);
  }

  // Branch invariance: C re-derived from shifted arguments.
  bool branch_ok = true;
  for (int variant = 0; variant < 2; ++variant) {
    std::vector<std::vector<long>> shifts(static_cast<std::size_t>(ot.s), std::vector<long>(static_cast<std::size_t>(ot.t)));
    for (int i = 0; i < ot.s; ++i)
      for (int k = 0; k < ot.t; ++k)
        shifts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = variant == 0 ? 1 : ((i + k) % 2 ? -1 : 2);
    OTStructure shifted = ot;
    shifted.C = coefficient_matrix_c(ot, shifts);
    for (const auto& tv : set.verdicts)
      branch_ok = branch_ok && is_admissible_triple(shifted, tv.triple).status == tv.verdict.status;
    const auto ns = numeric_structure(shifted);
    CohomologyCalculator<NumericScalar> cs(ns, rank_options);
    branch_ok = branch_ok && cs.dolbeault_table() == dol_n && cs.bott_chern_table() == bc_n;
  }
  add("branch_invariance", branch_ok, "admissibility and numeric tables under 2 pi shifts of the arguments");

  bool certificates = true;
  std::size_t certified = 0;
  for (const auto& tv : set.verdicts) {
    if (!tv.verdict.certified) continue;
    ++certified;
    certificates = certificates && tv.verdict.certificate == tv.verdict.status;
  }
  add("certificate_agreement", certificates,
      std::to_string(certified) + " of " + std::to_string(set.verdicts.size()) + " triples certified exactly");

  bool matrices = true;
  for (const auto& m : ot.mult_matrices) {
    RationalMatrix q;
    for (const auto& row : m) q.emplace_back(row.begin(), row.end());
    matrices = matrices && abs(determinant(q)) == 1;
  }
  add("unit_matrices_unimodular", matrices);
  add("lattice_nondegenerate", interval_determinant(ot.X).excludes_zero());
  return out;
}

std::string render_verify(const VerifyReport& report, OutputFormat format) {
  if (format == OutputFormat::json) {
    json checks = json::array();
    for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    json out;
    out["polynomial"] = report.field;
    out["s"] = report.s;
    out["t"] = report.t;
    out["checks"] = checks;
    out["passed"] = report.all_passed();
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "verify " << report.field << " (s=" << report.s << ", t=" << report.t << ")\n";
  for (const auto& c : report.checks) {
    os << "  " << (c.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(28) << c.name;
    if (!c.detail.empty()) os << c.detail;
    os << "\n";
  }
  os << (report.all_passed() ? "all checks passed\n" : "some checks FAILED\n");
  return os.str();
}

std::string error_record(const Error& error) {
  json out;
  out["error"] = std::string(to_string(error.kind()));
  out["module"] = error.module();
  out["operation"] = error.operation();
  out["message"] = error.what();
  out["exit_code"] = exit_code(error.kind());
  return out.dump();
}

}  // namespace otcalc
