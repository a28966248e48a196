#include "fanoforge/registry.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

#include "fanoforge/errors.hpp"
#include "fanoforge/mori.hpp"
#include "fanoforge/polytope.hpp"

namespace fanoforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(p.string() + ": " + e.what());
  }
}

// An inline object, or a path relative to the data directory.
json inline_or_file(const json& v, const fs::path& data_dir) {
  if (v.is_string()) return read_json(data_dir / v.get<std::string>());
  if (v.is_object()) return v;
  throw InputError("expected an object or a path");
}

RationalVector int_vector(const json& v) {
  try {
    return to_rational(v.get<std::vector<std::int64_t>>());
  } catch (const json::exception&) {
    throw InputError("expected an integer vector, got " + v.dump());
  }
}

const json& need(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(where + ": missing '" + key + "'");
  return doc.at(key);
}

Fan base_fan(const json& base, const fs::path& data_dir) {
  if (base.contains("projective")) return projective_space_fan(base["projective"].get<size_t>());
  if (base.contains("product")) {
    auto dims = base["product"].get<std::vector<size_t>>();
    if (dims.size() != 2) throw InputError("fan base: 'product' takes two dimensions");
    return product_fan(projective_space_fan(dims[0]), projective_space_fan(dims[1]));
  }
  if (base.contains("file")) return fan_from_json(read_json(data_dir / base["file"].get<std::string>()));
  throw InputError("fan base: expected 'projective', 'product' or 'file'");
}

std::vector<RationalVector> gens_of(const EffModel& m, const json& list) {
  if (!list.is_array()) throw InputError("query: generator list must be an array");
  std::vector<RationalVector> out;
  for (const auto& g : list) out.push_back(g.is_string() ? m.ray(g.get<std::string>()).div_class : int_vector(g));
  return out;
}

std::string ray_name(const EffModel& m, const RationalVector& ray) {
  for (const auto& r : m.rays())
    if (primitive(r.div_class) == ray) return r.name;
  return to_string(ray);
}

json names_of(const EffModel& m, const Face& f) {
  std::vector<std::string> names;
  for (const auto& r : f.rays()) names.push_back(ray_name(m, r));
  std::sort(names.begin(), names.end());
  return names;
}

json eval_query(const EffModel& m, const json& q) {
  const std::string op = need(q, "op", "query").get<std::string>();
  if (op == "tau_dim" || op == "d" || op == "tau_rays" || op == "face_kind") {
    TauResult t = tau_and_d(m, gens_of(m, need(q, "gens", op)));
    if (op == "tau_dim") return t.tau.dim;
    if (op == "d") return t.d;
    if (op == "tau_rays") return names_of(m, t.tau);
    return to_string(classify_face(m, t.tau));
  }
  if (op == "adjacent")
    return adjacent(m, need(q, "a", op).get<std::string>(), need(q, "b", op).get<std::string>());
  if (op == "linate_dim" || op == "linate_violations") {
    auto names = need(q, "divisors", op).get<std::vector<std::string>>();
    try {
      Face f = linate_face(m, names);
      if (op == "linate_dim") return f.dim;
      return 0;
    } catch (const HypothesisError& e) {
      if (op == "linate_dim") throw;
      return e.violations().size();
    }
  }
  if (op == "ef_pass") {
    EfReport r = ef_check(m, need(q, "d", op).get<std::string>(), need(q, "e", op).get<std::string>());
    return r.pass;
  }
  if (op == "movdual") {
    try {
      return movdual_decompose(m).pass ? "pass" : "fail";
    } catch (const PreconditionError& e) {
      if (std::string(e.what()).find("insufficient data") != std::string::npos) return "insufficient data";
      throw;
    }
  }
  if (op == "summary") {
    SummaryReport r = summary_scan(m);
    if (!r.hypotheses_met) return "hypotheses unmet";
    return r.violations.size();
  }
  if (op == "relation") {
    auto sum = [&](const json& l) {
      RationalVector s(m.rho(), Rational(0));
      for (const auto& v : gens_of(m, l)) s = add(s, v);
      return s;
    };
    return sum(need(q, "lhs", op)) == sum(need(q, "rhs", op));
  }
  throw InputError("query: unknown op '" + op + "'");
}

json evaluate_eff_model(const json& payload, const fs::path& data_dir) {
  EffModel m = model_from_json(inline_or_file(need(payload, "model", "eff_model payload"), data_dir));
  json out = {{"rho", m.rho()}, {"eff_rays", m.eff().rays().size()}, {"fixed_divisors", m.fixed_divisors().size()}};
  if (payload.contains("queries"))
    for (const auto& [name, q] : payload["queries"].items()) out[name] = eval_query(m, q);
  return out;
}

json evaluate_fan(const json& payload, const fs::path& data_dir) {
  const json& construction = need(payload, "construction", "fan payload");
  Fan before = projective_space_fan(1);
  Fan f = build_fan(construction, data_dir, &before);
  FanReport r = validate(f);
  json out = {{"valid", r.valid}, {"dim", f.dim()}, {"rho", f.rho()}, {"rays", f.rays().size()},
              {"max_cones", f.max_cones().size()}};
  if (!r.valid) {
    out["violations"] = r.violations;
    return out;
  }
  out["betti"] = betti(f);
  out["primitive_relations"] = primitive_relations(f).size();
  const bool fano = is_fano(f);
  out["fano"] = fano;
  std::optional<std::int64_t> chi;
  std::optional<Rational> volume;
  if (fano) {
    auto p = anticanonical_polytope(f);
    chi = lattice_point_count(p);
    volume = normalized_volume(p);
    out["chi"] = *chi;
    out[f.dim() == 4 ? "K4" : "volume"] = to_int64(*volume);
  }
  if (f.dim() == 4) {
    out["exceptional_lines"] = exceptional_line_circuits(f).size();
    size_t planes = 0;
    for (const auto& w : mori_wall_relations(f))
      if (w.negative == 2 && w.locus_dim == 2) ++planes;
    out["walls_locus_dim_2"] = planes;
    out["has_locus_dim_2_wall"] = planes > 0;
  }
  if (!(before == f)) {
    out["fano_before_flips"] = is_fano(before);
    out["exceptional_lines_before_flips"] = exceptional_line_circuits(before).size();
  }
  if (payload.contains("ledger")) {
    // The ledger models the blow-up before any flip; χ(-K) and the Picard
    // number are unchanged by the flips, b4 is compared before them.
    FourfoldState st = run_chain(payload["ledger"]);
    auto b = betti(before);
    out["ledger_agrees.rho"] = st.rho == static_cast<std::int64_t>(f.rho());
    out["ledger_agrees.b4"] = b.size() == 5 && st.even_betti() == b;
    if (chi) out["ledger_agrees.chi"] = st.chiK == *chi;
    if (volume && st.k4_available && before == f) out["ledger_agrees.K4"] = Rational(st.K4) == *volume;
  }
  return out;
}

json evaluate_chain(const json& payload) {
  if (payload.contains("table")) {
    TableArtifact t = generate_table(parse_base(payload["table"].get<std::string>()),
                                     need(payload, "max_s", "table payload").get<int>());
    json out;
    for (const auto& r : t.rows) {
      const std::string p = "s" + std::to_string(r.s) + ".";
      out[p + "rho"] = r.rho;
      out[p + "K4"] = r.K4;
      out[p + "h22"] = r.h22;
      out[p + "h13"] = r.h13;
      out[p + "b4"] = r.h22 + 2 * r.h13;
      out[p + "b3"] = r.b3;
      out[p + "chi"] = r.chi;
      out[p + "fano"] = r.fano;
    }
    return out;
  }
  FourfoldState st = run_chain(payload);
  json out = state_to_json(st);
  out.erase("pending");
  out.erase("name");
  out["line"] = invariant_line(st);
  return out;
}

}  // namespace

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Fan: return "fan";
    case ScenarioKind::EffModel: return "eff_model";
    case ScenarioKind::LedgerChain: return "ledger_chain";
    case ScenarioKind::Note: return "note";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(const std::string& s) {
  if (s == "fan") return ScenarioKind::Fan;
  if (s == "eff_model") return ScenarioKind::EffModel;
  if (s == "ledger_chain") return ScenarioKind::LedgerChain;
  if (s == "note") return ScenarioKind::Note;
  throw InputError("unknown scenario kind '" + s + "'");
}

Scenario scenario_from_json(const json& doc) {
  Scenario s;
  try {
    s.id = need(doc, "id", "scenario").get<std::string>();
    const std::string where = "scenario " + s.id;
    s.kind = parse_scenario_kind(need(doc, "kind", where).get<std::string>());
    s.title = doc.value("title", "");
    s.anchor = need(doc, "anchor", where).get<std::string>();
    s.payload = need(doc, "payload", where);
    if (doc.contains("expected")) {
      for (const auto& [key, e] : doc["expected"].items()) {
        Expectation x{key, need(e, "value", where + " " + key), need(e, "provenance", where + " " + key),
                      need(e, "via", where + " " + key)};
        if (x.provenance != "reference" && x.provenance != "derived")
          throw InputError(where + ": expectation " + key + " has provenance '" + x.provenance + "'");
        if (x.via.empty()) throw InputError(where + ": expectation " + key + " has an empty 'via'");
        s.expected.push_back(std::move(x));
      }
    }
    if (s.kind == ScenarioKind::Note && !s.expected.empty())
      throw InputError(where + ": notes carry no expectations");
  } catch (const json::exception& e) {
    throw InputError("scenario " + s.id + ": " + e.what());
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json expected = json::object();
  for (const auto& e : s.expected) expected[e.key] = {{"value", e.value}, {"provenance", e.provenance}, {"via", e.via}};
  json out = {{"id", s.id}, {"kind", to_string(s.kind)}, {"title", s.title}, {"anchor", s.anchor}, {"payload", s.payload}};
  if (s.kind != ScenarioKind::Note) out["expected"] = expected;
  return out;
}

bool CheckReport::passed() const { return mismatches() == 0; }

size_t CheckReport::mismatches() const {
  return static_cast<size_t>(std::count_if(items.begin(), items.end(), [](const CheckItem& i) { return !i.ok; }));
}

fs::path default_data_dir() {
  if (const char* env = std::getenv("FANOFORGE_DATA"); env && *env) return env;
  return FANOFORGE_DEFAULT_DATA;
}

Fan build_fan(const json& construction, const fs::path& data_dir, Fan* before_flips) {
  Fan f = base_fan(need(construction, "base", "construction"), data_dir);
  bool flipped = false;
  if (construction.contains("steps")) {
    for (const auto& step : construction["steps"]) {
      if (step.contains("star")) {
        RayIndexSet cone;
        for (const auto& v : step["star"]) {
          auto idx = f.ray_index(int_vector(v));
          if (!idx) throw InputError("construction: no ray " + v.dump());
          cone.push_back(*idx);
        }
        std::sort(cone.begin(), cone.end());
        f = star_subdivide(f, cone);
      } else if (step.value("flip_exceptional_lines", false)) {
        if (!flipped && before_flips) *before_flips = f;
        flipped = true;
        for (const auto& c : exceptional_line_circuits(f)) f = flip(f, c);
      } else {
        throw InputError("construction: unknown step " + step.dump());
      }
    }
  }
  if (!flipped && before_flips) *before_flips = f;
  return f;
}

Registry Registry::load(const fs::path& data_dir) {
  Registry r;
  r.data_dir_ = data_dir;
  const fs::path dir = data_dir / "scenarios";
  if (!fs::is_directory(dir)) throw InputError("no scenario directory at " + dir.string());
  std::set<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    Scenario s = scenario_from_json(read_json(entry.path()));
    if (!ids.insert(s.id).second) throw InputError("duplicate scenario id " + s.id);
    r.scenarios_.push_back(std::move(s));
  }
  std::sort(r.scenarios_.begin(), r.scenarios_.end(),
            [](const Scenario& a, const Scenario& b) { return a.id < b.id; });
  return r;
}

const Scenario& Registry::get(const std::string& id) const {
  for (const auto& s : scenarios_)
    if (s.id == id) return s;
  throw InputError("unknown scenario '" + id + "'");
}

json Registry::evaluate(const Scenario& s) const {
  switch (s.kind) {
    case ScenarioKind::Fan: return evaluate_fan(s.payload, data_dir_);
    case ScenarioKind::EffModel: return evaluate_eff_model(s.payload, data_dir_);
    case ScenarioKind::LedgerChain: return evaluate_chain(s.payload);
    case ScenarioKind::Note: break;
  }
  throw PreconditionError("scenario " + s.id + " is a note; nothing to evaluate");
}

CheckReport Registry::check(const std::string& id) const {
  const Scenario& s = get(id);
  json computed = evaluate(s);
  CheckReport report{s.id, {}};
  std::set<std::string> seen;
  for (const auto& e : s.expected) {
    json c = computed.contains(e.key) ? computed[e.key] : json(nullptr);
    report.items.push_back({e.key, e.value, c, c == e.value});
    seen.insert(e.key);
  }
  // Cross-engine agreements are always checked.
  for (const auto& [key, value] : computed.items())
    if (key.rfind("ledger_agrees.", 0) == 0 && !seen.count(key)) report.items.push_back({key, true, value, value == true});
  return report;
}

std::vector<CheckReport> Registry::check_all() const {
  std::vector<CheckReport> out;
  for (const auto& s : scenarios_)
    if (s.kind != ScenarioKind::Note) out.push_back(check(s.id));
  return out;
}

std::map<std::string, std::string> emit_tables(const Registry& registry, TableFormat format, std::optional<int> max_s) {
  const char* ext = format == TableFormat::Markdown ? "md" : format == TableFormat::Csv ? "csv" : "json";
  std::map<std::string, std::string> out;
  for (Base b : {Base::P4, Base::Quadric, Base::Cubic})
    out[std::string("tables/") + to_string(b) + "." + ext] =
        render_table(generate_table(b, max_s.value_or(table_extent(b))), format);
  std::string lines;
  for (const auto& s : registry.scenarios())
    if (s.kind == ScenarioKind::LedgerChain && !s.payload.contains("table"))
      lines += s.id + ": " + invariant_line(run_chain(s.payload)) + "\n";
  out["tables/invariants.txt"] = lines;
  return out;
}

nlohmann::json fan_info(const Fan& f) {
  FanReport r = validate(f);
  json out = {{"dim", f.dim()}, {"rays", f.rays().size()}, {"max_cones", f.max_cones().size()},
              {"rho", f.rho()}, {"valid", r.valid}};
  if (!r.valid) {
    out["violations"] = r.violations;
    return out;
  }
  out["betti"] = betti(f);
  json rels = json::array();
  for (const auto& p : primitive_relations(f)) {
    std::vector<std::string> coeffs;
    for (const auto& c : p.coefficients) coeffs.push_back(c.get_str());
    rels.push_back({{"collection", p.collection}, {"target_cone", p.target_cone},
                    {"coefficients", coeffs}, {"degree", p.degree.get_si()}});
  }
  out["primitive_relations"] = rels;
  const bool fano = is_fano(f);
  out["fano"] = fano;
  if (fano) {
    auto p = anticanonical_polytope(f);
    out["chi"] = lattice_point_count(p);
    out["volume"] = to_string(normalized_volume(p));
  }
  if (f.dim() == 4) {
    json lines = json::array();
    for (const auto& c : exceptional_line_circuits(f)) lines.push_back({{"plus", c.plus}, {"minus", c.minus}});
    out["exceptional_lines"] = lines;
  }
  return out;
}

}  // namespace fanoforge
