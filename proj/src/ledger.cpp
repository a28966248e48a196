#include "fanoforge/ledger.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "fanoforge/errors.hpp"

namespace fanoforge {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string center_tag(const SurfaceCenter& c) { return "center " + (c.name.empty() ? "<unnamed>" : c.name); }

const std::vector<std::string>& fano_column(Base b) {
  static const std::vector<std::string> p4 = {"P^4", "yes, toric", "yes, toric", "?", "?"};
  static const std::vector<std::string> quadric = {"Q", "yes", "yes", "yes", "yes", "yes", "?", "?", "?"};
  static const std::vector<std::string> cubic = {"Z", "yes", "yes", "?", "?", "?", "?", "?", "?"};
  switch (b) {
    case Base::P4: return p4;
    case Base::Quadric: return quadric;
    case Base::Cubic: return cubic;
    case Base::P2xP2: break;
  }
  throw InputError("no plane table for base " + std::string(to_string(b)));
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::int64_t binom2(std::int64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

template <class T>
T field(const nlohmann::json& doc, const char* key, const std::string& where) {
  if (!doc.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

void validate_center(const SurfaceCenter& c) {
  if (c.chiO != 1 - c.q + c.h20)
    throw InputError(center_tag(c) + ": chiO must equal 1 - q + h20");
  if ((c.L2 + c.LK) % 2 != 0)
    throw InputError(center_tag(c) + ": L2 + LK is odd, so χ(S, -K_Y|S) is not an integer");
  for (const auto& [other, k] : c.meets)
    if (k < 0) throw InputError(center_tag(c) + ": negative meet count with " + other);
}

Base parse_base(const std::string& name) {
  const std::string n = lower(name);
  if (n == "p4") return Base::P4;
  if (n == "quadric") return Base::Quadric;
  if (n == "cubic") return Base::Cubic;
  if (n == "p2xp2") return Base::P2xP2;
  throw InputError("unknown base '" + name + "' (expected p4, quadric, cubic or p2xp2)");
}

const char* to_string(Base b) {
  switch (b) {
    case Base::P4: return "p4";
    case Base::Quadric: return "quadric";
    case Base::Cubic: return "cubic";
    case Base::P2xP2: return "p2xp2";
  }
  return "?";
}

FourfoldState base_state(Base b) {
  FourfoldState s;
  s.name = to_string(b);
  switch (b) {
    case Base::P4: s.K4 = 625, s.chiK = 126, s.rho = 1, s.b3 = 0, s.h22 = 1, s.h13 = 0; break;
    case Base::Quadric: s.K4 = 512, s.chiK = 105, s.rho = 1, s.b3 = 0, s.h22 = 2, s.h13 = 0; break;
    case Base::Cubic: s.K4 = 243, s.chiK = 55, s.rho = 1, s.b3 = 0, s.h22 = 21, s.h13 = 1; break;
    case Base::P2xP2: s.K4 = 486, s.chiK = 100, s.rho = 2, s.b3 = 0, s.h22 = 3, s.h13 = 0; break;
  }
  return s;
}

SurfaceCenter plane_center(Base b, const std::string& name) {
  // K_Y restricted to a plane is -5h, -4h, -3h; c2N is the self-intersection
  // of the plane in Y.
  SurfaceCenter c;
  c.name = name;
  c.K2 = 9;
  c.h11 = 1;
  c.chiO = 1;
  switch (b) {
    case Base::P4: c.L2 = 25, c.LK = 15, c.c2N = 1; break;
    case Base::Quadric: c.L2 = 16, c.LK = 12, c.c2N = 1; break;
    case Base::Cubic: c.L2 = 9, c.LK = 9, c.c2N = 3; break;
    case Base::P2xP2: throw InputError("plane_center: no standard plane in p2xp2");
  }
  return c;
}

SurfaceCenter transversal_update(const SurfaceCenter& center, std::int64_t k) {
  if (k < 0) throw PreconditionError("transversal_update: k must be non-negative");
  SurfaceCenter c = center;
  c.L2 -= k;
  c.LK -= k;
  c.K2 -= k;
  c.h11 += k;
  return c;
}

FourfoldState blow_up_surface(const FourfoldState& state, const std::string& center) {
  auto it = std::find_if(state.pending.begin(), state.pending.end(),
                         [&](const SurfaceCenter& c) { return c.name == center; });
  if (it == state.pending.end()) throw PreconditionError("blow_up_surface: unknown center '" + center + "'");
  const SurfaceCenter& c = *it;
  validate_center(c);
  FourfoldState out = state;
  out.K4 = state.K4 - 3 * c.L2 - 2 * c.LK + c.c2N - c.K2;
  out.chiK = state.chiK - (c.chiO + (c.L2 + c.LK) / 2);
  out.rho += 1;
  out.h22 += c.h11;
  out.h13 += c.h20;
  out.b3 += 2 * c.q;
  out.pending.clear();
  for (const auto& t : state.pending) {
    if (t.name == center) continue;
    auto m = t.meets.find(center);
    SurfaceCenter u = m != t.meets.end() && m->second > 0 ? transversal_update(t, m->second) : t;
    u.meets.erase(center);
    out.pending.push_back(std::move(u));
  }
  return out;
}

FourfoldState blow_up_point(const FourfoldState& state) {
  // K_X = f*K_Y + 3E, E^4 = -1.
  FourfoldState out = state;
  out.chiK -= 15;
  out.K4 -= 81;
  out.rho += 1;
  out.h22 += 1;
  return out;
}

FourfoldState blow_up_curve(const FourfoldState& state, std::int64_t genus, std::int64_t degree_minus_k) {
  if (genus != 0 || degree_minus_k != 3)
    throw PreconditionError("blow_up_curve: no certified formula for (g, -K.C) = (" + std::to_string(genus) +
                            ", " + std::to_string(degree_minus_k) + "); only (0, 3) is supported");
  FourfoldState out = state;
  out.chiK -= 15;
  out.rho += 1;
  // H^4 gains H^2(C) and H^0(C); H^3 gains H^1(C).
  out.h22 += 2;
  out.b3 += 2 * genus;
  out.k4_available = false;
  out.K4 = 0;
  return out;
}

Rational chi_del_pezzo_4fold(std::int64_t d, std::int64_t t) {
  if (d < 1) throw PreconditionError("chi_del_pezzo_4fold: degree must be positive");
  Rational tt(static_cast<long>(t)), dd(static_cast<long>(d));
  Rational r = (tt + 1) * (tt + 2) * (dd * tt * tt + 3 * dd * tt + 12) / 24;
  r.canonicalize();
  return r;
}

std::int64_t antsections_step(std::int64_t h0_w, std::int64_t rho_b) {
  if (rho_b < 1 || rho_b > 9) throw PreconditionError("antsections_step: rho_B must lie in 1..9");
  return h0_w - 11 + rho_b;
}

std::int64_t h0_cubic_chain(std::int64_t rho) {
  if (rho < 2 || rho > 12) throw PreconditionError("h0_cubic_chain: rho must lie in 2..12");
  return (rho * rho - 23 * rho + 132) / 2;
}

std::int64_t h0_p2xp2(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0) return 0;
  return binom2(a + 2) * binom2(b + 2);
}

std::int64_t double_cover_h0() { return h0_p2xp2(2, 2) + h0_p2xp2(1, 1); }

FourfoldState plane_chain(Base b, int s) {
  if (s < 0) throw PreconditionError("plane_chain: s must be non-negative");
  FourfoldState st = base_state(b);
  for (int i = 1; i <= s; ++i) {
    SurfaceCenter c = plane_center(b, "P" + std::to_string(i));
    for (int j = 1; j <= s; ++j)
      if (j != i) c.meets["P" + std::to_string(j)] = 1;
    st.pending.push_back(std::move(c));
  }
  return st;
}

int table_extent(Base b) { return static_cast<int>(fano_column(b).size()) - 1; }

TableArtifact generate_table(Base b, int max_s) {
  if (max_s < 0) throw PreconditionError("generate_table: max_s must be non-negative");
  const auto& fano = fano_column(b);
  FourfoldState st = plane_chain(b, max_s);
  TableArtifact t{b, {}};
  for (int s = 0; s <= max_s; ++s) {
    if (s > 0) st = blow_up_surface(st, "P" + std::to_string(s));
    TableRow r;
    r.s = s;
    r.rho = st.rho;
    r.K4 = st.K4;
    r.h22 = st.h22;
    r.h13 = st.h13;
    r.b3 = st.b3;
    r.chi = st.chiK;
    r.beyond_table = s >= static_cast<int>(fano.size());
    if (!r.beyond_table) r.fano = fano[s];
    if (r.fano.rfind("yes", 0) == 0 && r.chi < 2)
      throw InternalError("generate_table: Fano row with χ(-K) < 2 at s = " + std::to_string(s));
    t.rows.push_back(std::move(r));
  }
  return t;
}

TableFormat parse_table_format(const std::string& name) {
  const std::string n = lower(name);
  if (n == "md") return TableFormat::Markdown;
  if (n == "csv") return TableFormat::Csv;
  if (n == "json") return TableFormat::Json;
  throw InputError("unknown table format '" + name + "' (expected md, csv or json)");
}

std::string render_table(const TableArtifact& t, TableFormat f) {
  const bool split = t.base == Base::Cubic;
  const char* beyond = "beyond table";
  std::ostringstream out;
  if (f == TableFormat::Markdown) {
    if (split) {
      out << "| s | rho | K^4 | h22 | h13 | b3 | chi(-K) | Fano |\n";
      out << "|---|---|---|---|---|---|---|---|\n";
    } else {
      out << "| s | rho | K^4 | b4 = h22 | b3 | chi(-K) | Fano |\n";
      out << "|---|---|---|---|---|---|---|\n";
    }
    for (const auto& r : t.rows) {
      out << "| " << r.s << " | " << r.rho << " | " << r.K4 << " | " << r.h22 << " | ";
      if (split) out << r.h13 << " | ";
      out << r.b3 << " | " << r.chi << " | " << (r.beyond_table ? beyond : r.fano) << " |\n";
    }
  } else if (f == TableFormat::Csv) {
    out << (split ? "s,rho,K4,h22,h13,b3,chi,fano,flag\n" : "s,rho,K4,b4,b3,chi,fano,flag\n");
    for (const auto& r : t.rows) {
      out << r.s << ',' << r.rho << ',' << r.K4 << ',' << r.h22 << ',';
      if (split) out << r.h13 << ',';
      out << r.b3 << ',' << r.chi << ',' << csv_cell(r.fano) << ',' << (r.beyond_table ? beyond : "") << '\n';
    }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
      rows.push_back({{"s", r.s},
                      {"rho", r.rho},
                      {"K4", r.K4},
                      {"h22", r.h22},
                      {"h13", r.h13},
                      {"b4", r.h22 + 2 * r.h13},
                      {"b3", r.b3},
                      {"chi", r.chi},
                      {"fano", r.beyond_table ? nlohmann::json(nullptr) : nlohmann::json(r.fano)},
                      {"source", r.beyond_table ? "computed, beyond table" : "reference table"}});
    }
    nlohmann::json doc = {{"base", to_string(t.base)}, {"rows", rows}};
    out << doc.dump(2) << '\n';
  }
  return out.str();
}

std::string invariant_line(const FourfoldState& s) {
  std::ostringstream out;
  out << "K^4=" << (s.k4_available ? std::to_string(s.K4) : std::string("unavailable")) << " rho=" << s.rho
      << " b4=" << s.b4() << " h22=" << s.h22 << " h13=" << s.h13 << " b3=" << s.b3 << " chi=" << s.chiK;
  return out.str();
}

SurfaceCenter center_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("center: expected an object");
  SurfaceCenter c;
  c.name = field<std::string>(doc, "name", "center");
  const std::string where = "center " + c.name;
  c.L2 = field<std::int64_t>(doc, "L2", where);
  c.LK = field<std::int64_t>(doc, "LK", where);
  c.K2 = field<std::int64_t>(doc, "K2", where);
  c.c2N = field<std::int64_t>(doc, "c2N", where);
  c.h11 = field<std::int64_t>(doc, "h11", where);
  c.h20 = field<std::int64_t>(doc, "h20", where);
  c.q = field<std::int64_t>(doc, "q", where);
  c.chiO = field<std::int64_t>(doc, "chiO", where);
  if (doc.contains("meets")) c.meets = field<std::map<std::string, std::int64_t>>(doc, "meets", where);
  validate_center(c);
  return c;
}

nlohmann::json center_to_json(const SurfaceCenter& c) {
  return {{"name", c.name}, {"L2", c.L2},   {"LK", c.LK}, {"K2", c.K2},     {"c2N", c.c2N},
          {"h11", c.h11},   {"h20", c.h20}, {"q", c.q},   {"chiO", c.chiO}, {"meets", c.meets}};
}

nlohmann::json state_to_json(const FourfoldState& s) {
  nlohmann::json pending = nlohmann::json::array();
  for (const auto& c : s.pending) pending.push_back(center_to_json(c));
  return {{"name", s.name},
          {"K4", s.k4_available ? nlohmann::json(s.K4) : nlohmann::json(nullptr)},
          {"chi", s.chiK},
          {"rho", s.rho},
          {"b3", s.b3},
          {"b4", s.b4()},
          {"h22", s.h22},
          {"h13", s.h13},
          {"pending", pending}};
}

FourfoldState run_chain(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("chain: expected an object");
  FourfoldState st = base_state(parse_base(field<std::string>(doc, "base", "chain")));
  std::set<std::string> names;
  if (doc.contains("centers")) {
    if (!doc["centers"].is_array()) throw InputError("chain: 'centers' must be an array");
    for (const auto& cd : doc["centers"]) {
      SurfaceCenter c = center_from_json(cd);
      if (!names.insert(c.name).second) throw InputError("chain: duplicate center " + c.name);
      st.pending.push_back(std::move(c));
    }
  }
  for (const auto& c : st.pending) {
    for (const auto& [other, k] : c.meets) {
      auto it = std::find_if(st.pending.begin(), st.pending.end(),
                             [&](const SurfaceCenter& t) { return t.name == other; });
      if (it == st.pending.end()) throw InputError("chain: center " + c.name + " meets unknown center " + other);
      auto back = it->meets.find(c.name);
      if (back == it->meets.end() || back->second != k)
        throw InputError("chain: meets between " + c.name + " and " + other + " is not symmetric");
    }
  }
  std::vector<std::string> order;
  if (doc.contains("order")) {
    order = field<std::vector<std::string>>(doc, "order", "chain");
    std::set<std::string> seen;
    for (const auto& n : order) {
      if (!names.count(n)) throw InputError("chain: order names unknown center " + n);
      if (!seen.insert(n).second) throw InputError("chain: center " + n + " listed twice in order");
    }
  } else {
    for (const auto& c : st.pending) order.push_back(c.name);
  }
  for (const auto& n : order) st = blow_up_surface(st, n);
  const auto points = doc.contains("points") ? field<std::int64_t>(doc, "points", "chain") : 0;
  if (points < 0) throw InputError("chain: 'points' must be non-negative");
  for (std::int64_t i = 0; i < points; ++i) st = blow_up_point(st);
  if (doc.contains("curves")) {
    if (!doc["curves"].is_array()) throw InputError("chain: 'curves' must be an array");
    for (const auto& cv : doc["curves"])
      st = blow_up_curve(st, field<std::int64_t>(cv, "g", "curve"), field<std::int64_t>(cv, "d", "curve"));
  }
  if (doc.contains("name")) st.name = field<std::string>(doc, "name", "chain");
  return st;
}

}  // namespace fanoforge
