#include "fanoforge/mori.hpp"

#include <algorithm>
#include <set>

#include "fanoforge/errors.hpp"
#include "fanoforge/linalg.hpp"

namespace fanoforge {

namespace {

bool known_type_tag(const std::string& t) {
  static const std::set<std::string> tags = {"(3,0)^sm", "(3,1)^sm", "(3,0)^Q", "(3,2)", "unknown"};
  return tags.count(t) > 0;
}

std::vector<RationalVector> eff_generators(const std::vector<EffRay>& rays) {
  std::vector<RationalVector> g;
  for (const auto& r : rays) g.push_back(r.div_class);
  return g;
}

size_t positive(size_t rho) {
  if (rho == 0) throw InputError("model: rho must be positive");
  return rho;
}

void check_length(const RationalVector& v, size_t rho, const std::string& what) {
  if (v.size() != rho)
    throw InputError(what + " has length " + std::to_string(v.size()) + ", expected " +
                     std::to_string(rho));
}

std::vector<RationalVector> difference(const std::vector<RationalVector>& a,
                                       const std::vector<RationalVector>& b) {
  std::vector<RationalVector> out;
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) out.push_back(x);
  return out;
}

}  // namespace

const char* to_string(FaceKind k) { return k == FaceKind::Fixed ? "Fixed" : "Movable"; }

EffModel::EffModel(size_t rho, std::vector<std::string> basis, std::vector<EffRay> rays,
                   std::vector<RationalVector> mov_generators,
                   std::optional<std::vector<RationalVector>> mov_curve_gens, EffModelMeta meta)
    : rho_(rho),
      basis_(std::move(basis)),
      eff_(Cone::canonicalize(eff_generators(rays), positive(rho))),
      mov_(Cone::canonicalize(mov_generators, rho)),
      rays_(std::move(rays)),
      mov_curve_gens_(std::move(mov_curve_gens)),
      meta_(meta) {
  if (!basis_.empty() && basis_.size() != rho_)
    throw InputError("model: basis has " + std::to_string(basis_.size()) + " labels, rho is " +
                     std::to_string(rho_));
  std::set<std::string> names;
  for (const auto& r : rays_) {
    if (r.name.empty()) throw InputError("model: ray without a name");
    if (!names.insert(r.name).second) throw InputError("model: duplicate ray name " + r.name);
    check_length(r.div_class, rho_, "class of " + r.name);
    if (r.curve_class) check_length(*r.curve_class, rho_, "curve class of " + r.name);
    if (!known_type_tag(r.type_tag)) throw InputError("model: unknown type tag " + r.type_tag);
    if (!eff_.is_pointed()) throw PreconditionError("model: Eff is not pointed");
    if (!eff_.ray_index(r.div_class))
      throw PreconditionError("model: " + r.name + " does not span an extremal ray of Eff");
    if (r.fixed && r.type_tag != "unknown") {
      if (!r.curve_class)
        throw PreconditionError("model: type-tagged divisor " + r.name + " has no curve class");
      if (pairing(r.div_class, *r.curve_class) != -1)
        throw PreconditionError("model: " + r.name + "·C_" + r.name + " = " +
                                fanoforge::to_string(pairing(r.div_class, *r.curve_class)) +
                                ", expected -1");
    }
  }
  for (const auto& g : mov_generators) check_length(g, rho_, "mov generator");
  if (!eff_.contains(mov_)) throw PreconditionError("model: Mov is not contained in Eff");
  if (mov_curve_gens_)
    for (const auto& c : *mov_curve_gens_) check_length(c, rho_, "mov curve generator");
}

std::vector<const EffRay*> EffModel::fixed_divisors() const {
  std::vector<const EffRay*> out;
  for (const auto& r : rays_)
    if (r.fixed) out.push_back(&r);
  return out;
}

std::vector<RationalVector> EffModel::movable_boundary() const {
  std::vector<RationalVector> fixed;
  for (const auto* r : fixed_divisors()) fixed.push_back(primitive(r->div_class));
  return difference(eff_.rays(), fixed);
}

const EffRay& EffModel::ray(const std::string& name) const {
  for (const auto& r : rays_)
    if (r.name == name) return r;
  throw InputError("model: no ray named " + name);
}

Face EffModel::ray_face(const std::string& name) const {
  return make_face(eff_, {*eff_.ray_index(ray(name).div_class)});
}

Rational EffModel::pairing(const RationalVector& divisor, const RationalVector& curve) const {
  if (divisor.size() != rho_ || curve.size() != rho_) throw InputError("pairing: dimension mismatch");
  return dot(divisor, curve);
}

EffModel model_from_json(const nlohmann::json& doc) {
  try {
    const size_t rho = doc.at("rho").get<size_t>();
    std::vector<std::string> basis;
    if (doc.contains("basis")) basis = doc.at("basis").get<std::vector<std::string>>();
    std::vector<EffRay> rays;
    for (const auto& e : doc.at("eff_rays")) {
      EffRay r;
      r.name = e.at("name").get<std::string>();
      r.div_class = vector_from_json(e.at("class"));
      if (e.contains("curve_class")) r.curve_class = vector_from_json(e.at("curve_class"));
      if (e.contains("type")) r.type_tag = e.at("type").get<std::string>();
      r.fixed = e.value("fixed", e.contains("curve_class") || e.contains("type"));
      if (e.contains("annotations")) r.annotations = e.at("annotations");
      rays.push_back(std::move(r));
    }
    std::vector<RationalVector> mov;
    for (const auto& m : doc.at("mov_rays")) mov.push_back(vector_from_json(m));
    std::optional<std::vector<RationalVector>> curves;
    if (doc.contains("mov_curves")) {
      curves.emplace();
      for (const auto& c : doc.at("mov_curves")) curves->push_back(vector_from_json(c));
    }
    EffModelMeta meta;
    if (doc.contains("meta")) {
      meta.rho_ge_7 = doc.at("meta").value("rho_ge_7", false);
      meta.not_product = doc.at("meta").value("not_product", false);
    }
    return EffModel(rho, std::move(basis), std::move(rays), std::move(mov), std::move(curves), meta);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("model JSON: ") + e.what());
  }
}

nlohmann::json model_to_json(const EffModel& model) {
  nlohmann::json j;
  j["rho"] = model.rho();
  j["basis"] = model.basis();
  j["eff_rays"] = nlohmann::json::array();
  for (const auto& r : model.rays()) {
    nlohmann::json e;
    e["name"] = r.name;
    e["class"] = vector_to_json(r.div_class);
    e["fixed"] = r.fixed;
    if (r.curve_class) e["curve_class"] = vector_to_json(*r.curve_class);
    if (r.fixed) e["type"] = r.type_tag;
    if (!r.annotations.empty()) e["annotations"] = r.annotations;
    j["eff_rays"].push_back(e);
  }
  j["mov_rays"] = nlohmann::json::array();
  for (const auto& m : model.mov().rays()) j["mov_rays"].push_back(vector_to_json(m));
  if (model.mov_curve_gens()) {
    j["mov_curves"] = nlohmann::json::array();
    for (const auto& c : *model.mov_curve_gens()) j["mov_curves"].push_back(vector_to_json(c));
  }
  j["meta"] = {{"rho_ge_7", model.meta().rho_ge_7}, {"not_product", model.meta().not_product}};
  return j;
}

FaceKind classify_face(const EffModel& model, const Face& face) {
  if (!(face.parent == model.eff()) || !is_face(face, model.eff()))
    throw PreconditionError("classify_face: not a face of Eff");
  return intersect(face.as_cone(), model.mov()).is_zero() ? FaceKind::Fixed : FaceKind::Movable;
}

bool adjacent(const EffModel& model, const std::string& d, const std::string& e) {
  const auto& a = model.ray(d);
  const auto& b = model.ray(e);
  if (!a.fixed || !b.fixed)
    throw PreconditionError("adjacent: " + (a.fixed ? e : d) + " is not a fixed divisor");
  Cone span = Cone::canonicalize({a.div_class, b.div_class}, model.rho());
  if (!is_face(span, model.eff())) return false;
  return intersect(span, model.mov()).is_zero();
}

EfReport ef_check(const EffModel& model, const std::string& d, const std::string& e) {
  const auto& dr = model.ray(d);
  const auto& er = model.ray(e);
  if (!er.curve_class) throw PreconditionError("ef_check: " + e + " has no curve class");
  EfReport r;
  r.d = d;
  r.e = e;
  r.hypotheses_met = model.meta().rho_ge_7;
  r.pairing = model.pairing(dr.div_class, *er.curve_class);
  r.antecedent = r.pairing == 0;
  r.adjacent = adjacent(model, d, e);
  r.pass = !r.antecedent || r.adjacent;
  return r;
}

std::vector<EfReport> ef_scan(const EffModel& model) {
  std::vector<EfReport> out;
  for (const auto* d : model.fixed_divisors())
    for (const auto* e : model.fixed_divisors())
      if (d != e && e->curve_class) out.push_back(ef_check(model, d->name, e->name));
  return out;
}

TauResult tau_and_d(const EffModel& model, const std::vector<RationalVector>& pullback_gens,
                    std::optional<size_t> rho_y) {
  for (const auto& g : pullback_gens) {
    if (g.size() != model.rho()) throw InputError("tau_and_d: generator has wrong length");
    if (!model.eff().contains(g))
      throw PreconditionError("tau_and_d: generator " + to_string(g) + " lies outside Eff");
  }
  TauResult r{minimal_face_containing(model.eff(), pullback_gens), 0, std::nullopt, std::nullopt};
  r.d = static_cast<int>(model.rho()) - static_cast<int>(r.tau.dim);
  if (rho_y) {
    r.mov_dim = intersect(r.tau.as_cone(), model.mov()).dim();
    r.mov_dim_ok = *r.mov_dim >= *rho_y;
  }
  return r;
}

Face linate_face(const EffModel& model, const std::vector<std::string>& names) {
  if (names.empty()) throw InputError("linate_face: no divisors given");
  std::vector<const EffRay*> ds;
  for (const auto& n : names) {
    const auto& r = model.ray(n);
    if (!r.fixed) throw PreconditionError("linate_face: " + n + " is not a fixed divisor");
    if (!r.curve_class) throw PreconditionError("linate_face: " + n + " has no curve class");
    ds.push_back(&r);
  }
  std::vector<std::string> bad;
  for (const auto* a : ds)
    for (const auto* b : ds)
      if (a != b && model.pairing(a->div_class, *b->curve_class) != 0)
        bad.push_back("(" + a->name + "," + b->name + "): " + a->name + "·C_" + b->name + " = " +
                      to_string(model.pairing(a->div_class, *b->curve_class)));
  if (!bad.empty()) throw HypothesisError(std::move(bad));

  std::vector<size_t> idx;
  std::vector<RationalVector> classes;
  for (const auto* d : ds) {
    idx.push_back(*model.eff().ray_index(d->div_class));
    classes.push_back(d->div_class);
  }
  if (linalg::rank(classes, model.rho()) != ds.size())
    throw PreconditionError("linate_face: classes are linearly dependent on this model");
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  Face f{model.eff(), idx, ds.size()};
  if (!is_face(f, model.eff())) throw PreconditionError("linate_face: span is not a face of Eff on this model");
  if (classify_face(model, f) != FaceKind::Fixed)
    throw PreconditionError("linate_face: span meets Mov on this model");
  return f;
}

MovDualReport movdual_decompose(const EffModel& model) {
  if (!model.mov_curve_gens())
    throw PreconditionError("movdual_decompose: insufficient data (no mov curve generators)");
  std::vector<RationalVector> gens = *model.mov_curve_gens();
  for (const auto* d : model.fixed_divisors()) {
    if (!d->curve_class)
      throw PreconditionError("movdual_decompose: insufficient data (" + d->name +
                              " has no curve class)");
    gens.push_back(*d->curve_class);
  }
  MovDualReport r{false, dual(model.mov()), Cone::canonicalize(gens, model.rho()), {}, {}, {}};
  r.missing = difference(r.computed.rays(), r.expected.rays());
  r.extra = difference(r.expected.rays(), r.computed.rays());
  for (const auto* d : model.fixed_divisors())
    if (!r.computed.ray_index(*d->curve_class)) r.non_faces.push_back(d->name);
  r.pass = r.computed == r.expected && r.non_faces.empty();
  return r;
}

SummaryReport summary_scan(const EffModel& model) {
  SummaryReport r;
  r.hypotheses_met = model.meta().rho_ge_7 && model.meta().not_product && model.rho() >= 7;
  const long bound = static_cast<long>(model.rho()) - 4;
  for (const auto& f : faces(model.eff())) {
    if (static_cast<long>(f.dim) >= bound) continue;
    if (classify_face(model, f) == FaceKind::Movable) r.violations.push_back(f);
  }
  return r;
}

}  // namespace fanoforge
