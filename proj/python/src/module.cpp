// Thin bindings over the C++ core. Structured values cross the boundary as
// JSON text; the Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fanoforge/cone.hpp"
#include "fanoforge/errors.hpp"
#include "fanoforge/fan.hpp"
#include "fanoforge/ledger.hpp"
#include "fanoforge/mori.hpp"
#include "fanoforge/registry.hpp"

namespace py = pybind11;
using namespace fanoforge;
using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(e.what());
  }
}

std::filesystem::path data_dir(const std::string& dir) {
  return dir.empty() ? default_data_dir() : std::filesystem::path(dir);
}

json faces_json(const std::vector<Face>& fs) {
  json out = json::array();
  for (const auto& f : fs) {
    json rays = json::array();
    for (const auto& r : f.rays()) rays.push_back(vector_to_json(r));
    out.push_back({{"dim", f.dim}, {"rays", rays}});
  }
  return out;
}

json report_json(const CheckReport& r) {
  json items = json::array();
  for (const auto& i : r.items)
    items.push_back({{"key", i.key}, {"expected", i.expected}, {"computed", i.computed}, {"ok", i.ok}});
  return {{"id", r.id}, {"passed", r.passed()}, {"mismatches", r.mismatches()}, {"items", items}};
}

// Generators given as divisor names or class vectors.
std::vector<RationalVector> classes(const EffModel& m, const json& gens) {
  std::vector<RationalVector> out;
  for (const auto& g : gens) out.push_back(g.is_string() ? m.ray(g.get<std::string>()).div_class : vector_from_json(g));
  return out;
}

std::vector<std::string> face_names(const EffModel& m, const Face& f) {
  std::vector<std::string> out;
  for (const auto& r : f.rays())
    for (const auto& e : m.rays())
      if (primitive(e.div_class) == r) out.push_back(e.name);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "fanoforge C++ core";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  static py::exception<InputError> input(m, "InputError", error.ptr());
  auto precondition = py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<HypothesisError>(m, "HypothesisError", precondition.ptr());
  py::register_exception<InternalError>(m, "InternalError", error.ptr());
  // Malformed documents surface as InputError, as on the command line.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      py::set_error(input, e.what());
    } catch (const json::exception& e) {
      py::set_error(input, e.what());
    }
  });

  // cones
  m.def("cone_canonical", [](const std::string& c) { return cone_to_json(cone_from_json(parse(c))).dump(); });
  m.def("cone_dual", [](const std::string& c) { return cone_to_json(dual(cone_from_json(parse(c)))).dump(); });
  m.def("cone_intersect", [](const std::string& a, const std::string& b) {
    return cone_to_json(intersect(cone_from_json(parse(a)), cone_from_json(parse(b)))).dump();
  });
  m.def(
      "cone_faces",
      [](const std::string& c, int dim) {
        Cone cone = cone_from_json(parse(c));
        return faces_json(dim < 0 ? faces(cone) : faces(cone, static_cast<size_t>(dim))).dump();
      },
      py::arg("cone"), py::arg("dim") = -1);

  // fans
  m.def("fan_info", [](const std::string& f) { return fan_info(fan_from_json(parse(f))).dump(); });
  m.def("fan_build", [](const std::string& construction, const std::string& dir) {
    return fan_to_json(build_fan(parse(construction), data_dir(dir))).dump();
  });
  m.def("fan_star", [](const std::string& f, std::vector<size_t> cone) {
    return fan_to_json(star_subdivide(fan_from_json(parse(f)), std::move(cone))).dump();
  });
  m.def("fan_flip_lines", [](const std::string& f) {
    Fan fan = fan_from_json(parse(f));
    for (const auto& c : exceptional_line_circuits(fan)) fan = flip(fan, c);
    return fan_to_json(fan).dump();
  });

  // effective cone models
  m.def("model_tau", [](const std::string& model, const std::string& gens) {
    EffModel em = model_from_json(parse(model));
    TauResult r = tau_and_d(em, classes(em, parse(gens)));
    return json{{"dim", r.tau.dim}, {"d", r.d}, {"rays", face_names(em, r.tau)},
                {"kind", to_string(classify_face(em, r.tau))}}
        .dump();
  });
  m.def("model_adjacent", [](const std::string& model, const std::string& d, const std::string& e) {
    return adjacent(model_from_json(parse(model)), d, e);
  });

  // ledger
  m.def("ledger_run", [](const std::string& doc) { return state_to_json(run_chain(parse(doc))).dump(); });
  m.def("invariant_line", [](const std::string& doc) { return invariant_line(run_chain(parse(doc))); });
  m.def(
      "table",
      [](const std::string& base, int max_s, const std::string& format) {
        Base b = parse_base(base);
        return render_table(generate_table(b, max_s < 0 ? table_extent(b) : max_s), parse_table_format(format));
      },
      py::arg("base"), py::arg("max_s") = -1, py::arg("format") = "json");
  m.def("h0_cubic_chain", &h0_cubic_chain);
  m.def("h0_p2xp2", &h0_p2xp2);
  m.def("double_cover_h0", &double_cover_h0);
  m.def("antsections_step", &antsections_step);
  m.def("chi_del_pezzo_4fold", [](std::int64_t d, std::int64_t t) { return to_string(chi_del_pezzo_4fold(d, t)); });

  // registry
  m.def(
      "registry_list",
      [](const std::string& dir) {
        json out = json::array();
        Registry r = Registry::load(data_dir(dir));
        for (const auto& s : r.scenarios())
          out.push_back({{"id", s.id}, {"kind", to_string(s.kind)}, {"title", s.title}, {"anchor", s.anchor}});
        return out.dump();
      },
      py::arg("data_dir") = "");
  m.def(
      "registry_check",
      [](const std::string& id, const std::string& dir) {
        return report_json(Registry::load(data_dir(dir)).check(id)).dump();
      },
      py::arg("id"), py::arg("data_dir") = "");
  m.def(
      "registry_evaluate",
      [](const std::string& id, const std::string& dir) {
        Registry r = Registry::load(data_dir(dir));
        return r.evaluate(r.get(id)).dump();
      },
      py::arg("id"), py::arg("data_dir") = "");
  m.def(
      "registry_check_all",
      [](const std::string& dir) {
        json out = json::array();
        for (const auto& r : Registry::load(data_dir(dir)).check_all()) out.push_back(report_json(r));
        return out.dump();
      },
      py::arg("data_dir") = "");
}
