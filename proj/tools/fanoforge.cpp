#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fanoforge/cone.hpp"
#include "fanoforge/errors.hpp"
#include "fanoforge/fan.hpp"
#include "fanoforge/ledger.hpp"
#include "fanoforge/polytope.hpp"
#include "fanoforge/registry.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fanoforge;

namespace {

enum Exit { kPass = 0, kMismatch = 1, kMalformed = 2, kPrecondition = 3 };

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string set_json(const RayIndexSet& s) { return json(s).dump(); }

void print_report(const CheckReport& r, bool verbose) {
  std::cout << (r.passed() ? "PASS " : "FAIL ") << r.id << " (" << r.items.size() - r.mismatches() << "/"
            << r.items.size() << ")\n";
  for (const auto& i : r.items)
    if (verbose || !i.ok)
      std::cout << "  " << (i.ok ? "ok       " : "MISMATCH ") << i.key << ": expected " << i.expected.dump()
                << ", computed " << i.computed.dump() << "\n";
}

// Runs a command body and maps library exceptions to exit codes.
int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cone, toric and blow-up invariant calculations for Fano 4-folds"};
  app.require_subcommand(1);
  int rc = kPass;

  // registry
  auto* registry = app.add_subcommand("registry", "List and check registered scenarios");
  registry->require_subcommand(1);
  auto* reg_list = registry->add_subcommand("list", "List scenarios with their anchors");
  bool list_json = false;
  reg_list->add_flag("--json", list_json, "Print JSON instead of text");
  reg_list->callback([&] {
    rc = guarded([&] {
      Registry reg = Registry::load_default();
      json out = json::array();
      for (const auto& s : reg.scenarios()) {
        if (list_json)
          out.push_back({{"id", s.id}, {"kind", to_string(s.kind)}, {"title", s.title}, {"anchor", s.anchor}});
        else
          std::cout << s.id << "\t" << to_string(s.kind) << "\t" << s.anchor << "\n";
      }
      if (list_json) std::cout << out.dump(2) << "\n";
      return kPass;
    });
  });
  auto* reg_check = registry->add_subcommand("check", "Run engines and diff against expectations");
  std::string check_id;
  bool check_all = false, verbose = false;
  reg_check->add_option("id", check_id, "Scenario id");
  reg_check->add_flag("--all", check_all, "Check every non-note scenario");
  reg_check->add_flag("-v,--verbose", verbose, "Print every compared key");
  reg_check->callback([&] {
    rc = guarded([&] {
      if (check_all == !check_id.empty()) throw InputError("give either a scenario id or --all");
      Registry reg = Registry::load_default();
      std::vector<CheckReport> reports = check_all ? reg.check_all() : std::vector<CheckReport>{reg.check(check_id)};
      size_t failed = 0;
      for (const auto& r : reports) {
        print_report(r, verbose);
        if (!r.passed()) ++failed;
      }
      if (check_all) std::cout << reports.size() - failed << "/" << reports.size() << " scenarios pass\n";
      return failed ? kMismatch : kPass;
    });
  });
  auto* reg_show = registry->add_subcommand("show", "Print a scenario and its computed invariants");
  std::string show_id;
  reg_show->add_option("id", show_id, "Scenario id")->required();
  reg_show->callback([&] {
    rc = guarded([&] {
      Registry reg = Registry::load_default();
      const Scenario& s = reg.get(show_id);
      json out = scenario_to_json(s);
      if (s.kind != ScenarioKind::Note) out["computed"] = reg.evaluate(s);
      std::cout << out.dump(2) << "\n";
      return kPass;
    });
  });

  // table
  auto* table = app.add_subcommand("table", "Invariants of a plane chain");
  std::string base = "p4", format = "md";
  int max_s = -1;
  table->add_option("--base", base, "p4, quadric or cubic")->required();
  table->add_option("--max-s", max_s, "Last row (default: the reference extent)");
  table->add_option("--format", format, "md, csv or json");
  table->callback([&] {
    rc = guarded([&] {
      Base b = parse_base(base);
      TableFormat f = parse_table_format(format);
      std::cout << render_table(generate_table(b, max_s < 0 ? table_extent(b) : max_s), f);
      return kPass;
    });
  });

  // emit
  auto* emit = app.add_subcommand("emit", "Write or verify the golden artifacts");
  std::string emit_format = "md", out_dir = "golden";
  int emit_max_s = -1;
  bool emit_check = false;
  emit->add_option("--format", emit_format, "md, csv or json");
  emit->add_option("--out", out_dir, "Golden root directory");
  emit->add_option("--max-s", emit_max_s, "Override the last row of every table");
  emit->add_flag("--check", emit_check, "Compare with the files on disk instead of writing");
  emit->callback([&] {
    rc = guarded([&] {
      Registry reg = Registry::load_default();
      auto files = emit_tables(reg, parse_table_format(emit_format),
                               emit_max_s < 0 ? std::nullopt : std::optional<int>(emit_max_s));
      int status = kPass;
      for (const auto& [rel, content] : files) {
        fs::path p = fs::path(out_dir) / rel;
        if (emit_check) {
          std::ifstream in(p, std::ios::binary);
          std::stringstream buf;
          if (in.is_open()) buf << in.rdbuf();
          const bool same = in.is_open() && buf.str() == content;
          std::cout << (same ? "same    " : "DIFFERS ") << p.string() << "\n";
          if (!same) status = kMismatch;
        } else {
          fs::create_directories(p.parent_path());
          std::ofstream(p, std::ios::binary) << content;
          std::cout << "wrote " << p.string() << "\n";
        }
      }
      return status;
    });
  });

  // toric
  auto* toric = app.add_subcommand("toric", "Smooth complete fans");
  toric->require_subcommand(1);
  std::string fan_file;
  auto* toric_info = toric->add_subcommand("info", "Validity, primitive relations, Fano test and invariants");
  toric_info->add_option("fan", fan_file, "Fan JSON {dim, rays, cones}")->required();
  toric_info->callback([&] {
    rc = guarded([&] {
      std::cout << fan_info(fan_from_json(read_json(fan_file))).dump(2) << "\n";
      return kPass;
    });
  });
  std::string construction_file;
  auto* toric_build = toric->add_subcommand("build", "Build a fan from a construction document");
  toric_build->add_option("construction", construction_file, "{base, steps}")->required();
  toric_build->callback([&] {
    rc = guarded([&] {
      json doc = read_json(construction_file);
      std::cout << fan_to_json(build_fan(doc, default_data_dir())).dump(2) << "\n";
      return kPass;
    });
  });
  RayIndexSet star_cone;
  auto* toric_star = toric->add_subcommand("star", "Star subdivide a cone given by ray indices");
  toric_star->add_option("fan", fan_file, "Fan JSON")->required();
  toric_star->add_option("--cone", star_cone, "Ray indices")->required();
  toric_star->callback([&] {
    rc = guarded([&] {
      std::sort(star_cone.begin(), star_cone.end());
      std::cout << fan_to_json(star_subdivide(fan_from_json(read_json(fan_file)), star_cone)).dump(2) << "\n";
      return kPass;
    });
  });
  auto* toric_flip = toric->add_subcommand("flip-lines", "Flip every exceptional line of a 4-dimensional fan");
  toric_flip->add_option("fan", fan_file, "Fan JSON")->required();
  toric_flip->callback([&] {
    rc = guarded([&] {
      Fan f = fan_from_json(read_json(fan_file));
      for (const auto& c : exceptional_line_circuits(f)) {
        std::cerr << "flip " << set_json(c.plus) << " <-> " << set_json(c.minus) << "\n";
        f = flip(f, c);
      }
      std::cout << fan_to_json(f).dump(2) << "\n";
      return kPass;
    });
  });

  // cone
  auto* cone = app.add_subcommand("cone", "Exact rational polyhedral cones");
  cone->require_subcommand(1);
  std::string cone_file;
  auto* cone_canon = cone->add_subcommand("canonical", "Canonical form of a cone");
  cone_canon->add_option("cone", cone_file, "Cone JSON {dim, rays, lineality?}")->required();
  cone_canon->callback([&] {
    rc = guarded([&] {
      std::cout << cone_to_json(cone_from_json(read_json(cone_file))).dump(2) << "\n";
      return kPass;
    });
  });
  auto* cone_dual = cone->add_subcommand("dual", "Dual cone");
  cone_dual->add_option("cone", cone_file, "Cone JSON")->required();
  cone_dual->callback([&] {
    rc = guarded([&] {
      std::cout << cone_to_json(dual(cone_from_json(read_json(cone_file)))).dump(2) << "\n";
      return kPass;
    });
  });
  int face_dim = -1;
  auto* cone_faces = cone->add_subcommand("faces", "Faces of a pointed cone, by dimension");
  cone_faces->add_option("cone", cone_file, "Cone JSON")->required();
  cone_faces->add_option("--dim", face_dim, "Only faces of this dimension");
  cone_faces->callback([&] {
    rc = guarded([&] {
      Cone c = cone_from_json(read_json(cone_file));
      auto fs = face_dim < 0 ? faces(c) : faces(c, static_cast<size_t>(face_dim));
      json out = json::array();
      for (const auto& f : fs) {
        json rays = json::array();
        for (const auto& r : f.rays()) rays.push_back(vector_to_json(r));
        out.push_back({{"dim", f.dim}, {"rays", rays}});
      }
      std::cout << out.dump(2) << "\n";
      return kPass;
    });
  });

  // ledger
  auto* ledger = app.add_subcommand("ledger", "Blow-up invariant ledger");
  ledger->require_subcommand(1);
  std::string chain_file;
  bool chain_json = false;
  auto* ledger_run = ledger->add_subcommand("run", "Run a chain document");
  ledger_run->add_option("chain", chain_file, "{base, centers, order, points, curves}")->required();
  ledger_run->add_flag("--json", chain_json, "Print the final state as JSON");
  ledger_run->callback([&] {
    rc = guarded([&] {
      FourfoldState s = run_chain(read_json(chain_file));
      if (chain_json)
        std::cout << state_to_json(s).dump(2) << "\n";
      else
        std::cout << invariant_line(s) << "\n";
      return kPass;
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kMalformed;
  }
  return rc;
}
