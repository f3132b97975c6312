#include "qcolloid/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qcolloid/acceptance.hpp"
#include "qcolloid/constants.hpp"
#include "qcolloid/energy.hpp"
#include "qcolloid/errors.hpp"
#include "qcolloid/mesh.hpp"
#include "qcolloid/orient.hpp"
#include "qcolloid/profile.hpp"
#include "qcolloid/runconfig.hpp"
#include "qcolloid/surfaces.hpp"
#include "qcolloid/tangentfield.hpp"

namespace qcolloid::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const double kUnset = std::numeric_limits<double>::quiet_NaN();

bool is_set(double x) { return !std::isnan(x); }

// %.12g keeps CSV content identical across reruns and carries more digits
// than any tolerance in the test suite.
std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);
  return s;
}

[[noreturn]] void bad_value(const ConfigEntry& e, const char* want) {
  throw InputError("config line " + std::to_string(e.line) + ": expected " +
                   want + " for '" + e.key + "', got '" + e.value + "'");
}

double entry_num(const ConfigEntry& e) {
  std::string v = strip_quotes(e.value);
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) bad_value(e, "a number");
  return x;
}

int entry_int(const ConfigEntry& e) {
  double x = entry_num(e);
  if (x != std::floor(x) || std::abs(x) > 1e9) bad_value(e, "an integer");
  return static_cast<int>(x);
}

bool entry_bool(const ConfigEntry& e) {
  std::string v = strip_quotes(e.value);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value(e, "true or false");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double num_or_throw(const std::string& s, const char* what) {
  char* end = nullptr;
  double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw InputError(std::string(what) + ": '" + s + "' is not a number");
  return x;
}

Eigen::Vector3d parse_dir(const std::string& s) {
  std::vector<std::string> parts = split(s, ',');
  if (parts.size() != 3)
    throw InputError("direction must be 'x,y,z', got '" + s + "'");
  Eigen::Vector3d n(num_or_throw(parts[0], "direction"),
                    num_or_throw(parts[1], "direction"),
                    num_or_throw(parts[2], "direction"));
  if (n.norm() < 1e-12) throw InputError("direction must be nonzero");
  return n.normalized();
}

struct GridSpec {
  std::string param;
  double lo = 0.0, hi = 0.0;
  int count = 0;
};

GridSpec parse_grid(const std::string& s) {
  std::vector<std::string> parts = split(s, ':');
  if (parts.size() != 4)
    throw InputError("grid must be 'param:lo:hi:count', got '" + s + "'");
  GridSpec g;
  g.param = parts[0];
  g.lo = num_or_throw(parts[1], "grid lower bound");
  g.hi = num_or_throw(parts[2], "grid upper bound");
  double c = num_or_throw(parts[3], "grid count");
  if (c != std::floor(c) || c < 2.0 || c > 1e7)
    throw InputError("grid count must be an integer >= 2");
  g.count = static_cast<int>(c);
  return g;
}

// QCOLLOID_OUTPUT_DIR supplies the directory for relative output paths;
// absolute paths are taken verbatim.
fs::path resolve_output(const std::string& name) {
  fs::path p(name);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("QCOLLOID_OUTPUT_DIR"); dir && *dir)
    return fs::path(dir) / p;
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.flush();
  if (!f) throw InputError("cannot write " + path.string());
}

void deliver(const std::string& text, const std::string& out_flag,
             std::ostream& out) {
  if (out_flag.empty())
    out << text;
  else
    write_text(resolve_output(out_flag), text);
}

// Every section of a config file is validated, not only the active one, so
// a typo never hides in a section the current invocation ignores.
void check_sections(const RunConfig& cfg) {
  for (const ConfigSection& sec : cfg.sections) {
    if (sec.name == "energy")
      require_keys(sec, {"shape", "mesh", "R", "L", "r", "eps", "n", "engine",
                         "resolution", "out"});
    else if (sec.name == "scan")
      require_keys(sec, {"shape", "R", "L", "r", "eps", "grid", "out"});
    else if (sec.name == "optimize")
      require_keys(sec, {"shape", "R", "L", "r", "eps", "census", "seeds",
                         "starts", "max_iters", "resolution", "tolerance",
                         "out"});
    else if (sec.name == "defects")
      require_keys(sec, {"shape", "R", "L", "r", "eps", "n", "delta",
                         "resolution", "out", "field_csv"});
    else if (sec.name == "profile")
      require_keys(sec, {"phi0", "H", "count", "out"});
    else if (sec.name == "approx")
      require_keys(sec, {"R", "eps", "delta", "out"});
    else if (sec.name == "figures")
      require_keys(sec, {"id", "dir"});
    else
      throw InputError("config line " + std::to_string(sec.line) +
                       ": unknown section [" + sec.name + "]");
  }
}

// Fills values the command line left unset from one config section.
struct SectionApply {
  const ConfigSection* sec = nullptr;

  const ConfigEntry* entry(const CLI::Option* opt, const char* key) const {
    if (!sec || (opt && opt->count() > 0)) return nullptr;
    return sec->find(key);
  }
  void str(const CLI::Option* opt, const char* key, std::string* dst) const {
    if (const ConfigEntry* e = entry(opt, key)) *dst = strip_quotes(e->value);
  }
  void num(const CLI::Option* opt, const char* key, double* dst) const {
    if (const ConfigEntry* e = entry(opt, key)) *dst = entry_num(*e);
  }
  void integer(const CLI::Option* opt, const char* key, int* dst) const {
    if (const ConfigEntry* e = entry(opt, key)) *dst = entry_int(*e);
  }
  void boolean(const CLI::Option* opt, const char* key, bool* dst) const {
    if (const ConfigEntry* e = entry(opt, key)) *dst = entry_bool(*e);
  }
  void nums(const CLI::Option* opt, const char* key,
            std::vector<double>* dst) const {
    if (const ConfigEntry* e = entry(opt, key)) {
      dst->clear();
      for (const std::string& part : split(strip_quotes(e->value), ','))
        dst->push_back(num_or_throw(part, key));
    }
  }
};

struct ShapeOpts {
  std::string shape, mesh_path;
  double R = kUnset, L = kUnset, r = kUnset, eps = kUnset;
  CLI::Option *oshape = nullptr, *omesh = nullptr, *oR = nullptr,
              *oL = nullptr, *or_ = nullptr, *oeps = nullptr;

  void attach(CLI::App* cmd, bool with_mesh) {
    oshape = cmd->add_option(
        "--shape", shape, "sphere | spherocylinder | torus | cube | rounded-cube");
    oR = cmd->add_option("--R", R, "radius, half-side, or ring radius");
    oL = cmd->add_option("--L", L, "cylinder length (spherocylinder)");
    or_ = cmd->add_option("--r", r, "tube radius (torus)");
    oeps = cmd->add_option("--eps", eps, "edge radius (rounded-cube)");
    if (with_mesh)
      omesh = cmd->add_option(
          "--mesh", mesh_path,
          "closed triangle mesh file (OFF or OBJ) instead of --shape");
  }

  void merge(const SectionApply& ap) {
    ap.str(oshape, "shape", &shape);
    if (omesh) ap.str(omesh, "mesh", &mesh_path);
    ap.num(oR, "R", &R);
    ap.num(oL, "L", &L);
    ap.num(or_, "r", &r);
    ap.num(oeps, "eps", &eps);
  }

  bool has_mesh() const { return !mesh_path.empty(); }

  AnalyticShape build() const {
    if (shape.empty())
      throw InputError("no shape given (--shape or config key 'shape')");
    auto need = [&](double v, const char* flag) {
      if (!is_set(v)) throw InputError(shape + " needs --" + flag);
      return v;
    };
    auto forbid = [&](double v, const char* flag) {
      if (is_set(v))
        throw InputError("--" + std::string(flag) + " does not apply to " +
                         shape);
    };
    AnalyticShape result;
    if (shape == "sphere") {
      forbid(L, "L");
      forbid(r, "r");
      forbid(eps, "eps");
      result = Sphere{need(R, "R")};
    } else if (shape == "spherocylinder") {
      forbid(r, "r");
      forbid(eps, "eps");
      result = Spherocylinder{need(R, "R"), need(L, "L")};
    } else if (shape == "torus") {
      forbid(L, "L");
      forbid(eps, "eps");
      result = Torus{need(R, "R"), need(r, "r")};
    } else if (shape == "cube") {
      forbid(L, "L");
      forbid(r, "r");
      forbid(eps, "eps");
      result = Cube{need(R, "R")};
    } else if (shape == "rounded-cube") {
      forbid(L, "L");
      forbid(r, "r");
      result = RoundedCube{need(R, "R"), need(eps, "eps")};
    } else {
      throw InputError(
          "unknown shape '" + shape +
          "' (sphere, spherocylinder, torus, cube, rounded-cube)");
    }
    validate_shape(result);
    return result;
  }
};

std::string shape_desc(const AnalyticShape& shape) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>)
          return "sphere R=" + fmt_g(s.R);
        else if constexpr (std::is_same_v<T, Spherocylinder>)
          return "spherocylinder R=" + fmt_g(s.R) + " L=" + fmt_g(s.L);
        else if constexpr (std::is_same_v<T, Torus>)
          return "torus R=" + fmt_g(s.R) + " r=" + fmt_g(s.r);
        else if constexpr (std::is_same_v<T, Cube>)
          return "cube R=" + fmt_g(s.R);
        else
          return "rounded-cube R=" + fmt_g(s.R) + " eps=" + fmt_g(s.eps);
      },
      shape);
}

const char kUnitsNote[] =
    "# energies are dimensionless: anchoring energy divided by the alignment "
    "length eta\n";

// Sweep abscissae for the capsule dataset, denser where the curve steepens
// toward the equatorial direction.
constexpr double kCapsuleAbscissae[] = {
    0.99, 0.975, 0.95, 0.925, 0.9, 0.875, 0.85, 0.8,
    0.75, 0.7,   0.65, 0.6,   0.55, 0.5,  0.45, 0.4,
    0.35, 0.3,   0.25, 0.2,   0.15, 0.1,  0.05};

std::string capsule_csv() {
  std::vector<double> xs;
  for (double a : kCapsuleAbscissae) xs.push_back(-a);
  xs.push_back(0.0);
  for (double a : kCapsuleAbscissae) xs.push_back(a);
  std::sort(xs.begin(), xs.end());
  AnalyticShape shape = Spherocylinder{1.0, 2.0};
  std::ostringstream csv;
  csv << "# orientation sweep of the capsule (spherocylinder R=1 L=2)\n"
      << kUnitsNote << "n1,E0\n";
  for (double x : xs) {
    Eigen::Vector3d n(x, 0.0, std::sqrt(std::max(0.0, 1.0 - x * x)));
    csv << fmt_g(x) << ',' << fmt_g(e0(shape, n, Engine::Closed).value)
        << '\n';
  }
  return csv.str();
}

std::string torus_csv() {
  std::ostringstream csv;
  csv << "# orientation sweep of the torus R=2 r=1 against the axial "
         "component n3\n"
      << kUnitsNote << "n3,E0\n";
  for (int k = 0; k <= 40; ++k) {
    double z = k / 20.0 - 1.0;
    csv << fmt_g(z) << ',' << fmt_g(e0_torus(2.0, 1.0, z).value) << '\n';
  }
  return csv.str();
}

std::string cube_heatmap_csv() {
  std::ostringstream csv;
  csv << "# E0 of the cube with half-side 1 over the unit disk of (n1, n2); "
         "n3 = sqrt(1 - n1^2 - n2^2)\n"
      << kUnitsNote << "n1,n2,E0\n";
  for (int i = 0; i <= 64; ++i)
    for (int j = 0; j <= 64; ++j) {
      double p = i / 32.0 - 1.0;
      double q = j / 32.0 - 1.0;
      double rest = 1.0 - p * p - q * q;
      if (rest < 0.0) continue;
      Eigen::Vector3d n(p, q, std::sqrt(rest));
      csv << fmt_g(p) << ',' << fmt_g(q) << ','
          << fmt_g(e0_cube(2.0, n).value) << '\n';
    }
  return csv.str();
}

}  // namespace

std::vector<std::string> emit_figure_data(const std::string& id,
                                          const std::string& dir) {
  fs::path base = dir.empty() ? fs::path(".") : fs::path(dir);
  fs::create_directories(base);
  std::string content;
  if (id == "capsule")
    content = capsule_csv();
  else if (id == "torus")
    content = torus_csv();
  else if (id == "cube-heatmap")
    content = cube_heatmap_csv();
  else
    throw InputError("unknown figure id '" + id +
                     "' (capsule, torus, cube-heatmap)");
  fs::path path = base / (id + ".csv");
  write_text(path, content);
  return {path.string()};
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app(
      "Tangential-anchoring surface energies, optimal particle orientations, "
      "and boundary director fields for colloids in a nematic far field",
      "qcolloid");
  app.require_subcommand(1);

  double tol_override = kUnset;
  CLI::Option* otol = app.add_option(
      "--tolerance", tol_override,
      "override the iteration tolerance of subcommands that have one");

  int exit_code = 0;

  auto load_cfg = [](const std::string& path, const char* section,
                     RunConfig* store) {
    SectionApply ap;
    if (!path.empty()) {
      *store = RunConfig::parse_file(path);
      check_sections(*store);
      ap.sec = store->find(section);
    }
    return ap;
  };

  // ---- energy ----
  struct {
    ShapeOpts sh;
    std::string n_str, engine = "auto", config, out_path;
    int resolution = 0;
    CLI::Option *on = nullptr, *oengine = nullptr, *ores = nullptr,
                *oout = nullptr;
  } en;
  CLI::App* cmd_energy = app.add_subcommand(
      "energy",
      "anchoring energy E0 for one far-field direction; prints JSON "
      "{value, engine, est_error} with value dimensionless (divided by the "
      "alignment length eta)");
  cmd_energy->fallthrough();
  en.sh.attach(cmd_energy, true);
  en.on = cmd_energy->add_option("--n", en.n_str,
                                 "far-field direction x,y,z (normalized)");
  en.oengine =
      cmd_energy
          ->add_option("--engine", en.engine,
                       "auto | closed | revolution | mesh")
          ->check(CLI::IsMember({"auto", "closed", "revolution", "mesh"}));
  en.ores = cmd_energy->add_option(
      "--resolution", en.resolution,
      "quadrature resolution for analytic shapes, 0 = per-engine default");
  cmd_energy->add_option("--config", en.config,
                         "key-value config file, section [energy]");
  en.oout = cmd_energy->add_option(
      "--out", en.out_path,
      "write the JSON here instead of stdout (relative paths land in "
      "QCOLLOID_OUTPUT_DIR when set)");
  cmd_energy->callback([&] {
    RunConfig cfg;
    SectionApply ap = load_cfg(en.config, "energy", &cfg);
    en.sh.merge(ap);
    ap.str(en.on, "n", &en.n_str);
    ap.str(en.oengine, "engine", &en.engine);
    ap.integer(en.ores, "resolution", &en.resolution);
    ap.str(en.oout, "out", &en.out_path);

    if (en.n_str.empty()) throw InputError("energy needs --n x,y,z");
    Eigen::Vector3d n = parse_dir(en.n_str);
    Engine engine = parse_engine(en.engine);

    EnergyValue ev;
    if (en.sh.has_mesh()) {
      if (!en.sh.shape.empty())
        throw InputError("give either --shape or --mesh, not both");
      if (engine != Engine::Auto && engine != Engine::Mesh)
        throw InputError("a mesh input supports only the mesh engine");
      ev = e0_quadrature(sample(load_mesh(en.sh.mesh_path)), n);
    } else {
      ev = e0(en.sh.build(), n, engine, en.resolution);
    }
    ordered_json j;
    j["value"] = ev.value;
    j["engine"] = ev.engine;
    j["est_error"] = ev.est_error;
    deliver(j.dump(2) + "\n", en.out_path, out);
  });

  // ---- scan ----
  struct {
    ShapeOpts sh;
    std::string grid, config, out_path;
    CLI::Option *ogrid = nullptr, *oout = nullptr;
  } sc;
  CLI::App* cmd_scan = app.add_subcommand(
      "scan",
      "sweep E0 over a family of far-field directions; CSV columns "
      "(param1,param2,n1,n2,n3,E0)");
  cmd_scan->fallthrough();
  sc.sh.attach(cmd_scan, false);
  sc.ogrid = cmd_scan->add_option(
      "--grid", sc.grid, "param:lo:hi:count with param in {n1, n3, disk}");
  cmd_scan->add_option("--config", sc.config,
                       "key-value config file, section [scan]");
  sc.oout = cmd_scan->add_option("--out", sc.out_path,
                                 "write the CSV here instead of stdout");
  cmd_scan->callback([&] {
    RunConfig cfg;
    SectionApply ap = load_cfg(sc.config, "scan", &cfg);
    sc.sh.merge(ap);
    ap.str(sc.ogrid, "grid", &sc.grid);
    ap.str(sc.oout, "out", &sc.out_path);
    if (sc.grid.empty()) throw InputError("scan needs --grid param:lo:hi:count");
    GridSpec g = parse_grid(sc.grid);
    AnalyticShape shape = sc.sh.build();
    ScanGrid sg = scan(shape, g.param, g.lo, g.hi, g.count);
    std::ostringstream csv;
    csv << "# E0 sweep; shape: " << shape_desc(shape) << "; grid " << sc.grid
        << "\n"
        << kUnitsNote << "param1,param2,n1,n2,n3,E0\n";
    for (size_t i = 0; i < sg.energy.size(); ++i)
      csv << fmt_g(sg.c1[i]) << ',' << fmt_g(sg.c2[i]) << ','
          << fmt_g(sg.dirs[i].x()) << ',' << fmt_g(sg.dirs[i].y()) << ','
          << fmt_g(sg.dirs[i].z()) << ',' << fmt_g(sg.energy[i]) << '\n';
    deliver(csv.str(), sc.out_path, out);
  });

  // ---- optimize ----
  struct {
    ShapeOpts sh;
    bool census = false;
    int seeds = 2048, starts = 32, max_iters = 500, resolution = 48;
    std::string config, out_path;
    CLI::Option *ocensus = nullptr, *oseeds = nullptr, *ostarts = nullptr,
                *oiters = nullptr, *ores = nullptr, *oout = nullptr;
  } op;
  CLI::App* cmd_opt = app.add_subcommand(
      "optimize",
      "locate optimal orientations (with --census also maxima and saddles); "
      "prints a JSON report sorted by energy");
  cmd_opt->fallthrough();
  op.sh.attach(cmd_opt, false);
  op.ocensus =
      cmd_opt->add_flag("--census", op.census, "also hunt maxima and saddles");
  op.oseeds = cmd_opt->add_option("--seeds", op.seeds, "seed lattice size")
                  ->check(CLI::PositiveNumber);
  op.ostarts =
      cmd_opt->add_option("--starts", op.starts, "descents launched")
          ->check(CLI::PositiveNumber);
  op.oiters =
      cmd_opt->add_option("--max-iters", op.max_iters, "iteration cap")
          ->check(CLI::PositiveNumber);
  op.ores = cmd_opt
                ->add_option("--resolution", op.resolution,
                             "quadrature resolution for reported residuals")
                ->check(CLI::PositiveNumber);
  cmd_opt->add_option("--config", op.config,
                      "key-value config file, section [optimize]");
  op.oout = cmd_opt->add_option("--out", op.out_path,
                                "write the JSON here instead of stdout");
  cmd_opt->callback([&] {
    RunConfig cfg;
    SectionApply ap = load_cfg(op.config, "optimize", &cfg);
    op.sh.merge(ap);
    ap.boolean(op.ocensus, "census", &op.census);
    ap.integer(op.oseeds, "seeds", &op.seeds);
    ap.integer(op.ostarts, "starts", &op.starts);
    ap.integer(op.oiters, "max_iters", &op.max_iters);
    ap.integer(op.ores, "resolution", &op.resolution);
    ap.num(otol, "tolerance", &tol_override);
    ap.str(op.oout, "out", &op.out_path);

    MinimizeOptions mo;
    mo.census = op.census;
    mo.seeds = op.seeds;
    mo.starts = op.starts;
    mo.max_iters = op.max_iters;
    mo.resolution = op.resolution;
    if (is_set(tol_override)) mo.grad_tol = tol_override;
    OrientationReport rep = minimize(op.sh.build(), mo);

    ordered_json j;
    j["tolerance"] = rep.tolerance;
    j["points"] = ordered_json::array();
    for (const CriticalPoint& p : rep.points) {
      ordered_json pt;
      pt["n"] = {p.n.x(), p.n.y(), p.n.z()};
      pt["energy"] = p.energy;
      pt["residual"] = p.residual;
      pt["kind"] = p.kind;
      pt["orbit"] = p.orbit;
      j["points"].push_back(std::move(pt));
    }
    deliver(j.dump(2) + "\n", op.out_path, out);
  });

  // ---- defects ----
  struct {
    ShapeOpts sh;
    std::string n_str, config, out_path, field_csv;
    double delta = kUnset;
    int resolution = 64;
    CLI::Option *on = nullptr, *odelta = nullptr, *ores = nullptr,
                *oout = nullptr, *ofield = nullptr;
  } de;
  CLI::App* cmd_def = app.add_subcommand(
      "defects",
      "construct the tangential boundary director field and report its "
      "point defects; prints JSON");
  cmd_def->fallthrough();
  de.sh.attach(cmd_def, false);
  de.on = cmd_def->add_option("--n", de.n_str, "far-field direction x,y,z");
  de.odelta = cmd_def->add_option(
      "--delta", de.delta,
      "radius of the reshaped neighborhoods around the degenerate set");
  de.ores = cmd_def
                ->add_option("--resolution", de.resolution,
                             "surface quadrature resolution for field_energy")
                ->check(CLI::PositiveNumber);
  cmd_def->add_option("--config", de.config,
                      "key-value config file, section [defects]");
  de.oout = cmd_def->add_option("--out", de.out_path,
                                "write the JSON here instead of stdout");
  de.ofield = cmd_def->add_option(
      "--field-csv", de.field_csv,
      "also dump sampled field vectors as CSV (x1,x2,x3,v1,v2,v3)");
  cmd_def->callback([&] {
    RunConfig cfg;
    SectionApply ap = load_cfg(de.config, "defects", &cfg);
    de.sh.merge(ap);
    ap.str(de.on, "n", &de.n_str);
    ap.num(de.odelta, "delta", &de.delta);
    ap.integer(de.ores, "resolution", &de.resolution);
    ap.str(de.oout, "out", &de.out_path);
    ap.str(de.ofield, "field_csv", &de.field_csv);
    if (de.n_str.empty()) throw InputError("defects needs --n x,y,z");
    if (!is_set(de.delta)) throw InputError("defects needs --delta");
    Eigen::Vector3d n = parse_dir(de.n_str);
    AnalyticShape shape = de.sh.build();

    TangentField field = build_boundary_field(shape, n, de.delta);
    std::vector<Region> regions = degenerate_regions(shape, n, de.delta);
    TangentField bare = vstar_field(n);

    ordered_json j;
    j["regions"] = ordered_json::array();
    for (const Region& region : regions) {
      ordered_json jr;
      jr["loop_degree"] = loop_degree(shape, region.loop, bare);
      int count = 0;
      if (region.kind != "band")
        for (const DefectRecord& d : field.defects)
          if ((d.p - region.center).norm() < 1e-9) ++count;
      jr["n_defects"] = count;
      j["regions"].push_back(std::move(jr));
    }
    j["defects"] = ordered_json::array();
    int total = 0;
    for (const DefectRecord& d : field.defects) {
      ordered_json jd;
      jd["position"] = {d.p.x(), d.p.y(), d.p.z()};
      jd["degree"] = d.degree;
      j["defects"].push_back(std::move(jd));
      total += d.degree;
    }
    j["total_degree"] = total;
    j["euler_characteristic"] = euler_characteristic(shape);
    std::vector<QuadratureSample> samples = sample(shape, de.resolution);
    j["field_energy"] = field_surface_energy(samples, field, n);
    deliver(j.dump(2) + "\n", de.out_path, out);

    if (!de.field_csv.empty()) {
      std::ostringstream csv;
      csv << "# boundary director field samples; shape: " << shape_desc(shape)
          << "; n = " << de.n_str << "; delta = " << fmt_g(de.delta) << "\n"
          << "x1,x2,x3,v1,v2,v3\n";
      for (const QuadratureSample& s : samples) {
        bool at_defect = false;
        for (const DefectRecord& d : field.defects)
          if ((s.x - d.p).norm() < 1e-12) at_defect = true;
        if (at_defect) continue;
        Eigen::Vector3d v = field.eval({s.x, s.nu});
        csv << fmt_g(s.x.x()) << ',' << fmt_g(s.x.y()) << ','
            << fmt_g(s.x.z()) << ',' << fmt_g(v.x()) << ',' << fmt_g(v.y())
            << ',' << fmt_g(v.z()) << '\n';
      }
      write_text(resolve_output(de.field_csv), csv.str());
    }
  });

  // ---- profile ----
  struct {
    double phi0 = kUnset, H = 10.0;
    int count = 201;
    std::string config, out_path;
    CLI::Option *ophi = nullptr, *oH = nullptr, *ocount = nullptr,
                *oout = nullptr;
  } pr;
  CLI::App* cmd_prof = app.add_subcommand(
      "profile",
      "optimal boundary-layer director profile; CSV columns "
      "(r_tilde,phi,n1,n3,energy_density)");
  cmd_prof->fallthrough();
  pr.ophi =
      cmd_prof->add_option("--phi0", pr.phi0, "surface tilt angle in [0, pi)");
  pr.oH = cmd_prof->add_option("--H", pr.H, "rescaled depth of the table");
  pr.ocount = cmd_prof
                  ->add_option("--count", pr.count, "rows, uniform in depth")
                  ->check(CLI::Range(2, 10000000));
  cmd_prof->add_option("--config", pr.config,
                       "key-value config file, section [profile]");
  pr.oout = cmd_prof->add_option("--out", pr.out_path,
                                 "write the CSV here instead of stdout");
  cmd_prof->callback([&] {
    RunConfig cfg;
    SectionApply ap = load_cfg(pr.config, "profile", &cfg);
    ap.num(pr.ophi, "phi0", &pr.phi0);
    ap.num(pr.oH, "H", &pr.H);
    ap.integer(pr.ocount, "count", &pr.count);
    ap.str(pr.oout, "out", &pr.out_path);
    if (!is_set(pr.phi0)) throw InputError("profile needs --phi0");
    if (!(pr.H > 0.0)) throw InputError("depth H must be positive");
    if (pr.count < 2) throw InputError("count must be at least 2");
    std::ostringstream csv;
    csv << "# boundary-layer profile, phi0 = " << fmt_g(pr.phi0)
        << ", depth " << fmt_g(pr.H) << "\n"
        << kUnitsNote << "r_tilde,phi,n1,n3,energy_density\n";
    for (int k = 0; k < pr.count; ++k) {
      double r = pr.H * k / (pr.count - 1);
      double phi = optimal_profile_angle(pr.phi0, r);
      double slope = optimal_profile_slope(pr.phi0, r);
      double s = std::sin(phi);
      csv << fmt_g(r) << ',' << fmt_g(phi) << ',' << fmt_g(s) << ','
          << fmt_g(std::cos(phi)) << ','
          << fmt_g(slope * slope + kSqrt32 * s * s) << '\n';
    }
    deliver(csv.str(), pr.out_path, out);
  });

  // ---- approx ----
  struct {
    double R = 1.0, delta = 0.05;
    std::vector<double> eps = {0.2, 0.1, 0.05};
    std::string config, out_path;
    CLI::Option *oR = nullptr, *oeps = nullptr, *odelta = nullptr,
                *oout = nullptr;
  } axx;
  CLI::App* cmd_approx = app.add_subcommand(
      "approx",
      "orientation stability of the cube under edge rounding; CSV columns "
      "(epsilon,max_min_distance,energy_gap_bound,energy_gap_measured)");
  cmd_approx->fallthrough();
  axx.oR = cmd_approx->add_option("--R", axx.R, "cube half-side")
               ->check(CLI::PositiveNumber);
  axx.oeps = cmd_approx
                 ->add_option("--eps", axx.eps,
                              "rounding radii, strictly decreasing")
                 ->delimiter(',');
  axx.odelta =
      cmd_approx
          ->add_option("--delta", axx.delta,
                       "distance target at the last radius")
          ->check(CLI::PositiveNumber);
  cmd_approx->add_option("--config", axx.config,
                         "key-value config file, section [approx]");
  axx.oout = cmd_approx->add_option("--out", axx.out_path,
                                    "write the CSV here instead of stdout");
  cmd_approx->callback([&] {
    RunConfig cfg;
    SectionApply ap = load_cfg(axx.config, "approx", &cfg);
    ap.num(axx.oR, "R", &axx.R);
    ap.nums(axx.oeps, "eps", &axx.eps);
    ap.num(axx.odelta, "delta", &axx.delta);
    ap.str(axx.oout, "out", &axx.out_path);
    StabilityReport rep = approx_stability(axx.R, axx.eps, axx.delta);
    std::ostringstream csv;
    csv << "# cube orientation stability under edge rounding, half-side "
        << fmt_g(axx.R) << ", distance target " << fmt_g(axx.delta) << "\n"
        << kUnitsNote
        << "epsilon,max_min_distance,energy_gap_bound,energy_gap_measured\n";
    for (const StabilityRow& row : rep.rows)
      csv << fmt_g(row.eps) << ',' << fmt_g(row.max_min_distance) << ','
          << fmt_g(row.energy_gap_bound) << ','
          << fmt_g(row.energy_gap_measured) << '\n';
    deliver(csv.str(), axx.out_path, out);
  });

  // ---- validate ----
  CLI::App* cmd_val = app.add_subcommand(
      "validate", "run the acceptance checks; exit 0 only if every one passes");
  cmd_val->callback([&] {
    std::vector<CheckResult> results = run_acceptance(out);
    int failed = 0;
    for (const CheckResult& res : results)
      if (!res.pass) ++failed;
    out << (results.size() - failed) << "/" << results.size()
        << " checks passed\n";
    if (failed) exit_code = 2;
  });

  // ---- figures ----
  struct {
    std::string id, dir;
  } fg;
  CLI::App* cmd_fig = app.add_subcommand(
      "figures", "write the bundled figure datasets as CSV files");
  cmd_fig->add_option("id", fg.id, "capsule | torus | cube-heatmap (omit for all)")
      ->check(CLI::IsMember({"capsule", "torus", "cube-heatmap"}));
  cmd_fig->add_option("--dir", fg.dir,
                      "output directory (default QCOLLOID_OUTPUT_DIR or '.')");
  cmd_fig->callback([&] {
    std::string dir = fg.dir;
    if (dir.empty()) {
      const char* env = std::getenv("QCOLLOID_OUTPUT_DIR");
      dir = (env && *env) ? env : ".";
    }
    std::vector<std::string> ids =
        fg.id.empty()
            ? std::vector<std::string>{"capsule", "torus", "cube-heatmap"}
            : std::vector<std::string>{fg.id};
    for (const std::string& one : ids)
      for (const std::string& path : emit_figure_data(one, dir))
        out << path << "\n";
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  if (argc > 1) args.assign(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qcolloid::cli
