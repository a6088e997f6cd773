#include "cylcap/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "cylcap/bounds.hpp"
#include "cylcap/error.hpp"
#include "cylcap/serialize.hpp"

namespace cylcap {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kConfig, "field " + field + ": " + what);
}

void only_keys(const json& obj, const std::string& field, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(field, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(field.empty() ? key : field + "." + key, "unknown field");
    }
  }
}

std::string join(const std::string& field, const char* key) { return field.empty() ? key : field + "." + key; }

double number(const json& obj, const std::string& field, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj[key];
  if (!v.is_number()) fail(join(field, key), "expected a number");
  return v.get<double>();
}

double required_number(const json& obj, const std::string& field, const char* key) {
  if (!obj.contains(key)) fail(join(field, key), "missing");
  return number(obj, field, key, 0.0);
}

int integer(const json& obj, const std::string& field, const char* key, int fallback, int min) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj[key];
  if (!v.is_number_integer()) fail(join(field, key), "expected an integer");
  const auto x = v.get<long long>();
  if (x < min || x > 1'000'000'000) fail(join(field, key), "must be at least " + std::to_string(min));
  return static_cast<int>(x);
}

std::string text(const json& obj, const std::string& field, const char* key, std::string fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj[key];
  if (!v.is_string()) fail(join(field, key), "expected a string");
  return v.get<std::string>();
}

bool flag(const json& obj, const std::string& field, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj[key];
  if (!v.is_boolean()) fail(join(field, key), "expected true or false");
  return v.get<bool>();
}

std::uint64_t seed_of(const json& obj, const std::string& field) {
  if (!obj.contains("seed")) return 0;
  const json& v = obj["seed"];
  if (!v.is_number_unsigned()) fail(field + ".seed", "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string read_file(const std::string& path, const std::string& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(field, "cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

json parse_text(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // locate the failing byte as line:column
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n'));
    const std::size_t last_nl = text.rfind('\n', at == 0 ? 0 : at - 1);
    const std::size_t column = last_nl == std::string_view::npos ? at + 1 : at - last_nl;
    throw Error(ErrorKind::kConfig, source + " line " + std::to_string(line) + ", column " + std::to_string(column) +
                                        ": malformed JSON");
  }
}

CylinderConfig parse_cylinder(const json& doc) {
  const std::string f = "cylinder";
  if (!doc.contains("cylinder")) fail(f, "missing");
  const json& c = doc["cylinder"];
  only_keys(c, f, {"curvature", "length", "band"});
  CylinderConfig out;
  out.length = required_number(c, f, "length");

  if (!c.contains("band")) fail(f + ".band", "missing");
  const json& band = c["band"];
  if (!band.is_array() || band.size() != 2 || !band[0].is_number() || !band[1].is_number()) {
    fail(f + ".band", "expected [a, b]");
  }
  out.a = band[0].get<double>();
  out.b = band[1].get<double>();

  if (!c.contains("curvature")) fail(f + ".curvature", "missing");
  const json& k = c["curvature"];
  const std::string fk = f + ".curvature";
  only_keys(k, fk, {"kind", "k", "profile"});
  out.kind = text(k, fk, "kind", "");
  if (out.kind == "hyperbolic" || out.kind == "spherical") {
    out.k = required_number(k, fk, "k");
  } else if (out.kind == "flat") {
    out.k = 0.0;
  } else if (out.kind == "variable") {
    if (!k.contains("profile")) fail(fk + ".profile", "missing");
    const json& p = k["profile"];
    if (!p.is_object()) fail(fk + ".profile", "expected an object");
    out.family = text(p, fk + ".profile", "family", "");
    for (const auto& [key, value] : p.items()) {
      if (key == "family") continue;
      if (!value.is_number()) fail(fk + ".profile." + key, "expected a number");
      out.params[key] = value.get<double>();
    }
  } else {
    fail(fk + ".kind", "expected hyperbolic, flat, spherical or variable");
  }
  return out;
}

AnnulusConfig parse_annulus(const json& doc, const std::string& base_dir) {
  const std::string f = "annulus";
  AnnulusConfig out;
  if (!doc.contains("annulus")) return out;
  const json& a = doc["annulus"];
  only_keys(a, f, {"fixture", "random", "extremal"});
  if (a.size() != 1) fail(f, "expected exactly one of fixture, random, extremal");
  if (a.contains("fixture")) {
    out.source = AnnulusConfig::Source::kFixture;
    const json& fx = a["fixture"];
    if (fx.is_string()) {
      std::filesystem::path path(fx.get<std::string>());
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      out.fixture = parse_text(read_file(path.string(), f + ".fixture"), path.string());
    } else {
      out.fixture = fx;
    }
    only_keys(out.fixture, f + ".fixture", {"a1", "a2", "breakpoints"});
  } else if (a.contains("random")) {
    out.source = AnnulusConfig::Source::kRandom;
    const json& r = a["random"];
    only_keys(r, f + ".random", {"seed", "roughness"});
    out.seed = seed_of(r, f + ".random");
    out.roughness = number(r, f + ".random", "roughness", 0.1);
    if (!(out.roughness >= 0.0)) fail(f + ".random.roughness", "must be non-negative");
  } else {
    out.source = AnnulusConfig::Source::kExtremal;
    const json& e = a["extremal"];
    only_keys(e, f + ".extremal", {"area"});
    out.area = required_number(e, f + ".extremal", "area");
    if (!(out.area > 0.0)) fail(f + ".extremal.area", "must be positive");
  }
  return out;
}

std::vector<double> sweep_values(const json& v, const std::string& field) {
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(field + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
  } else if (v.is_object()) {
    only_keys(v, field, {"from", "to", "count"});
    const double from = required_number(v, field, "from");
    const double to = required_number(v, field, "to");
    const int count = integer(v, field, "count", 2, 2);
    for (int i = 0; i < count; ++i) out.push_back(from + (to - from) * i / (count - 1));
  } else {
    fail(field, "expected an array or {from, to, count}");
  }
  if (out.empty()) fail(field, "needs at least one value");
  return out;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text_in, const std::string& base_dir) {
  const json doc = parse_text(text_in, "config");
  only_keys(doc, "", {"task", "cylinder", "annulus", "quadrature", "grid", "solver", "sections", "sweep", "output"});
  ScenarioConfig cfg;
  cfg.task = text(doc, "", "task", "");
  if (!cfg.task.empty()) {
    static const std::vector<std::string> tasks{"bounds", "symmetrize", "oracle", "verify", "sweep"};
    if (std::find(tasks.begin(), tasks.end(), cfg.task) == tasks.end()) {
      fail("task", "expected bounds, symmetrize, oracle, verify or sweep");
    }
  }
  cfg.cylinder = parse_cylinder(doc);
  cfg.annulus = parse_annulus(doc, base_dir);

  if (doc.contains("quadrature")) {
    const json& q = doc["quadrature"];
    only_keys(q, "quadrature", {"points", "rel_tol", "abs_tol", "max_depth"});
    cfg.quadrature.points = integer(q, "quadrature", "points", cfg.quadrature.points, 1);
    cfg.quadrature.rel_tol = number(q, "quadrature", "rel_tol", cfg.quadrature.rel_tol);
    cfg.quadrature.abs_tol = number(q, "quadrature", "abs_tol", cfg.quadrature.abs_tol);
    cfg.quadrature.max_depth = integer(q, "quadrature", "max_depth", cfg.quadrature.max_depth, 0);
    if (!(cfg.quadrature.rel_tol > 0.0)) fail("quadrature.rel_tol", "must be positive");
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    only_keys(g, "grid", {"nt", "nu", "levels"});
    cfg.grid.nt = integer(g, "grid", "nt", cfg.grid.nt, 8);
    cfg.grid.nu = integer(g, "grid", "nu", cfg.grid.nu, 8);
    cfg.grid.refinement_levels = integer(g, "grid", "levels", cfg.grid.refinement_levels, 2);
  }
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    only_keys(s, "solver", {"residual_tol", "iteration_factor"});
    cfg.solver.residual_tol = number(s, "solver", "residual_tol", cfg.solver.residual_tol);
    cfg.solver.iteration_factor = number(s, "solver", "iteration_factor", cfg.solver.iteration_factor);
  }
  cfg.sections = integer(doc, "", "sections", cfg.sections, 2);
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    only_keys(s, "sweep", {"parameter", "values", "oracle"});
    SweepConfig sweep;
    sweep.parameter = text(s, "sweep", "parameter", "");
    if (sweep.parameter != "area" && sweep.parameter != "roughness" && sweep.parameter != "pinching") {
      fail("sweep.parameter", "expected area, roughness or pinching");
    }
    if (!s.contains("values")) fail("sweep.values", "missing");
    sweep.values = sweep_values(s["values"], "sweep.values");
    sweep.oracle = flag(s, "sweep", "oracle", false);
    cfg.sweep = std::move(sweep);
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    only_keys(o, "output", {"path", "format", "field", "samples", "sections"});
    cfg.output.path = text(o, "output", "path", "");
    cfg.output.format = text(o, "output", "format", "");
    if (!cfg.output.format.empty() && cfg.output.format != "json" && cfg.output.format != "csv") fail("output.format", "expected json or csv");
    cfg.output.field_path = text(o, "output", "field", "");
    cfg.output.samples = integer(o, "output", "samples", 0, 0);
    cfg.output.sections = flag(o, "output", "sections", false);
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  const std::string base = std::filesystem::path(path).parent_path().string();
  return parse_scenario(read_file(path, "--config"), base.empty() ? "." : base);
}

Cylinder build_cylinder(const ScenarioConfig& cfg) {
  const CylinderConfig& c = cfg.cylinder;
  CurvatureModel model = CurvatureModel::flat();
  if (c.kind == "hyperbolic") {
    model = CurvatureModel::hyperbolic(c.k);
  } else if (c.kind == "spherical") {
    model = CurvatureModel::spherical(c.k);
  } else if (c.kind == "variable") {
    model = CurvatureModel::variable(make_profile(c.family, c.params, c.length));
  }
  return Cylinder(c.length, c.a, c.b, std::move(model), cfg.quadrature);
}

TypeAAnnulus build_annulus(const ScenarioConfig& cfg, const Cylinder& c) {
  const AnnulusConfig& a = cfg.annulus;
  switch (a.source) {
    case AnnulusConfig::Source::kFixture: {
      TypeAAnnulus ann = annulus_from_json(a.fixture, c.length());
      ann.validate(c);
      return ann;
    }
    case AnnulusConfig::Source::kExtremal: {
      TypeAAnnulus ann = extremal_annulus(c, a.area);
      ann.validate(c);
      return ann;
    }
    case AnnulusConfig::Source::kRandom: break;
  }
  return random_annulus(c, a.seed, a.roughness);
}

}  // namespace cylcap
