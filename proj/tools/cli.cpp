#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cylcap/annulus.hpp"
#include "cylcap/profiles.hpp"

namespace cylcap::cli {

namespace {

constexpr double kBracketSlack = 1e-8;

Assertion check(std::string name, double lhs, double rhs, double tolerance) {
  return {std::move(name), lhs, rhs, tolerance, lhs <= rhs + tolerance};
}

BoundReport bounds_for(const Cylinder& c, const TypeAAnnulus& ann, const ScenarioConfig& cfg) {
  if (c.curvature().is_constant()) return type_a_bounds(c, ann, cfg.quadrature, cfg.output.samples);
  BoundReport report;
  report.lower = caps_directional(c, ann, cfg.quadrature);
  const double area_value = area(c, ann, cfg.quadrature);
  report.details["area"] = area_value;
  report.details["area_bound"] = area_lower_bound(c, area_value);
  report.details["extremal_width"] = extremal_width(c, area_value);
  for (int j = 0; j < cfg.output.samples; ++j) {
    const double t = c.length() * j / cfg.output.samples;
    report.samples.push_back(
        {t, 1.0 / c.resistance(t, ann.a1(t), ann.a2(t)), std::numeric_limits<double>::quiet_NaN()});
  }
  return report;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string csv_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// The cylinder of a pinching sweep point: the configured profile family with
// k2 = ratio * k1.
Cylinder pinched_cylinder(const ScenarioConfig& cfg, double ratio) {
  if (cfg.cylinder.kind != "variable") {
    throw Error(ErrorKind::kConfig, "field sweep.parameter: pinching sweeps need a variable cylinder");
  }
  ScenarioConfig point = cfg;
  auto k1 = point.cylinder.params.find("k1");
  const double base = k1 == point.cylinder.params.end() ? 1.0 : k1->second;
  point.cylinder.params["k1"] = base;
  point.cylinder.params["k2"] = ratio * base;
  return build_cylinder(point);
}

SweepRow sweep_point(const ScenarioConfig& cfg, int index, double value) {
  SweepRow row;
  row.index = index;
  row.value = value;
  const std::string& parameter = cfg.sweep->parameter;
  std::optional<Cylinder> cylinder;
  if (parameter == "pinching") {
    cylinder.emplace(pinched_cylinder(cfg, value));
  } else {
    cylinder.emplace(build_cylinder(cfg));
  }
  const Cylinder& c = *cylinder;
  ScenarioConfig point = cfg;
  if (parameter == "area") {
    point.annulus.source = AnnulusConfig::Source::kExtremal;
    point.annulus.area = value;
  } else if (parameter == "roughness") {
    point.annulus.source = AnnulusConfig::Source::kRandom;
    point.annulus.roughness = value;
  }
  const TypeAAnnulus ann = build_annulus(point, c);
  const double area_value = area(c, ann, cfg.quadrature);
  row.area = area_value;
  row.area_bound = area_lower_bound(c, area_value);
  const BoundReport bounds = bounds_for(c, ann, point);
  row.lower = bounds.lower;
  row.upper = bounds.upper;
  if (parameter == "pinching") {
    const ComparisonResult cmp =
        step2_variable_compare(c, step1_merge_subsections(c, sample_sections(c, ann, cfg.sections)));
    row.margin = *std::min_element(cmp.margins.begin(), cmp.margins.end());
  }
  if (cfg.sweep->oracle) {
    const CapacityEstimate est = solve_capacity(c, ann, cfg.grid, cfg.solver);
    row.oracle = est.value;
    row.oracle_error = est.error_bound;
  }
  return row;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kConfig, "cannot write '" + path + "'");
  file << text;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const int nt = std::stoi(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(text);
    const std::string rest = text.substr(comma + 1);
    const int nu = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    if (nt < 8 || nu < 8) throw std::invalid_argument(text);
    return {nt, nu};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::kConfig, "--grid expects nt,nu with both counts at least 8, got '" + text + "'");
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kInvalidInput: return kUsage;
    case ErrorKind::kDomain:
    case ErrorKind::kSingularDomain:
    case ErrorKind::kInvalidAnnulus:
    case ErrorKind::kAreaInfeasible:
    case ErrorKind::kGeometryOverflow:
    case ErrorKind::kUnsupported:
    case ErrorKind::kInvalidModel: return kInfeasible;
    case ErrorKind::kSolverFailure:
    case ErrorKind::kShapeMismatch: return kSolver;
    case ErrorKind::kPostcondition: return kViolation;
  }
  return kSolver;
}

bool VerificationReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

BoundReport cmd_bounds(const ScenarioConfig& cfg) {
  const Cylinder c = build_cylinder(cfg);
  return bounds_for(c, build_annulus(cfg, c), cfg);
}

SymmetrizationTrace cmd_symmetrize(const ScenarioConfig& cfg) {
  const Cylinder c = build_cylinder(cfg);
  PipelineOptions opts;
  opts.sections = cfg.sections;
  return run_pipeline(c, build_annulus(cfg, c), opts);
}

CapacityEstimate cmd_oracle(const ScenarioConfig& cfg) {
  const Cylinder c = build_cylinder(cfg);
  return solve_capacity(c, build_annulus(cfg, c), cfg.grid, cfg.solver);
}

VerificationReport cmd_verify(const ScenarioConfig& cfg) {
  const Cylinder c = build_cylinder(cfg);
  const TypeAAnnulus ann = build_annulus(cfg, c);
  VerificationReport r;
  r.bounds = bounds_for(c, ann, cfg);
  r.oracle = solve_capacity(c, ann, cfg.grid, cfg.solver);
  PipelineOptions opts;
  opts.sections = cfg.sections;
  r.trace = run_pipeline(c, ann, opts);

  const double eb = r.oracle.error_bound;
  const double lower = r.bounds.lower;
  r.assertions.push_back(check("lower_le_oracle", lower, r.oracle.value, eb + kBracketSlack));
  if (r.bounds.upper) {
    r.assertions.push_back(check("lower_le_upper", lower, *r.bounds.upper, 0.0));
    r.assertions.push_back(check("oracle_le_upper", r.oracle.value, *r.bounds.upper, eb + kBracketSlack));
  }
  if (r.bounds.sharp) {
    r.assertions.push_back(check("sharp", std::abs(lower - r.oracle.value), 0.0, eb));
  }
  r.assertions.push_back(check("area_bound_le_lower", r.bounds.details.at("area_bound"), lower, 1e-9 * lower));
  const double caps0 = r.trace.stages.front().caps;
  r.assertions.push_back(check("trace_area_drift", r.trace.area_drift, 0.0, 1e-8));
  r.assertions.push_back(check("trace_caps_monotone", r.trace.max_caps_increase, 0.0, 1e-9 * caps0));
  r.assertions.push_back(check("trace_final_caps", std::abs(r.trace.final_caps - r.trace.closed_form_bound), 0.0,
                               1e-10 * r.trace.closed_form_bound));
  return r;
}

std::vector<SweepRow> cmd_sweep(const ScenarioConfig& cfg) {
  if (!cfg.sweep) throw Error(ErrorKind::kConfig, "field sweep: missing");
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < cfg.sweep->values.size(); ++i) {
    const int index = static_cast<int>(i);
    const double value = cfg.sweep->values[i];
    try {
      rows.push_back(sweep_point(cfg, index, value));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kConfig) throw;
      SweepRow row;
      row.index = index;
      row.value = value;
      row.status = std::string(error_kind_name(e.kind()));
      row.message = e.what();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

Json verification_json(const VerificationReport& report) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["passed"] = report.passed();
  Json list = Json::array();
  for (const auto& a : report.assertions) {
    list.push_back(Json{{"name", a.name}, {"passed", a.passed}, {"lhs", a.lhs}, {"rhs", a.rhs}, {"tolerance", a.tolerance}});
  }
  doc["assertions"] = list;
  doc["bounds"] = bound_report_json(report.bounds, false);
  doc["oracle"] = capacity_json(report.oracle);
  doc["trace"] = trace_json(report.trace, false);
  return doc;
}

std::string verification_csv(const VerificationReport& report) {
  std::ostringstream out;
  out << "# schema " << kSchemaVersion << "\nname,passed,lhs,rhs,tolerance\n";
  for (const auto& a : report.assertions) {
    out << a.name << ',' << (a.passed ? "true" : "false") << ',' << format_number(a.lhs) << ','
        << format_number(a.rhs) << ',' << format_number(a.tolerance) << '\n';
  }
  return out.str();
}

Json sweep_json(const std::vector<SweepRow>& rows, const std::string& parameter) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["parameter"] = parameter;
  Json list = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["index"] = r.index;
    row["value"] = r.value;
    row["area"] = optional_number(r.area);
    row["area_bound"] = optional_number(r.area_bound);
    row["lower"] = optional_number(r.lower);
    row["upper"] = optional_number(r.upper);
    row["gap"] = r.lower && r.upper ? Json(*r.upper - *r.lower) : Json(nullptr);
    row["oracle"] = optional_number(r.oracle);
    row["oracle_error"] = optional_number(r.oracle_error);
    row["margin"] = optional_number(r.margin);
    row["status"] = r.status;
    row["message"] = r.message;
    list.push_back(row);
  }
  doc["rows"] = list;
  return doc;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& parameter) {
  std::ostringstream out;
  out << "# schema " << kSchemaVersion << "\n"
      << "index,parameter,value,area,area_bound,lower,upper,gap,oracle,oracle_error,oracle_gap_lower,margin,status,message\n";
  for (const auto& r : rows) {
    std::optional<double> gap;
    if (r.lower && r.upper) gap = *r.upper - *r.lower;
    std::optional<double> oracle_gap;
    if (r.lower && r.oracle) oracle_gap = *r.oracle - *r.lower;
    out << r.index << ',' << parameter << ',' << format_number(r.value) << ',' << csv_field(r.area) << ','
        << csv_field(r.area_bound) << ',' << csv_field(r.lower) << ',' << csv_field(r.upper) << ',' << csv_field(gap)
        << ',' << csv_field(r.oracle) << ',' << csv_field(r.oracle_error) << ',' << csv_field(oracle_gap) << ','
        << csv_field(r.margin) << ',' << r.status << ',' << csv_text(r.message) << '\n';
  }
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity bounds, symmetrization traces and numerical capacities of annuli on cylinders"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format;
  std::string grid;
  std::optional<int> levels;
  std::optional<double> tol;
  app.add_option("--config", config_path, "scenario JSON")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "seed of the random annulus");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--grid", grid, "finest oracle grid as nt,nu");
  app.add_option("--levels", levels, "oracle refinement levels")->check(CLI::Range(2, 12));
  app.add_option("--tol", tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);

  for (const char* name : {"bounds", "symmetrize", "oracle", "verify", "sweep"}) {
    app.add_subcommand(name, std::string("run the ") + name + " task");
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  const std::string task = app.get_subcommands().front()->get_name();

  try {
    ScenarioConfig cfg = load_scenario(config_path);
    if (!cfg.task.empty() && cfg.task != task) {
      throw Error(ErrorKind::kConfig, "field task: config is for '" + cfg.task + "', command is '" + task + "'");
    }
    if (seed) cfg.annulus.seed = *seed;
    if (!out_path.empty()) cfg.output.path = out_path;
    if (!format.empty()) cfg.output.format = format;
    if (!grid.empty()) std::tie(cfg.grid.nt, cfg.grid.nu) = parse_grid(grid);
    if (levels) cfg.grid.refinement_levels = *levels;
    if (tol) cfg.quadrature.rel_tol = *tol;
    const bool csv = cfg.output.format == "csv";

    std::string text;
    int code = kOk;
    if (task == "bounds") {
      const BoundReport report = cmd_bounds(cfg);
      text = csv ? bound_samples_csv(report) : write_json(bound_report_json(report, cfg.output.samples > 0));
    } else if (task == "symmetrize") {
      const SymmetrizationTrace trace = cmd_symmetrize(cfg);
      text = csv ? trace_csv(trace) : write_json(trace_json(trace, cfg.output.sections));
    } else if (task == "oracle") {
      const CapacityEstimate est = cmd_oracle(cfg);
      text = csv ? capacity_levels_csv(est) : write_json(capacity_json(est));
      if (!cfg.output.field_path.empty()) {
        const Cylinder c = build_cylinder(cfg);
        const TypeAAnnulus ann = build_annulus(cfg, c);
        const Minimizer m = solve_level(c, ann, cfg.grid.nt, cfg.grid.nu, cfg.solver);
        emit(field_csv(ann, m.field), cfg.output.field_path, out);
      }
    } else if (task == "verify") {
      const VerificationReport report = cmd_verify(cfg);
      text = csv ? verification_csv(report) : write_json(verification_json(report));
      if (!report.passed()) code = kViolation;
    } else {
      const auto rows = cmd_sweep(cfg);
      text = cfg.output.format == "json" ? write_json(sweep_json(rows, cfg.sweep->parameter)) : sweep_csv(rows, cfg.sweep->parameter);
    }
    emit(text, cfg.output.path, out);
    return code;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    out << write_json(error_json(std::string(error_kind_name(e.kind())), e.what(), code));
    err << "error: " << e.what() << '\n';
    return code;
  } catch (const std::exception& e) {
    out << write_json(error_json("internal", e.what(), kSolver));
    err << "error: " << e.what() << '\n';
    return kSolver;
  }
}

}  // namespace cylcap::cli
