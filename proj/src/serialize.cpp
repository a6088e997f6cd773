#include "cylcap/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cylcap/error.hpp"

namespace cylcap {

namespace {

const char* type_name(SubsectionType type) { return type == SubsectionType::kAB ? "ab" : "aa"; }

void write_value(std::string& out, const Json& v, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write_value(out, item, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // numeric arrays stay on one line
      const bool flat = std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write_value(out, item, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      return;
    }
    default: out += v.dump(); return;
  }
}

std::vector<double> number_array(const nlohmann::json& v, const std::string& field) {
  if (!v.is_array()) throw Error(ErrorKind::kConfig, "field " + field + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw Error(ErrorKind::kConfig, "field " + field + "[" + std::to_string(i) + "]: expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

Json numbers(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

void csv_header(std::ostringstream& out, const char* columns) { out << "# schema " << kSchemaVersion << '\n' << columns << '\n'; }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string write_json(const Json& doc, int indent) {
  std::string out;
  write_value(out, doc, indent, 0);
  out += '\n';
  return out;
}

BoundaryCurve curve_from_json(const nlohmann::json& spec, double period, const std::string& field) {
  if (spec.is_number()) return BoundaryCurve::constant(spec.get<double>(), period);
  if (!spec.is_object()) throw Error(ErrorKind::kConfig, "field " + field + ": expected a number or an object");
  if (spec.contains("fourier")) {
    const auto& f = spec["fourier"];
    if (!f.is_object()) throw Error(ErrorKind::kConfig, "field " + field + ".fourier: expected an object");
    BoundaryCurve::Fourier series;
    series.period = period;
    if (!f.contains("mean") || !f["mean"].is_number()) {
      throw Error(ErrorKind::kConfig, "field " + field + ".fourier.mean: expected a number");
    }
    series.mean = f["mean"].get<double>();
    if (f.contains("cos")) series.cos_terms = number_array(f["cos"], field + ".fourier.cos");
    if (f.contains("sin")) series.sin_terms = number_array(f["sin"], field + ".fourier.sin");
    return BoundaryCurve::fourier(std::move(series));
  }
  if (spec.contains("samples")) {
    const auto& s = spec["samples"];
    if (s.is_array()) return BoundaryCurve::samples(period, number_array(s, field + ".samples"));
    if (!s.is_object() || !s.contains("t") || !s.contains("values")) {
      throw Error(ErrorKind::kConfig, "field " + field + ".samples: expected an array or {\"t\", \"values\"}");
    }
    BoundaryCurve::Samples knots;
    knots.period = period;
    knots.t = number_array(s["t"], field + ".samples.t");
    knots.values = number_array(s["values"], field + ".samples.values");
    return BoundaryCurve::samples(std::move(knots));
  }
  if (spec.contains("constant") && spec["constant"].is_number()) {
    return BoundaryCurve::constant(spec["constant"].get<double>(), period);
  }
  throw Error(ErrorKind::kConfig, "field " + field + ": expected \"fourier\", \"samples\" or \"constant\"");
}

Json curve_to_json(const BoundaryCurve& curve) {
  const auto& rep = curve.representation();
  if (const auto* f = std::get_if<BoundaryCurve::Fourier>(&rep)) {
    if (f->cos_terms.empty() && f->sin_terms.empty()) return Json(f->mean);
    Json series;
    series["mean"] = f->mean;
    series["cos"] = numbers(f->cos_terms);
    series["sin"] = numbers(f->sin_terms);
    return Json{{"fourier", series}};
  }
  if (const auto* s = std::get_if<BoundaryCurve::Samples>(&rep)) {
    Json knots;
    knots["t"] = numbers(s->t);
    knots["values"] = numbers(s->values);
    return Json{{"samples", knots}};
  }
  throw Error(ErrorKind::kUnsupported, "callable boundary curves cannot be serialized");
}

TypeAAnnulus annulus_from_json(const nlohmann::json& doc, double period) {
  if (!doc.is_object()) throw Error(ErrorKind::kConfig, "annulus fixture: expected an object");
  for (const char* key : {"a1", "a2"}) {
    if (!doc.contains(key)) throw Error(ErrorKind::kConfig, std::string("annulus fixture: missing field ") + key);
  }
  std::vector<double> breakpoints;
  if (doc.contains("breakpoints")) breakpoints = number_array(doc["breakpoints"], "breakpoints");
  return TypeAAnnulus(period, curve_from_json(doc["a1"], period, "a1"), curve_from_json(doc["a2"], period, "a2"),
                      std::move(breakpoints));
}

Json annulus_to_json(const TypeAAnnulus& ann) {
  Json doc;
  doc["a1"] = curve_to_json(ann.lower());
  doc["a2"] = curve_to_json(ann.upper());
  doc["breakpoints"] = numbers(ann.declared_breakpoints());
  return doc;
}

Json bound_report_json(const BoundReport& report, bool with_samples) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["lower"] = report.lower;
  doc["upper"] = report.upper ? Json(*report.upper) : Json(nullptr);
  doc["sharp"] = report.sharp;
  Json details = Json::object();
  for (const auto& [key, value] : report.details) details[key] = value;
  doc["details"] = details;
  if (with_samples) {
    Json rows = Json::array();
    for (const auto& s : report.samples) rows.push_back(Json{{"t", s.t}, {"lower", s.lower}, {"upper", s.upper}});
    doc["samples"] = rows;
  }
  return doc;
}

std::string bound_samples_csv(const BoundReport& report) {
  std::ostringstream out;
  csv_header(out, "t,lower,upper");
  for (const auto& s : report.samples) {
    out << format_number(s.t) << ',' << format_number(s.lower) << ',' << format_number(s.upper) << '\n';
  }
  return out.str();
}

Json trace_json(const SymmetrizationTrace& trace, bool with_sections) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  Json stages = Json::array();
  for (const auto& stage : trace.stages) {
    Json s;
    s["label"] = stage.label;
    s["area"] = stage.area;
    s["caps"] = stage.caps;
    if (with_sections) {
      Json sections = Json::array();
      for (std::size_t j = 0; j < stage.annulus.size(); ++j) {
        Json parts = Json::array();
        for (const auto& p : stage.annulus.section(j)) parts.push_back(Json{{"lo", p.lo}, {"hi", p.hi}, {"type", type_name(p.type)}});
        sections.push_back(Json{{"t", stage.annulus.t(j)}, {"subsections", parts}});
      }
      s["sections"] = sections;
    }
    stages.push_back(s);
  }
  doc["stages"] = stages;
  doc["final_width"] = trace.final_width;
  doc["final_caps"] = trace.final_caps;
  doc["closed_form_bound"] = trace.closed_form_bound;
  doc["area_drift"] = trace.area_drift;
  doc["max_caps_increase"] = trace.max_caps_increase;
  return doc;
}

std::string trace_csv(const SymmetrizationTrace& trace) {
  std::ostringstream out;
  csv_header(out, "stage,label,t,index,a1,a2,type");
  for (std::size_t i = 0; i < trace.stages.size(); ++i) {
    const auto& stage = trace.stages[i];
    for (std::size_t j = 0; j < stage.annulus.size(); ++j) {
      const auto parts = stage.annulus.section(j);
      for (std::size_t p = 0; p < parts.size(); ++p) {
        out << i << ',' << stage.label << ',' << format_number(stage.annulus.t(j)) << ',' << p << ','
            << format_number(parts[p].lo) << ',' << format_number(parts[p].hi) << ',' << type_name(parts[p].type)
            << '\n';
      }
    }
  }
  return out.str();
}

Json capacity_json(const CapacityEstimate& estimate) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["value"] = estimate.value;
  doc["error_bound"] = estimate.error_bound;
  doc["observed_ratio"] = estimate.observed_ratio;
  Json levels = Json::array();
  for (const auto& l : estimate.levels) {
    levels.push_back(Json{{"nt", l.nt}, {"nu", l.nu}, {"value", l.value}, {"iterations", l.iterations}});
  }
  doc["levels"] = levels;
  return doc;
}

std::string capacity_levels_csv(const CapacityEstimate& estimate) {
  std::ostringstream out;
  csv_header(out, "nt,nu,value,iterations");
  for (const auto& l : estimate.levels) {
    out << l.nt << ',' << l.nu << ',' << format_number(l.value) << ',' << l.iterations << '\n';
  }
  return out.str();
}

std::string field_csv(const TypeAAnnulus& ann, const GridFunction& field) {
  std::ostringstream out;
  csv_header(out, "t,u,s,f");
  const SolverGrid& g = field.grid;
  for (int i = 0; i < g.nt(); ++i) {
    const double t = g.t_nodes[static_cast<std::size_t>(i)];
    const double lo = ann.a1(t);
    const double hi = ann.a2(t);
    for (int j = 0; j <= g.nu; ++j) {
      const double u = g.u(j);
      out << format_number(t) << ',' << format_number(u) << ',' << format_number(lo + u * (hi - lo)) << ','
          << format_number(field.at(i, j)) << '\n';
    }
  }
  return out.str();
}

Json error_json(const std::string& kind, const std::string& message, int exit_code) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["error"] = kind;
  doc["message"] = message;
  doc["exit_code"] = exit_code;
  return doc;
}

}  // namespace cylcap
