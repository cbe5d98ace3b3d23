#include "nanoantenna/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "nanoantenna/errors.hpp"

namespace nanoantenna::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string join(const std::string& ctx, const std::string& key) {
  return ctx.empty() ? key : ctx + "." + key;
}

void require_object(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ValidationError(ctx + " must be a JSON object");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& ctx) {
  require_object(j, ctx.empty() ? "scenario" : ctx);
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ValidationError("unknown key '" + join(ctx, key) + "'");
  }
}

double number(const json& j, const char* key, const std::string& ctx, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw ValidationError(join(ctx, key) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(join(ctx, key) + " must be finite");
  return d;
}

double required_number(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key)) throw ValidationError("missing required field " + join(ctx, key));
  return number(j, key, ctx, 0.0);
}

int integer(const json& j, const char* key, const std::string& ctx, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ValidationError(join(ctx, key) + " must be an integer");
  return v.get<int>();
}

std::string string(const json& j, const char* key, const std::string& ctx,
                   const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_string()) throw ValidationError(join(ctx, key) + " must be a string");
  return v.get<std::string>();
}

collective::PairGeometry parse_geometry(const json& j) {
  collective::PairGeometry g;
  if (j.is_null()) return g;
  check_keys(j, {"r12", "mu_dot_r", "gamma", "wavelength"}, "geometry");
  g.r12 = number(j, "r12", "geometry", g.r12);
  g.mu_dot_r = number(j, "mu_dot_r", "geometry", g.mu_dot_r);
  g.gamma = number(j, "gamma", "geometry", g.gamma);
  g.wavelength = number(j, "wavelength", "geometry", g.wavelength);
  g.validate();
  return g;
}

beam::BeamSpec parse_beam(const json& j, const std::string& ctx, double gamma) {
  check_keys(j, {"l", "p", "w0", "omega00", "power", "saturation_intensity", "wavelength",
                 "offset_x", "offset_y"},
             ctx);
  const int l = integer(j, "l", ctx, 0);
  const int p = integer(j, "p", ctx, 0);
  const double w0 = required_number(j, "w0", ctx);
  const double wavelength = number(j, "wavelength", ctx, 1.0);
  beam::BeamSpec b;
  const bool by_power = j.contains("power") || j.contains("saturation_intensity");
  if (by_power && j.contains("omega00"))
    throw ValidationError(ctx + ": give either omega00 or power/saturation_intensity, not both");
  if (by_power) {
    b = beam::BeamSpec::from_power(l, p, w0, required_number(j, "power", ctx),
                                   required_number(j, "saturation_intensity", ctx), gamma,
                                   wavelength);
  } else {
    b.l = l;
    b.p = p;
    b.w0 = w0;
    b.wavelength = wavelength;
    b.omega00 = required_number(j, "omega00", ctx);
  }
  b.axis_offset = {number(j, "offset_x", ctx, 0.0), number(j, "offset_y", ctx, 0.0)};
  try {
    b.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(ctx + ": " + e.what());
  }
  return b;
}

beam::ComplexRabi parse_rabi(const json& j, const std::string& ctx) {
  check_keys(j, {"magnitude", "phase_over_pi"}, ctx);
  const double m = required_number(j, "magnitude", ctx);
  if (m < 0.0) throw ValidationError(join(ctx, "magnitude") + " must be >= 0");
  return beam::ComplexRabi::polar(m, kPi * number(j, "phase_over_pi", ctx, 0.0));
}

DriveConfig parse_drive(const json& j, double gamma) {
  if (!j.is_object()) throw ValidationError("missing required object 'drive'");
  const std::string kind = string(j, "kind", "drive", "");
  DriveConfig d;
  if (kind == "explicit") {
    check_keys(j, {"kind", "omega1", "omega2", "detuning"}, "drive");
    d.kind = DriveKind::explicit_pair;
    if (!j.contains("omega1") || !j.contains("omega2"))
      throw ValidationError("drive.omega1 and drive.omega2 are required for an explicit drive");
    d.omega1 = parse_rabi(j.at("omega1"), "drive.omega1");
    d.omega2 = parse_rabi(j.at("omega2"), "drive.omega2");
  } else if (kind == "pairwise") {
    check_keys(j, {"kind", "omega0", "omega_d", "phi_d_over_pi", "detuning"}, "drive");
    d.kind = DriveKind::pairwise;
    d.omega0 = required_number(j, "omega0", "drive");
    d.omega_d = number(j, "omega_d", "drive", 0.0);
    d.phi_d = kPi * number(j, "phi_d_over_pi", "drive", 0.0);
    if (d.omega0 < 0.0) throw ValidationError("drive.omega0 must be >= 0");
    if (std::abs(d.omega_d) > d.omega0)
      throw ValidationError("drive.omega_d must satisfy |omega_d| <= omega0");
  } else if (kind == "beam") {
    check_keys(j, {"kind", "beam", "detuning"}, "drive");
    d.kind = DriveKind::beam;
    if (!j.contains("beam")) throw ValidationError("drive.beam is required for a beam drive");
    d.beam = parse_beam(j.at("beam"), "drive.beam", gamma);
  } else {
    throw ValidationError("drive.kind must be one of explicit, pairwise, beam (got '" + kind +
                          "')");
  }
  d.detuning = number(j, "detuning", "drive", 0.0);
  return d;
}

SolverConfig parse_solver(const json& j) {
  SolverConfig s;
  if (j.is_null()) return s;
  check_keys(j, {"n_theta", "equations"}, "solver");
  s.n_theta = integer(j, "n_theta", "solver", s.n_theta);
  if (s.n_theta < 256) throw ValidationError("solver.n_theta must be >= 256");
  const std::string eq = string(j, "equations", "solver", "derived");
  if (eq == "derived")
    s.form = liouvillian::EquationForm::derived;
  else if (eq == "paper_literal")
    s.form = liouvillian::EquationForm::paper_literal;
  else
    throw ValidationError("solver.equations must be 'derived' or 'paper_literal'");
  return s;
}

pattern::DirectivityOptions parse_directivity(const json& j) {
  pattern::DirectivityOptions o;
  if (j.is_null()) return o;
  check_keys(j, {"lobe_floor", "split_fraction", "two_sided_max", "one_sided_min"},
             "directivity");
  o.lobe_floor = number(j, "lobe_floor", "directivity", o.lobe_floor);
  o.split_fraction = number(j, "split_fraction", "directivity", o.split_fraction);
  o.two_sided_max = number(j, "two_sided_max", "directivity", o.two_sided_max);
  o.one_sided_min = number(j, "one_sided_min", "directivity", o.one_sided_min);
  for (double v : {o.lobe_floor, o.split_fraction, o.two_sided_max, o.one_sided_min})
    if (!(v >= 0.0 && v <= 1.0))
      throw ValidationError("directivity thresholds must lie in [0, 1]");
  return o;
}

Case parse_case(const json& doc, const std::string& label) {
  Case c;
  c.label = label;
  c.geometry = parse_geometry(doc.value("geometry", json()));
  c.drive = parse_drive(doc.value("drive", json()), c.geometry.gamma);
  c.solver = parse_solver(doc.value("solver", json()));
  c.directivity = parse_directivity(doc.value("directivity", json()));
  c.drive.resolve(c.geometry).validate();
  return c;
}

std::vector<SweepAxis> parse_sweep(const json& j) {
  check_keys(j, {"parameters"}, "sweep");
  if (!j.contains("parameters") || !j.at("parameters").is_array())
    throw ValidationError("sweep.parameters must be an array");
  const auto& arr = j.at("parameters");
  if (arr.empty() || arr.size() > 2)
    throw ValidationError("sweep.parameters must list one or two parameters");
  std::vector<SweepAxis> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string ctx = "sweep.parameters[" + std::to_string(i) + "]";
    check_keys(arr[i], {"name", "from", "to", "steps"}, ctx);
    SweepAxis a;
    a.name = string(arr[i], "name", ctx, "");
    static const std::set<std::string> names = {"phi_d_over_pi", "r12", "omega_d", "detuning"};
    if (!names.count(a.name))
      throw ValidationError(join(ctx, "name") +
                            " must be one of phi_d_over_pi, r12, omega_d, detuning");
    a.from = required_number(arr[i], "from", ctx);
    a.to = number(arr[i], "to", ctx, a.from);
    a.steps = integer(arr[i], "steps", ctx, 1);
    if (a.steps < 1) throw ValidationError(join(ctx, "steps") + " must be >= 1");
    if (std::any_of(out.begin(), out.end(), [&](const SweepAxis& o) { return o.name == a.name; }))
      throw ValidationError(ctx + ": parameter '" + a.name + "' listed twice");
    out.push_back(a);
  }
  return out;
}

BeamMapConfig parse_beam_map(const json& j) {
  const std::string ctx = "beam_map";
  check_keys(j, {"beam", "kind", "r_max_w0", "phi_over_pi", "radius_w0", "half_width_w0",
                 "samples", "z", "ferris"},
             ctx);
  BeamMapConfig m;
  if (!j.contains("beam")) throw ValidationError("beam_map.beam is required");
  m.beam = parse_beam(j.at("beam"), "beam_map.beam", 1.0);
  const std::string kind = string(j, "kind", ctx, "radial");
  if (kind == "radial")
    m.kind = MapKind::radial;
  else if (kind == "azimuthal")
    m.kind = MapKind::azimuthal;
  else if (kind == "grid")
    m.kind = MapKind::grid;
  else
    throw ValidationError("beam_map.kind must be radial, azimuthal or grid");
  m.r_max_w0 = number(j, "r_max_w0", ctx, m.r_max_w0);
  m.phi = kPi * number(j, "phi_over_pi", ctx, 0.0);
  m.radius_w0 = number(j, "radius_w0", ctx, m.radius_w0);
  m.half_width_w0 = number(j, "half_width_w0", ctx, m.half_width_w0);
  m.samples = integer(j, "samples", ctx, m.kind == MapKind::grid ? 201 : m.samples);
  m.z = number(j, "z", ctx, 0.0);
  if (m.samples < 2) throw ValidationError("beam_map.samples must be >= 2");
  if (m.kind == MapKind::grid && m.samples > 2001)
    throw ValidationError("beam_map.samples must be <= 2001 for a grid map");
  if (!(m.r_max_w0 > 0.0)) throw ValidationError("beam_map.r_max_w0 must be > 0");
  if (!(m.radius_w0 > 0.0)) throw ValidationError("beam_map.radius_w0 must be > 0");
  if (!(m.half_width_w0 > 0.0)) throw ValidationError("beam_map.half_width_w0 must be > 0");
  if (j.contains("ferris")) {
    const auto& f = j.at("ferris");
    check_keys(f, {"delta_omega", "t"}, "beam_map.ferris");
    m.ferris = true;
    m.delta_omega = number(f, "delta_omega", "beam_map.ferris", 0.0);
    m.t = number(f, "t", "beam_map.ferris", 0.0);
    if (m.beam.l == 0) throw ValidationError("beam_map.ferris needs beam.l != 0");
  }
  return m;
}

json rabi_json(const beam::ComplexRabi& r) {
  return {{"magnitude", r.magnitude}, {"phase_over_pi", r.phase / kPi}};
}

json beam_json(const beam::BeamSpec& b) {
  return {{"l", b.l},           {"p", b.p},
          {"w0", b.w0},         {"omega00", b.omega00},
          {"wavelength", b.wavelength}, {"offset_x", b.axis_offset.x},
          {"offset_y", b.axis_offset.y}};
}

}  // namespace

collective::DriveParams DriveConfig::resolve(const collective::PairGeometry& geometry) const {
  switch (kind) {
    case DriveKind::explicit_pair: {
      collective::DriveParams d;
      d.rabi1 = omega1;
      d.rabi2 = omega2;
      d.detuning = detuning;
      return d;
    }
    case DriveKind::pairwise:
      return collective::DriveParams::from_pairwise(omega0, omega_d, phi_d, detuning);
    case DriveKind::beam: {
      collective::DriveParams d;
      d.rabi1 = beam::lg_rabi(beam, {0.0, -0.5 * geometry.r12, 0.0});
      d.rabi2 = beam::lg_rabi(beam, {0.0, 0.5 * geometry.r12, 0.0});
      d.detuning = detuning;
      return d;
    }
  }
  throw ValidationError("drive.kind is not set");
}

double SweepAxis::value(int i) const {
  if (steps == 1) return from;
  return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void apply_sweep_value(Case& c, const std::string& axis, double value) {
  if (axis == "r12") {
    c.geometry.r12 = value;
    c.geometry.validate();
  } else if (axis == "detuning") {
    c.drive.detuning = value;
  } else if (axis == "phi_d_over_pi" || axis == "omega_d") {
    if (c.drive.kind != DriveKind::pairwise)
      throw ValidationError("sweep parameter " + axis + " requires drive.kind = pairwise");
    if (axis == "phi_d_over_pi") {
      c.drive.phi_d = kPi * value;
    } else {
      if (std::abs(value) > c.drive.omega0)
        throw ValidationError("sweep value omega_d = " + std::to_string(value) +
                              " exceeds drive.omega0");
      c.drive.omega_d = value;
    }
  } else {
    throw ValidationError("unknown sweep parameter '" + axis + "'");
  }
}

Scenario parse_scenario(const json& doc, const std::string& fallback_name) {
  check_keys(doc, {"schema", "name", "description", "geometry", "drive", "solver", "directivity",
                   "cases", "sweep", "beam_map", "outputs"},
             "");
  if (!doc.contains("schema")) throw ValidationError("missing required field schema");
  if (!doc.at("schema").is_number_integer() || doc.at("schema").get<int>() != kSchemaVersion)
    throw ValidationError("schema must be " + std::to_string(kSchemaVersion));
  if (doc.contains("description") && !doc.at("description").is_string())
    throw ValidationError("description must be a string");

  Scenario s;
  s.name = string(doc, "name", "", fallback_name);
  if (s.name.empty()) throw ValidationError("name must not be empty");

  if (doc.contains("outputs")) {
    const auto& o = doc.at("outputs");
    check_keys(o, {"formats"}, "outputs");
    if (o.contains("formats")) {
      if (!o.at("formats").is_array())
        throw ValidationError("outputs.formats must be an array of strings");
      for (const auto& f : o.at("formats")) {
        if (!f.is_string()) throw ValidationError("outputs.formats must be an array of strings");
        const auto parsed = parse_formats(f.get<std::string>());
        s.formats.insert(s.formats.end(), parsed.begin(), parsed.end());
      }
    }
  }

  if (doc.contains("beam_map")) s.beam_map = parse_beam_map(doc.at("beam_map"));
  if (doc.contains("sweep")) s.sweep = parse_sweep(doc.at("sweep"));

  const bool needs_cases = doc.contains("drive") || doc.contains("cases") || !s.beam_map;
  if (!needs_cases) return s;

  json base = json::object();
  for (const char* key : {"geometry", "drive", "solver", "directivity"})
    if (doc.contains(key)) base[key] = doc.at(key);

  if (!doc.contains("cases")) {
    s.cases.push_back(parse_case(base, ""));
    return s;
  }
  const auto& cases = doc.at("cases");
  if (!cases.is_array() || cases.empty())
    throw ValidationError("cases must be a non-empty array");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::string ctx = "cases[" + std::to_string(i) + "]";
    check_keys(cases[i], {"label", "geometry", "drive", "solver", "directivity"}, ctx);
    const std::string label = string(cases[i], "label", ctx, "case" + std::to_string(i));
    if (label.empty()) throw ValidationError(join(ctx, "label") + " must not be empty");
    if (!labels.insert(label).second)
      throw ValidationError(join(ctx, "label") + " '" + label + "' is not unique");
    json merged = base;
    for (const auto& [key, value] : cases[i].items()) {
      if (key == "label") continue;
      // A drive override naming its kind replaces the base drive entirely.
      if (key == "drive" && value.is_object() && value.contains("kind"))
        merged[key] = value;
      else if (merged.contains(key))
        merged[key].merge_patch(value);
      else
        merged[key] = value;
    }
    try {
      s.cases.push_back(parse_case(merged, label));
    } catch (const ValidationError& e) {
      throw ValidationError(ctx + ": " + e.what());
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": invalid JSON: " + e.what());
  }
  try {
    return parse_scenario(doc, path.stem().string());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json case_to_json(const std::string& scenario_name, const Case& c) {
  json drive;
  switch (c.drive.kind) {
    case DriveKind::explicit_pair:
      drive = {{"kind", "explicit"},
               {"omega1", rabi_json(c.drive.omega1)},
               {"omega2", rabi_json(c.drive.omega2)}};
      break;
    case DriveKind::pairwise:
      drive = {{"kind", "pairwise"},
               {"omega0", c.drive.omega0},
               {"omega_d", c.drive.omega_d},
               {"phi_d_over_pi", c.drive.phi_d / kPi}};
      break;
    case DriveKind::beam:
      drive = {{"kind", "beam"}, {"beam", beam_json(c.drive.beam)}};
      break;
  }
  drive["detuning"] = c.drive.detuning;
  return {
      {"schema", kSchemaVersion},
      {"name", c.label.empty() ? scenario_name : scenario_name + "_" + c.label},
      {"geometry",
       {{"r12", c.geometry.r12},
        {"mu_dot_r", c.geometry.mu_dot_r},
        {"gamma", c.geometry.gamma},
        {"wavelength", c.geometry.wavelength}}},
      {"drive", drive},
      {"solver",
       {{"n_theta", c.solver.n_theta},
        {"equations", c.solver.form == liouvillian::EquationForm::derived ? "derived"
                                                                          : "paper_literal"}}},
      {"directivity",
       {{"lobe_floor", c.directivity.lobe_floor},
        {"split_fraction", c.directivity.split_fraction},
        {"two_sided_max", c.directivity.two_sided_max},
        {"one_sided_min", c.directivity.one_sided_min}}},
  };
}

std::vector<Format> parse_formats(const std::string& spec) {
  std::vector<Format> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv")
      out.push_back(Format::csv);
    else if (item == "json")
      out.push_back(Format::json);
    else if (item == "svg")
      out.push_back(Format::svg);
    else if (item == "all")
      out.insert(out.end(), {Format::csv, Format::json, Format::svg});
    else
      throw ValidationError("format must be csv, json, svg or all (got '" + item + "')");
  }
  if (out.empty()) throw ValidationError("format list is empty");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view name(Format f) {
  switch (f) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::svg: return "svg";
  }
  return "?";
}

}  // namespace nanoantenna::cli
