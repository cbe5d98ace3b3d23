#include "nanoantenna/cli/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <ostream>
#include <thread>

#include "nanoantenna/cli/outputs.hpp"
#include "nanoantenna/errors.hpp"

namespace nanoantenna::cli {

namespace {

constexpr double kPi = std::numbers::pi;

json software_json() { return {{"name", "nanoantenna"}, {"version", NANOANTENNA_VERSION}}; }

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json resolved_json(const CaseResult& r) {
  return {
      {"rabi1",
       {{"magnitude", r.drive.rabi1.magnitude}, {"phase_over_pi", r.drive.rabi1.phase / kPi}}},
      {"rabi2",
       {{"magnitude", r.drive.rabi2.magnitude}, {"phase_over_pi", r.drive.rabi2.phase / kPi}}},
      {"omega0", r.drive.omega0()},
      {"omega_d", r.drive.omega_d()},
      {"phi_d_over_pi", r.drive.phi_d() / kPi},
      {"global_phase_over_pi", r.drive.global_phase() / kPi},
      {"omega_alpha", complex_json(r.drive.omega_alpha())},
      {"omega_beta", complex_json(r.drive.omega_beta())},
      {"detuning", r.drive.detuning},
      {"coupling",
       {{"gamma", r.coupling.gamma},
        {"omega12", r.coupling.omega12},
        {"gamma12", r.coupling.gamma12},
        {"gamma_s", r.coupling.gamma_s},
        {"gamma_a", r.coupling.gamma_a}}},
  };
}

bool wants(const std::vector<Format>& formats, Format f) {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

std::vector<Format> pick_formats(const Scenario& s, const RunOptions& opt,
                                 std::vector<Format> fallback) {
  if (!opt.formats.empty()) return opt.formats;
  if (!s.formats.empty()) return s.formats;
  return fallback;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Runs task(i) for i in [0, n) on up to `threads` workers. Results are
// written by index, so output order never depends on scheduling. The
// exception from the lowest failing index is rethrown.
template <typename Task>
void parallel_for(std::size_t n, unsigned threads, Task&& task) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::size_t> local_maxima(const std::vector<double>& v, bool circular) {
  std::vector<std::size_t> out;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool has_prev = circular || i > 0;
    const bool has_next = circular || i + 1 < n;
    const double prev = has_prev ? v[(i + n - 1) % n] : -1.0;
    const double next = has_next ? v[(i + 1) % n] : -1.0;
    if (!has_next) continue;  // the window edge is not a maximum
    if (v[i] > prev && v[i] >= next) out.push_back(i);
  }
  return out;
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("NANOANT_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096)
      throw ValidationError(std::string("NANOANT_THREADS must be a positive integer, got '") +
                            env + "'");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CaseResult evaluate_case(const Case& c) {
  CaseResult r;
  r.config = c;
  r.drive = c.drive.resolve(c.geometry);
  r.coupling = collective::coupling(c.geometry);
  const auto gen = liouvillian::build_generator(r.coupling, r.drive, {c.solver.form, {}});
  r.state = liouvillian::steady_state(gen);
  if (const auto bad = r.state.invariant_violation(1e-9))
    throw SolverError("steady state is unphysical (" + *bad + ") for " + gen.describe());
  r.pattern = pattern::pattern(r.state,
                               {c.geometry.r12, c.geometry.wavelength, c.geometry.gamma},
                               c.solver.n_theta);
  r.report = pattern::directivity(r.pattern, c.directivity);
  return r;
}

std::vector<std::filesystem::path> run_pattern(const Scenario& s, const RunOptions& opt,
                                               std::ostream& log) {
  if (s.cases.empty()) throw ValidationError("scenario has no drive: nothing to compute");
  const auto formats = pick_formats(s, opt, {Format::csv, Format::json, Format::svg});
  std::vector<CaseResult> results(s.cases.size());
  parallel_for(s.cases.size(), opt.threads ? opt.threads : worker_count(),
               [&](std::size_t i) { results[i] = evaluate_case(s.cases[i]); });

  std::vector<std::filesystem::path> written;
  for (const auto& r : results) {
    const std::string stem = file_stem(s.name, r.config.label);
    if (wants(formats, Format::csv)) {
      written.push_back(opt.out_dir / (stem + ".csv"));
      write_text_file(written.back(), pattern_csv(r.pattern));
    }
    if (wants(formats, Format::json)) {
      const auto corr = pattern::correlations(r.state);
      json j = {
          {"software", software_json()},
          {"scenario", case_to_json(s.name, r.config)},
          {"resolved", resolved_json(r)},
          {"steady_state", state_json(r.state)},
          {"correlations",
           {{"pop_sum", corr.pop_sum}, {"pop_diff", corr.pop_diff}, {"im_rho_as", corr.coh}}},
          {"directivity", directivity_json(r.report)},
          {"total_rate", pattern::analytic_total_rate(r.state, r.coupling)},
          {"pattern",
           {{"n_theta", r.pattern.thetas.size()},
            {"max_intensity", r.pattern.max_intensity()},
            {"csv_columns", {"theta_rad", "intensity"}}}},
      };
      written.push_back(opt.out_dir / (stem + ".json"));
      write_text_file(written.back(), dump(j));
    }
    if (wants(formats, Format::svg)) {
      const std::string title =
          fmt::format("{}  r12 = {:.4g}, phi_d = {:.4g} pi", r.config.label.empty() ? s.name : r.config.label,
                      r.config.geometry.r12, r.drive.phi_d() / kPi);
      written.push_back(opt.out_dir / (stem + ".svg"));
      write_text_file(written.back(), pattern_svg(r.pattern, title));
    }
    log << fmt::format("{}: {} lobe(s), asymmetry {:+.4f}, {}\n",
                       r.config.label.empty() ? s.name : r.config.label, r.report.lobe_count(),
                       r.report.asymmetry, pattern::name(r.report.classification));
  }
  return written;
}

std::vector<std::filesystem::path> run_sweep(const Scenario& s, const RunOptions& opt,
                                             std::ostream& log) {
  if (s.cases.empty()) throw ValidationError("scenario has no drive: nothing to sweep");
  if (s.sweep.empty()) throw ValidationError("scenario has no sweep block");
  const auto formats = pick_formats(s, opt, {Format::csv, Format::json});

  const int n0 = s.sweep[0].steps;
  const int n1 = s.sweep.size() > 1 ? s.sweep[1].steps : 1;
  const std::size_t per_case = static_cast<std::size_t>(n0) * static_cast<std::size_t>(n1);
  const std::size_t total = per_case * s.cases.size();

  // Resolve every grid point up front so bad sweep values fail before any work.
  std::vector<Case> points(total);
  std::vector<std::vector<double>> values(total);
  for (std::size_t ci = 0; ci < s.cases.size(); ++ci)
    for (int i = 0; i < n0; ++i)
      for (int k = 0; k < n1; ++k) {
        const std::size_t idx = ci * per_case + static_cast<std::size_t>(i * n1 + k);
        Case c = s.cases[ci];
        values[idx].push_back(s.sweep[0].value(i));
        apply_sweep_value(c, s.sweep[0].name, values[idx].back());
        if (s.sweep.size() > 1) {
          values[idx].push_back(s.sweep[1].value(k));
          apply_sweep_value(c, s.sweep[1].name, values[idx].back());
        }
        c.drive.resolve(c.geometry).validate();
        points[idx] = c;
      }

  std::vector<CaseResult> results(total);
  parallel_for(total, opt.threads ? opt.threads : worker_count(),
               [&](std::size_t i) { results[i] = evaluate_case(points[i]); });

  std::string csv = "case";
  for (const auto& a : s.sweep) csv += "," + a.name;
  csv += ",asymmetry,lobe_count,classification,dominance,lobe_directions_rad,im_rho_as\n";
  json rows = json::array();
  for (std::size_t i = 0; i < total; ++i) {
    const auto& r = results[i];
    std::string dirs;
    for (const auto& l : r.report.lobes) dirs += (dirs.empty() ? "" : ";") + format_number(l.direction);
    csv += r.config.label;
    for (double v : values[i]) csv += "," + format_number(v);
    csv += fmt::format(",{},{},{},{},{},{}\n", format_number(r.report.asymmetry),
                       r.report.lobe_count(), pattern::name(r.report.classification),
                       std::isfinite(r.report.dominance) ? format_number(r.report.dominance)
                                                         : std::string("inf"),
                       dirs, format_number(pattern::correlations(r.state).coh));
    json params = json::object();
    for (std::size_t a = 0; a < s.sweep.size(); ++a) params[s.sweep[a].name] = values[i][a];
    rows.push_back({{"case", r.config.label},
                    {"parameters", params},
                    {"directivity", directivity_json(r.report)},
                    {"im_rho_as", pattern::correlations(r.state).coh},
                    {"scenario", case_to_json(s.name, r.config)}});
  }

  json trends = json::array();
  if (s.sweep.size() == 1) {
    for (std::size_t ci = 0; ci < s.cases.size(); ++ci) {
      bool nondecreasing = true;
      for (std::size_t i = 1; i < per_case; ++i)
        if (results[ci * per_case + i].report.lobe_count() <
            results[ci * per_case + i - 1].report.lobe_count())
          nondecreasing = false;
      trends.push_back({{"case", s.cases[ci].label}, {"lobe_count_nondecreasing", nondecreasing}});
    }
  }

  json axes = json::array();
  for (const auto& a : s.sweep)
    axes.push_back({{"name", a.name}, {"from", a.from}, {"to", a.to}, {"steps", a.steps}});

  std::vector<std::filesystem::path> written;
  const std::string stem = file_stem(s.name, "sweep");
  if (wants(formats, Format::csv)) {
    written.push_back(opt.out_dir / (stem + ".csv"));
    write_text_file(written.back(), csv);
  }
  if (wants(formats, Format::json)) {
    written.push_back(opt.out_dir / (stem + ".json"));
    write_text_file(written.back(), dump({{"software", software_json()},
                                          {"scenario", s.name},
                                          {"axes", axes},
                                          {"rows", rows},
                                          {"trends", trends}}));
  }
  if (wants(formats, Format::svg)) log << "note: sweep results have no SVG form; skipped\n";
  log << fmt::format("{}: {} sweep point(s)\n", s.name, total);
  return written;
}

std::vector<std::filesystem::path> run_beam_map(const Scenario& s, const RunOptions& opt,
                                                std::ostream& log) {
  if (!s.beam_map) throw ValidationError("scenario has no beam_map block");
  const auto& m = *s.beam_map;
  const auto formats = pick_formats(s, opt, {Format::csv, Format::json});
  const double w0 = m.beam.w0;
  const auto field = [&](double x, double y) {
    const beam::TransversePoint pt{x, y, m.z};
    return m.ferris ? beam::ferris_rabi(m.beam, pt, m.delta_omega, m.t) : beam::lg_rabi(m.beam, pt);
  };
  const auto& axis = m.beam.axis_offset;

  std::string csv;
  std::vector<double> intensity;
  json summary;
  std::string kind;
  switch (m.kind) {
    case MapKind::radial: {
      kind = "radial";
      csv = "r_w0,intensity,phase_rad\n";
      std::vector<double> rs;
      for (int i = 0; i < m.samples; ++i) {
        const double r = m.r_max_w0 * i / (m.samples - 1);
        const auto v = field(axis.x + r * w0 * std::cos(m.phi), axis.y + r * w0 * std::sin(m.phi));
        const double I = v.magnitude * v.magnitude;
        rs.push_back(r);
        intensity.push_back(I);
        csv += fmt::format("{:.17g},{:.17g},{:.17g}\n", r, I, v.phase);
      }
      json peaks = json::array();
      for (auto i : local_maxima(intensity, false)) peaks.push_back(rs[i]);
      summary = {{"maxima_count", peaks.size()}, {"maxima_r_w0", peaks}};
      break;
    }
    case MapKind::azimuthal: {
      kind = "azimuthal";
      csv = "phi_rad,intensity,phase_rad\n";
      std::vector<double> phis;
      for (int i = 0; i < m.samples; ++i) {
        const double phi = 2.0 * kPi * i / m.samples;
        const auto v = field(axis.x + m.radius_w0 * w0 * std::cos(phi),
                             axis.y + m.radius_w0 * w0 * std::sin(phi));
        const double I = v.magnitude * v.magnitude;
        phis.push_back(phi);
        intensity.push_back(I);
        csv += fmt::format("{:.17g},{:.17g},{:.17g}\n", phi, I, v.phase);
      }
      json peaks = json::array();
      for (auto i : local_maxima(intensity, true)) peaks.push_back(phis[i]);
      summary = {{"maxima_count", peaks.size()}, {"maxima_phi_rad", peaks}};
      break;
    }
    case MapKind::grid: {
      kind = "grid";
      csv = "x_w0,y_w0,intensity,phase_rad\n";
      double peak = 0.0;
      for (int i = 0; i < m.samples; ++i)
        for (int k = 0; k < m.samples; ++k) {
          const double y = -m.half_width_w0 + 2.0 * m.half_width_w0 * i / (m.samples - 1);
          const double x = -m.half_width_w0 + 2.0 * m.half_width_w0 * k / (m.samples - 1);
          const auto v = field(axis.x + x * w0, axis.y + y * w0);
          const double I = v.magnitude * v.magnitude;
          peak = std::max(peak, I);
          csv += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", x, y, I, v.phase);
        }
      summary = {{"max_intensity", peak}};
      break;
    }
  }

  json beam_j = {{"l", m.beam.l},
                 {"p", m.beam.p},
                 {"w0", m.beam.w0},
                 {"omega00", m.beam.omega00},
                 {"wavelength", m.beam.wavelength},
                 {"offset_x", m.beam.axis_offset.x},
                 {"offset_y", m.beam.axis_offset.y},
                 {"rayleigh_range", m.beam.rayleigh_range()}};
  json map_j = {{"kind", kind},
                {"samples", m.samples},
                {"z", m.z},
                {"r_max_w0", m.r_max_w0},
                {"phi_over_pi", m.phi / kPi},
                {"radius_w0", m.radius_w0},
                {"half_width_w0", m.half_width_w0}};
  if (m.ferris) map_j["ferris"] = {{"delta_omega", m.delta_omega}, {"t", m.t}};

  std::vector<std::filesystem::path> written;
  const std::string stem = file_stem(s.name, "beam_" + kind);
  if (wants(formats, Format::csv)) {
    written.push_back(opt.out_dir / (stem + ".csv"));
    write_text_file(written.back(), csv);
  }
  if (wants(formats, Format::json)) {
    written.push_back(opt.out_dir / (stem + ".json"));
    write_text_file(written.back(), dump({{"software", software_json()},
                                          {"scenario", s.name},
                                          {"beam", beam_j},
                                          {"map", map_j},
                                          {"summary", summary}}));
  }
  if (wants(formats, Format::svg)) log << "note: beam maps have no SVG form; skipped\n";
  log << fmt::format("{}: {} beam map written\n", s.name, kind);
  return written;
}

int run_verify(const verify::VerifyOptions& opt, std::ostream& log) {
  const auto report = verify::run_verification(opt);
  log << fmt::format("verify: {} random points, seed {}\n", report.points, report.seed);
  for (const auto& c : report.checks) {
    log << fmt::format("{} {:<22} max residual {:.3e} (tol {:.1e})", c.passed ? "PASS" : "FAIL",
                       c.name, c.max_residual, c.tolerance);
    if (!c.passed && !c.detail.empty()) log << "  " << c.detail;
    log << "\n";
  }
  const bool ok = report.all_passed();
  log << (ok ? "all checks passed\n" : "verification FAILED\n");
  return ok ? kOk : kVerification;
}

}  // namespace nanoantenna::cli
