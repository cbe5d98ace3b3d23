#include "nanoantenna/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "nanoantenna/errors.hpp"
#include "nanoantenna/oracle.hpp"
#include "nanoantenna/pattern.hpp"

namespace nanoantenna::verify {

namespace {

using collective::CollectiveCoupling;
using collective::DriveParams;
using liouvillian::Element;

constexpr double kPi = std::numbers::pi;

CheckResult make_check(std::string name, double residual, double tol, std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.max_residual = residual;
  c.tolerance = tol;
  c.passed = residual <= tol;
  c.detail = std::move(detail);
  return c;
}

DriveParams explicit_drive(double m1, double p1, double m2, double p2, double detuning) {
  DriveParams d;
  d.rabi1 = beam::ComplexRabi::polar(m1, p1);
  d.rabi2 = beam::ComplexRabi::polar(m2, p2);
  d.detuning = detuning;
  return d;
}

// Worst failure first; a thrown solver error counts as an infinite residual.
template <typename F>
CheckResult sweep_check(const std::string& name, const std::vector<ParameterPoint>& points,
                        double tol, F&& per_point) {
  double worst = 0.0;
  std::string detail;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::string note;
    double r = 0.0;
    try {
      r = per_point(points[i], note);
    } catch (const SolverError& e) {
      r = std::numeric_limits<double>::infinity();
      note = e.what();
    }
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    if (r > worst) {
      worst = r;
      detail = "point " + std::to_string(i) + (note.empty() ? "" : ": " + note);
    }
  }
  return make_check(name, worst, tol, worst <= tol ? std::string{} : detail);
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<ParameterPoint> random_points(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r12(0.1, 2.0);
  std::uniform_real_distribution<double> mag(0.0, 1.0);
  std::uniform_real_distribution<double> phi_d(-0.5 * kPi, 0.5 * kPi);
  std::uniform_real_distribution<double> global(-kPi, kPi);
  std::uniform_real_distribution<double> det(-2.0, 2.0);
  std::vector<ParameterPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ParameterPoint pt;
    pt.geometry.r12 = r12(rng);
    const double m1 = mag(rng);
    const double m2 = mag(rng);
    const double pd = phi_d(rng);
    const double pg = global(rng);
    const double d = det(rng);
    pt.drive = explicit_drive(m1, pg + pd, m2, pg - pd, d);
    out.push_back(pt);
  }
  return out;
}

VerificationReport run_verification(const VerifyOptions& options) {
  VerificationReport report;
  report.seed = options.seed;
  report.points = options.quick ? 10 : 50;
  const auto points = random_points(report.points, options.seed);
  const auto& gopts = options.generator;

  report.checks.push_back(sweep_check(
      "oracle-equivalence", points, 1e-8, [&](const ParameterPoint& pt, std::string&) {
        const auto c = collective::coupling(pt.geometry);
        const auto y = liouvillian::steady_state(liouvillian::build_generator(c, pt.drive, gopts));
        const auto ours = liouvillian::to_bare_basis(y, pt.drive.global_phase());
        const auto ref = oracle::bare_steady_state(oracle::build_bare(c, pt.drive));
        return (ours - ref).cwiseAbs().maxCoeff();
      }));

  report.checks.push_back(sweep_check(
      "generator-audit", points, 1e-12, [&](const ParameterPoint& pt, std::string& note) {
        const auto c = collective::coupling(pt.geometry);
        const auto gen = liouvillian::build_generator(c, pt.drive, gopts);
        const auto bad = oracle::audit(gen.m, gen.p, oracle::collective_projection(c, pt.drive));
        if (bad.empty()) return 0.0;
        std::ostringstream os;
        os << bad.front().entry << " expected " << bad.front().expected << " got "
           << bad.front().actual << " (" << bad.size() << " mismatching entries)";
        note = os.str();
        return std::abs(bad.front().expected - bad.front().actual);
      }));

  report.checks.push_back(sweep_check(
      "sum-rule", points, 1e-6, [&](const ParameterPoint& pt, std::string&) {
        const auto c = collective::coupling(pt.geometry);
        const auto y = liouvillian::steady_state(liouvillian::build_generator(c, pt.drive, gopts));
        const double quad = pattern::total_rate(y, pt.geometry);
        const double exact = pattern::analytic_total_rate(y, c);
        return std::abs(quad - exact) / std::max(std::abs(exact), 1e-300);
      }));

  {
    collective::PairGeometry near;
    near.r12 = 1e-3;
    report.checks.push_back(make_check(
        "limit-contact", std::abs(collective::coupling(near).gamma12 - 1.0), 1e-4,
        "gamma12 -> gamma at r12 = 1e-3"));
    collective::PairGeometry half;
    half.r12 = 0.5;
    report.checks.push_back(make_check(
        "limit-half-wavelength", std::abs(collective::coupling(half).gamma12 + 1.5 / (kPi * kPi)),
        1e-12, "gamma12 = -3 gamma / (2 pi^2) at r12 = 1/2"));
    double sum_residual = 0.0;
    for (double r : {0.05, 0.25, 0.5, 0.75, 1.0, 1.7}) {
      collective::PairGeometry g;
      g.r12 = r;
      const auto c = collective::coupling(g);
      sum_residual = std::max(sum_residual, std::abs(c.gamma_s + c.gamma_a - 2.0 * c.gamma));
    }
    report.checks.push_back(make_check("channel-sum", sum_residual, 0.0,
                                       "gamma_s + gamma_a = 2 gamma exactly"));
  }

  {
    double worst = 0.0;
    std::string detail;
    const auto note = [&](double r, const std::string& what) {
      if (!(r <= worst)) {
        worst = r;
        detail = what;
      }
    };
    try {
      const auto c = collective::coupling(collective::PairGeometry{});
      const auto y0 = liouvillian::steady_state(
          liouvillian::build_generator(c, DriveParams::from_pairwise(0, 0, 0), gopts));
      note(y0.to_vector().cwiseAbs().maxCoeff(), "undriven steady state");
      const auto ys = liouvillian::steady_state(
          liouvillian::build_generator(c, DriveParams::from_pairwise(0.3, 0.0, 0.0, 0.4), gopts));
      note(std::abs(ys[Element::aa] - ys[Element::ee]), "rho_aa - rho_ee with omega_beta = 0");
      const auto yz = liouvillian::steady_state(
          liouvillian::build_generator(c, DriveParams::from_pairwise(0.2, 0.0, 0.0), gopts));
      note(std::abs(yz[Element::as].imag()), "Im rho_as at phi_d = 0");
    } catch (const SolverError& e) {
      note(std::numeric_limits<double>::infinity(), e.what());
    }
    report.checks.push_back(make_check("forced-identities", worst, 1e-10,
                                       worst <= 1e-10 ? std::string{} : detail));
  }

  {
    // Independent emitters: atom 1 follows the optical Bloch steady state.
    double worst = 0.0;
    std::string detail;
    const auto c = CollectiveCoupling::from_rates(1.0, 0.0, 0.0);
    for (double omega : {0.1, 0.5, 1.0, 3.0}) {
      for (double delta : {0.0, 0.7, -1.3}) {
        const auto drive = explicit_drive(omega, 0.3, 0.0, 0.0, delta);
        const double expected = 0.25 * omega * omega /
                                (delta * delta + 0.25 + 0.5 * omega * omega);
        try {
          const auto y = liouvillian::steady_state(liouvillian::build_generator(c, drive, gopts));
          const auto rho = liouvillian::to_bare_basis(y, drive.global_phase());
          const double atom1 = (rho(0, 0) + rho(1, 1)).real();
          const double atom2 = (rho(0, 0) + rho(2, 2)).real();
          const double r = std::max(std::abs(atom1 - expected), std::abs(atom2));
          if (r > worst) {
            worst = r;
            detail = "omega = " + std::to_string(omega) + ", detuning = " + std::to_string(delta);
          }
        } catch (const SolverError& e) {
          worst = std::numeric_limits<double>::infinity();
          detail = e.what();
        }
      }
    }
    report.checks.push_back(make_check("single-emitter-bloch", worst, 1e-10,
                                       worst <= 1e-10 ? std::string{} : detail));
  }
  return report;
}

}  // namespace nanoantenna::verify
