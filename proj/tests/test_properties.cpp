#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nanoantenna/liouvillian.hpp"
#include "nanoantenna/pattern.hpp"
#include "nanoantenna/verify.hpp"

using namespace nanoantenna;
using liouvillian::CollectiveState;
using liouvillian::Element;

namespace {

constexpr double kPi = std::numbers::pi;

CollectiveState solve(const collective::PairGeometry& g, const collective::DriveParams& d) {
  return liouvillian::steady_state(liouvillian::build_generator(collective::coupling(g), d));
}

CollectiveState solve_pairwise(double r12, double omega0, double omega_d, double phi_d) {
  collective::PairGeometry g;
  g.r12 = r12;
  return solve(g, collective::DriveParams::from_pairwise(omega0, omega_d, phi_d));
}

double asymmetry(const CollectiveState& s, double r12) {
  return pattern::directivity(pattern::pattern(s, {r12, 1.0, 1.0})).asymmetry;
}

}  // namespace

TEST_CASE("steady states at random parameters are physical") {
  for (const auto& pt : verify::random_points(200, 1234)) {
    const auto s = solve(pt.geometry, pt.drive);
    const auto bad = s.invariant_violation(1e-10);
    INFO(bad.value_or(""));
    CHECK_FALSE(bad.has_value());

    const auto corr = pattern::correlations(s);
    CHECK(corr.pop_sum >= 0.0);
    CHECK(std::abs(corr.pop_diff) <= corr.pop_sum + 1e-12);

    double lo = 0.0, hi = 0.0;
    pattern::ObservationFrame f{pt.geometry.r12, 0.0, 1.0, 1.0};
    for (int i = 0; i < 720; ++i) {
      f.theta = 2.0 * kPi * i / 720;
      const double v = pattern::intensity_at(corr, f);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      pattern::ObservationFrame mirror = f;
      mirror.theta = 2.0 * kPi - f.theta;
      CHECK(std::abs(v - pattern::intensity_at(corr, mirror)) <= 1e-10 * std::max(hi, 1e-300));
    }
    CHECK(lo >= -1e-10 * hi);
  }
}

TEST_CASE("trajectories conserve trace and Hermiticity") {
  for (const auto& pt : verify::random_points(5, 77)) {
    const auto gen = liouvillian::build_generator(collective::coupling(pt.geometry), pt.drive);
    for (const auto& step : liouvillian::time_evolve(gen, CollectiveState::ground(), 20.0, 0.05)) {
      const auto dm = liouvillian::to_bare_basis(step.state);
      CHECK(std::abs(dm.trace() - 1.0) < 1e-9);
      CHECK((dm - dm.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("even multiples of pi/4 give two-sided emission") {
  for (double r12 : {0.25, 0.5, 0.75, 1.0}) {
    for (double phi : {0.0, kPi / 2, -kPi / 2, kPi}) {
      const double a = asymmetry(solve_pairwise(r12, 0.2, 0.0, phi), r12);
      INFO("r12=" << r12 << " phi_d/pi=" << phi / kPi << " asymmetry=" << a);
      CHECK(std::abs(a) < 0.02);
    }
  }
}

TEST_CASE("odd multiples of pi/4 give one-sided emission that flips with the phase") {
  for (double r12 : {0.25, 0.5, 0.75, 1.0}) {
    for (double phi : {kPi / 4, 3 * kPi / 4}) {
      const double plus = asymmetry(solve_pairwise(r12, 0.2, 0.0, phi), r12);
      const double minus = asymmetry(solve_pairwise(r12, 0.2, 0.0, -phi), r12);
      INFO("r12=" << r12 << " phi_d/pi=" << phi / kPi << " asymmetry=" << plus << " / " << minus);
      CHECK(std::abs(plus) > 0.1);
      CHECK(plus * minus < 0.0);
      CHECK(plus == doctest::Approx(-minus).epsilon(1e-9));
    }
  }
}

TEST_CASE("asymmetry appears exactly when the antisymmetric coherence does") {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> r(0.1, 2.0), u(0.0, 1.0), ph(-kPi / 2, kPi / 2);
  for (int i = 0; i < 100; ++i) {
    const double r12 = r(rng);
    const double om0 = u(rng);
    const bool in_phase = i % 2 == 0;
    const double omd = in_phase ? 0.0 : om0 * (2.0 * u(rng) - 1.0);
    const auto s = solve_pairwise(r12, om0, omd, in_phase ? 0.0 : ph(rng));
    const double coh = s[Element::as].imag();
    const double a = asymmetry(s, r12);
    INFO("r12=" << r12 << " coh=" << coh << " asymmetry=" << a);
    if (in_phase) {
      CHECK(std::abs(coh) <= 1e-12);
      CHECK(std::abs(a) < 1e-12);
    } else if (std::abs(coh) > 1e-6) {
      CHECK(std::abs(a) > 1e-9);
    }
  }
}

TEST_CASE("swapping the emitters mirrors the pattern") {
  for (const auto& pt : verify::random_points(20, 555)) {
    const auto a = pattern::correlations(solve(pt.geometry, pt.drive));
    const auto b = pattern::correlations(solve(pt.geometry, pt.drive.swapped()));
    CHECK(a.pop_sum == doctest::Approx(b.pop_sum).epsilon(1e-10));
    CHECK(a.pop_diff == doctest::Approx(b.pop_diff).epsilon(1e-10));
    CHECK(std::abs(a.coh + b.coh) < 1e-12);
  }
}
