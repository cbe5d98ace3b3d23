#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nanoantenna/collective.hpp"
#include "nanoantenna/errors.hpp"

using namespace nanoantenna;
using namespace nanoantenna::collective;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent transcription of the dipole-dipole formulas in long double.
struct Reference {
  long double gamma12;
  long double omega12;
};

Reference reference(long double r12, long double c) {
  const long double x = 2.0L * std::numbers::pi_v<long double> * r12;
  const long double s = std::sin(x), co = std::cos(x);
  const long double a = 1.0L - c * c, b = 1.0L - 3.0L * c * c;
  return {1.5L * (a * s / x + b * (co / (x * x) - s / (x * x * x))),
          0.75L * (-a * co / x + b * (s / (x * x) + co / (x * x * x)))};
}

PairGeometry geom(double r12, double mu_dot_r = 0.0) {
  PairGeometry g;
  g.r12 = r12;
  g.mu_dot_r = mu_dot_r;
  return g;
}

}  // namespace

TEST_CASE("coupling matches an independent transcription") {
  for (double r : {0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.7}) {
    for (double c : {0.0, 0.3, -0.6, 1.0}) {
      const auto k = coupling(geom(r, c));
      const auto ref = reference(r, c);
      CHECK(k.gamma12 == doctest::Approx(static_cast<double>(ref.gamma12)).epsilon(1e-12));
      CHECK(k.omega12 == doctest::Approx(static_cast<double>(ref.omega12)).epsilon(1e-12));
    }
  }
}

TEST_CASE("cross damping tends to gamma at contact") {
  const auto k = coupling(geom(1e-3));
  CHECK(std::abs(k.gamma12 - 1.0) < 1e-4);
}

TEST_CASE("cross damping at half a wavelength") {
  const auto k = coupling(geom(0.5));
  CHECK(std::abs(k.gamma12 + 1.5 / (kPi * kPi)) < 1e-12);
  CHECK(k.gamma12 == doctest::Approx(-0.1520).epsilon(1e-3));
}

TEST_CASE("level shift approaches its near-field asymptote") {
  double prev = 0.0;
  for (double r : {1e-2, 1e-3, 1e-4}) {
    const double x = 2.0 * kPi * r;
    const double ratio = coupling(geom(r)).omega12 / (0.75 / (x * x * x));
    CHECK(std::abs(ratio - 1.0) < 0.01);
    if (prev != 0.0) CHECK(std::abs(ratio - 1.0) < std::abs(prev - 1.0));
    prev = ratio;
  }
}

TEST_CASE("channel rates: exact sum and product identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> r(0.01, 3.0), c(-1.0, 1.0), g(0.1, 5.0);
  for (int i = 0; i < 500; ++i) {
    auto geo = geom(r(rng), c(rng));
    geo.gamma = g(rng);
    const auto k = coupling(geo);
    CHECK(k.gamma_s + k.gamma_a == 2.0 * geo.gamma);
    CHECK(k.gamma_s * k.gamma_a ==
          doctest::Approx(geo.gamma * geo.gamma - k.gamma12 * k.gamma12).epsilon(1e-12));
    CHECK(std::abs(k.gamma12) <= geo.gamma * (1.0 + 1e-12));
  }
}

TEST_CASE("coupling is even in the dipole-axis cosine") {
  for (double r : {0.2, 0.9}) {
    for (double c : {0.1, 0.5, 0.95}) {
      const auto a = coupling(geom(r, c));
      const auto b = coupling(geom(r, -c));
      CHECK(a.gamma12 == b.gamma12);
      CHECK(a.omega12 == b.omega12);
    }
  }
}

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS(coupling(geom(0.0)), ValidationError);
  CHECK_THROWS_AS(coupling(geom(-1.0)), ValidationError);
  CHECK_THROWS_AS(coupling(geom(0.3, 1.5)), ValidationError);
}

TEST_CASE("decompose_drive examples") {
  const double om = 0.4;
  SUBCASE("in-phase equal drive") {
    DriveParams d{ComplexRabi::polar(om, 0.0), ComplexRabi::polar(om, 0.0), 0.0};
    const auto ch = decompose_drive(d);
    CHECK(std::abs(ch.alpha - std::complex<double>(0.0, -om / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(ch.beta) < 1e-15);
  }
  SUBCASE("anti-phase drive excites only the antisymmetric channel") {
    DriveParams d{ComplexRabi::polar(om, kPi), ComplexRabi::polar(om, 0.0), 0.0};
    CHECK(d.phi_d() == doctest::Approx(kPi / 2));
    const auto ch = decompose_drive(d);
    CHECK(std::abs(ch.alpha) < 1e-15);
    CHECK(std::abs(ch.beta - om / std::sqrt(2.0)) < 1e-15);
  }
  SUBCASE("single-atom drive gives equal channel frequencies") {
    for (double ph : {0.0, 0.7, -2.0}) {
      DriveParams d{ComplexRabi::polar(om, ph), ComplexRabi::polar(0.0, 0.0), 0.0};
      const auto ch = decompose_drive(d);
      CHECK(std::abs(ch.alpha - ch.beta) < 1e-15);
    }
  }
}

TEST_CASE("pairwise construction round-trips") {
  const auto d = DriveParams::from_pairwise(0.3, 0.1, 0.4, -0.5);
  CHECK(d.rabi1.magnitude == doctest::Approx(0.4));
  CHECK(d.rabi2.magnitude == doctest::Approx(0.2));
  CHECK(d.omega0() == doctest::Approx(0.3));
  CHECK(d.omega_d() == doctest::Approx(0.1));
  CHECK(d.phi_d() == doctest::Approx(0.4));
  CHECK(d.global_phase() == doctest::Approx(0.0));
  CHECK(d.detuning == -0.5);
}

TEST_CASE("channel power identity and emitter swap") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mag(0.0, 1.0), ph(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    DriveParams d{ComplexRabi::polar(mag(rng), ph(rng)), ComplexRabi::polar(mag(rng), ph(rng)),
                  0.0};
    const auto ch = decompose_drive(d);
    const double lhs = std::norm(ch.alpha) + std::norm(ch.beta);
    const double rhs = (std::pow(d.rabi1.magnitude, 2) + std::pow(d.rabi2.magnitude, 2)) / 4.0;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    const auto s = d.swapped();
    CHECK(s.phi_d() == doctest::Approx(-d.phi_d()));
    CHECK(s.omega_d() == doctest::Approx(-d.omega_d()));
    CHECK(s.omega0() == doctest::Approx(d.omega0()));
  }
}

TEST_CASE("drive validation") {
  DriveParams bad{ComplexRabi::polar(std::nan(""), 0.0), ComplexRabi::polar(0.1, 0.0), 0.0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CHECK_NOTHROW(DriveParams::from_pairwise(0.2, 0.0, 0.1).validate());
}
