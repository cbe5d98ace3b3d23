#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nanoantenna/errors.hpp"
#include "nanoantenna/liouvillian.hpp"
#include "nanoantenna/pattern.hpp"

using namespace nanoantenna;
using namespace nanoantenna::pattern;
using liouvillian::CollectiveState;
using liouvillian::Element;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kU = 3.0 / (8.0 * kPi);

CollectiveState populated(Element e) {
  CollectiveState s;
  s[e] = 1.0;
  return s;
}

CollectiveState steady(double r12, double omega0, double omega_d, double phi_d) {
  collective::PairGeometry g;
  g.r12 = r12;
  const auto gen = liouvillian::build_generator(
      collective::coupling(g), collective::DriveParams::from_pairwise(omega0, omega_d, phi_d));
  return liouvillian::steady_state(gen);
}

RadiationPattern synthetic(int n, double (*f)(double)) {
  RadiationPattern p;
  for (int i = 0; i < n; ++i) {
    p.thetas.push_back(2.0 * kPi * i / n);
    p.intensities.push_back(f(p.thetas.back()));
  }
  return p;
}

// Far-field double sum over emitters: u sum_ij <S_i^+ S_j^-> exp(i k R.(r_i - r_j)),
// with the correlators read off a bare density matrix in {e1e2, e1g2, g1e2, g1g2}.
double double_sum(const Eigen::Matrix4cd& rho, double r12, double theta) {
  Eigen::Matrix4cd lower1 = Eigen::Matrix4cd::Zero(), lower2 = Eigen::Matrix4cd::Zero();
  lower1(2, 0) = 1.0;  // e1e2 -> g1e2
  lower1(3, 1) = 1.0;  // e1g2 -> g1g2
  lower2(1, 0) = 1.0;  // e1e2 -> e1g2
  lower2(3, 2) = 1.0;  // g1e2 -> g1g2
  const Eigen::Matrix4cd ops[2] = {lower1, lower2};
  const double y[2] = {-0.5 * r12, 0.5 * r12};
  const double k = 2.0 * kPi;
  std::complex<double> total = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const std::complex<double> corr = (rho * ops[i].adjoint() * ops[j]).trace();
      total += corr * std::polar(1.0, k * std::cos(theta) * (y[i] - y[j]));
    }
  return kU * total.real();
}

}  // namespace

TEST_CASE("correlation triples of pure collective states") {
  const auto s = correlations(populated(Element::ss));
  CHECK(s.pop_sum == 1.0);
  CHECK(s.pop_diff == 1.0);
  CHECK(s.coh == 0.0);
  const auto a = correlations(populated(Element::aa));
  CHECK(a.pop_sum == 1.0);
  CHECK(a.pop_diff == -1.0);
  CHECK(a.coh == 0.0);
  const auto e = correlations(populated(Element::ee));
  CHECK(e.pop_sum == 2.0);
}

TEST_CASE("ground state radiates nothing") {
  const auto p = pattern::pattern(CollectiveState::ground(), {0.25, 1.0, 1.0});
  for (double v : p.intensities) CHECK(v == 0.0);
  const auto rep = directivity(p);
  CHECK(rep.classification == Classification::isotropic_null);
  CHECK(rep.lobes.empty());
  CHECK(rep.dominance == 0.0);
  CHECK(rep.strongest() == nullptr);
}

TEST_CASE("interference factor extrema") {
  const ObservationFrame f{0.5, 0.0, 1.0, 1.0};
  const CorrelationTriple sym{1.0, 1.0, 0.0};
  const auto at = [&](const CorrelationTriple& c, double r12, double th) {
    auto fr = f;
    fr.r12 = r12;
    fr.theta = th;
    return intensity_at(c, fr);
  };
  // cos factor = 1 perpendicular to the axis.
  CHECK(at(sym, 0.5, kPi / 2) == doctest::Approx(2.0 * kU));
  CHECK(at(sym, 0.5, 3 * kPi / 2) == doctest::Approx(2.0 * kU));
  CHECK(at(sym, 0.5, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  // Pure sine term: -2 coh sin(x) is largest where sin(x) = 1.
  const CorrelationTriple coh{0.0, 0.0, -0.5};
  for (double th : {kPi / 3, 5 * kPi / 3}) CHECK(at(coh, 0.5, th) == doctest::Approx(kU));
  const double t1 = std::acos(0.25);
  CHECK(t1 / kPi == doctest::Approx(0.42).epsilon(0.005 / 0.42));
  CHECK(at(coh, 1.0, t1) == doctest::Approx(kU));
  CHECK(at(coh, 1.0, 2 * kPi - t1) == doctest::Approx(kU));
}

TEST_CASE("intensity agrees with the explicit double sum") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> r(0.05, 2.0), th(0.0, 2.0 * kPi);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Eigen::Matrix4cd a;
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) a(p, q) = {n(rng), n(rng)};
    Eigen::Matrix4cd rho = a * a.adjoint();
    rho /= rho.trace();
    const auto state = liouvillian::from_bare_basis(rho);
    const double r12 = r(rng), theta = th(rng);
    const double lhs = intensity_at(correlations(state), {r12, theta, 1.0, 1.0});
    worst = std::max(worst, std::abs(lhs - double_sum(rho, r12, theta)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("pattern sampling") {
  const auto s = steady(0.25, 0.2, 0.0, 0.0);
  const auto p = pattern::pattern(s, {0.25, 1.0, 1.0});
  REQUIRE(p.thetas.size() == static_cast<std::size_t>(kDefaultThetaSamples));
  CHECK(p.thetas[0] == 0.0);
  CHECK(p.thetas[1] == doctest::Approx(2.0 * kPi / kDefaultThetaSamples));
  CHECK(p.intensities[kDefaultThetaSamples / 4] > p.intensities[0]);
  for (int i = 1; i < kDefaultThetaSamples; ++i)
    CHECK(std::abs(p.intensities[i] - p.intensities[kDefaultThetaSamples - i]) <
          1e-10 * p.max_intensity());
  CHECK_THROWS_AS(pattern::pattern(s, {0.25, 1.0, 1.0}, 63), ValidationError);
  CHECK_THROWS_AS(pattern::pattern(s, {0.0, 1.0, 1.0}), ValidationError);
}

TEST_CASE("opposite phase differences give mirror-image patterns") {
  const auto plus = steady(0.25, 0.2, 0.0, kPi / 4);
  const auto minus = steady(0.25, 0.2, 0.0, -kPi / 4);
  const double cp = correlations(plus).coh, cm = correlations(minus).coh;
  CHECK(std::abs(cp) > 1e-6);
  CHECK(std::abs(cp + cm) < 1e-12);
  const int n = 1440;
  const auto pp = pattern::pattern(plus, {0.25, 1.0, 1.0}, n);
  const auto pm = pattern::pattern(minus, {0.25, 1.0, 1.0}, n);
  // theta -> pi - theta
  for (int i = 0; i < n; ++i) {
    const int j = ((n / 2 - i) % n + n) % n;
    CHECK(std::abs(pp.intensities[i] - pm.intensities[j]) < 1e-12);
  }
  const auto a = directivity(pp).asymmetry;
  const auto b = directivity(pm).asymmetry;
  CHECK(a == doctest::Approx(-b).epsilon(1e-9));
}

TEST_CASE("unphysical correlations are rejected") {
  CollectiveState bad;
  bad[Element::ss] = 0.1;
  bad[Element::as] = {0.0, 0.4};
  bad[Element::sa] = {0.0, -0.4};
  CHECK_THROWS_AS(pattern::pattern(bad, {0.5, 1.0, 1.0}), SolverError);
}

TEST_CASE("total rate by quadrature") {
  collective::PairGeometry g;
  for (double r : {0.1, 0.25, 0.5, 1.3}) {
    g.r12 = r;
    const auto k = collective::coupling(g);
    CHECK(total_rate(populated(Element::ss), g) == doctest::Approx(k.gamma_s).epsilon(1e-10));
    CHECK(total_rate(populated(Element::aa), g) == doctest::Approx(k.gamma_a).epsilon(1e-10));
    CHECK(total_rate(populated(Element::ee), g) == doctest::Approx(2.0).epsilon(1e-10));
  }
  // A tilted dipole changes the cross damping; the quadrature follows it.
  g.r12 = 0.3;
  g.mu_dot_r = 0.6;
  const auto k = collective::coupling(g);
  CHECK(total_rate(populated(Element::ss), g) == doctest::Approx(k.gamma_s).epsilon(1e-10));
  const auto s = steady(0.3, 0.5, 0.2, 0.3);
  g.mu_dot_r = 0.0;
  CHECK(total_rate(s, g) ==
        doctest::Approx(analytic_total_rate(s, collective::coupling(g))).epsilon(1e-10));
}

TEST_CASE("total rate reports non-convergence") {
  collective::PairGeometry g;
  g.r12 = 40.0;
  TotalRateOptions opt;
  try {
    (void)total_rate(populated(Element::ss), g, opt);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("residual") != std::string::npos);
  }
  opt.n_polar = 32;
  CHECK_THROWS_AS(total_rate(populated(Element::ss), g, opt), ValidationError);
}

TEST_CASE("directivity of synthetic patterns") {
  SUBCASE("cardioid") {
    const auto rep = directivity(synthetic(1440, [](double t) { return 1.0 + std::cos(t); }));
    REQUIRE(rep.lobe_count() == 1);
    CHECK(rep.lobes[0].direction == doctest::Approx(0.0));
    CHECK(rep.lobes[0].fwhm == doctest::Approx(kPi).epsilon(1e-6));
    CHECK(rep.asymmetry == doctest::Approx(2.0 / kPi).epsilon(1e-5));
    CHECK(rep.classification == Classification::one_sided);
    CHECK(std::isinf(rep.dominance));
  }
  SUBCASE("figure eight") {
    const auto rep = directivity(synthetic(1440, [](double t) { return std::pow(std::cos(t), 2); }));
    REQUIRE(rep.lobe_count() == 2);
    CHECK(rep.lobes[0].direction == doctest::Approx(0.0));
    CHECK(rep.lobes[1].direction == doctest::Approx(kPi));
    CHECK(rep.lobes[0].fwhm == doctest::Approx(kPi / 2).epsilon(1e-6));
    CHECK(std::abs(rep.asymmetry) < 1e-12);
    CHECK(rep.classification == Classification::two_sided);
    CHECK(rep.dominance == doctest::Approx(1.0));
  }
  SUBCASE("four-leaf") {
    const auto rep =
        directivity(synthetic(1440, [](double t) { return std::pow(std::sin(2 * t), 2); }));
    CHECK(rep.lobe_count() == 4);
  }
  SUBCASE("shallow dip merges into one lobe") {
    const auto rep = directivity(synthetic(1440, [](double t) {
      return std::exp(-std::pow(t - kPi - 0.4, 2) / 0.18) + std::exp(-std::pow(t - kPi + 0.4, 2) / 0.18);
    }));
    CHECK(rep.lobe_count() == 1);
  }
  SUBCASE("weak side lobe below the floor is ignored") {
    const auto rep = directivity(synthetic(1440, [](double t) {
      return std::exp(-8.0 * std::pow(t - kPi, 2)) + 0.01 * std::pow(std::cos(t), 2);
    }));
    CHECK(rep.lobe_count() == 1);
  }
  SUBCASE("flat pattern") {
    const auto rep = directivity(synthetic(1440, [](double) { return 0.3; }));
    CHECK(rep.classification == Classification::isotropic);
    CHECK(rep.lobes.empty());
  }
  SUBCASE("too few samples") {
    CHECK_THROWS_AS(directivity(synthetic(128, [](double) { return 1.0; })), ValidationError);
  }
}

TEST_CASE("classification names") {
  CHECK(name(Classification::one_sided) == "one-sided");
  CHECK(name(Classification::two_sided) == "two-sided");
  CHECK(name(Classification::mixed) == "mixed");
  CHECK(name(Classification::isotropic) == "isotropic");
  CHECK(name(Classification::isotropic_null) == "isotropic-null");
}

TEST_CASE("interference angles") {
  const auto half = interference_angles(0.5, 0.0);
  REQUIRE(half.size() == 2);
  CHECK(half[0] == doctest::Approx(kPi / 2));
  CHECK(half[1] == doctest::Approx(3 * kPi / 2));

  // m = 0 gives cos(theta) = 1/4; m = -1 adds cos(theta) = -3/4.
  const auto one = interference_angles(1.0, kPi / 4);
  REQUIRE(one.size() == 4);
  CHECK(one[0] / kPi == doctest::Approx(0.42).epsilon(0.005 / 0.42));
  CHECK(std::cos(one[1]) == doctest::Approx(-0.75));
  CHECK(std::cos(one[2]) == doctest::Approx(-0.75));
  CHECK(one[3] / kPi == doctest::Approx(1.58).epsilon(0.005 / 1.58));

  CHECK(interference_angles(0.25, kPi / 2).empty());

  // Larger separations admit several orders, each solving the phase condition.
  for (double t : interference_angles(2.3, 0.4)) {
    const double x = 2.0 * kPi * 2.3 * std::cos(t) - 0.8;
    CHECK(std::abs(std::remainder(x, 2.0 * kPi)) < 1e-12);
  }
  CHECK(interference_angles(2.3, 0.4).size() == 10);
  CHECK_THROWS_AS(interference_angles(0.0, 0.0), ValidationError);
}
