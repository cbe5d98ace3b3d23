#include "nanoantenna/collective.hpp"

#include <cmath>
#include <numbers>

#include "nanoantenna/errors.hpp"

namespace nanoantenna::collective {

void PairGeometry::validate() const {
  if (!(r12 > 0.0) || !std::isfinite(r12))
    throw ValidationError("geometry.r12 must be > 0 (couplings diverge at contact)");
  if (!(std::abs(mu_dot_r) <= 1.0)) throw ValidationError("geometry.mu_dot_r must lie in [-1, 1]");
  if (!(gamma > 0.0)) throw ValidationError("geometry.gamma must be > 0");
  if (!(wavelength > 0.0)) throw ValidationError("geometry.wavelength must be > 0");
}

CollectiveCoupling CollectiveCoupling::from_rates(double gamma, double omega12, double gamma12) {
  CollectiveCoupling c;
  c.gamma = gamma;
  c.omega12 = omega12;
  c.gamma12 = gamma12;
  // The subtraction from 2 gamma is exact because the first rate lies in
  // [gamma, 2 gamma].
  if (gamma12 >= 0.0) {
    c.gamma_s = gamma + gamma12;
    c.gamma_a = 2.0 * gamma - c.gamma_s;
  } else {
    c.gamma_a = gamma - gamma12;
    c.gamma_s = 2.0 * gamma - c.gamma_a;
  }
  return c;
}

CollectiveCoupling coupling(const PairGeometry& geom) {
  geom.validate();
  const double x = 2.0 * std::numbers::pi * geom.r12 / geom.wavelength;
  const double c2 = geom.mu_dot_r * geom.mu_dot_r;
  const double transverse = 1.0 - c2;
  const double longitudinal = 1.0 - 3.0 * c2;
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double x2 = x * x;
  const double x3 = x2 * x;

  const double omega12 =
      0.75 * geom.gamma * (-transverse * c / x + longitudinal * (s / x2 + c / x3));
  const double gamma12 =
      1.5 * geom.gamma * (transverse * s / x + longitudinal * (c / x2 - s / x3));
  return CollectiveCoupling::from_rates(geom.gamma, omega12, gamma12);
}

DriveParams DriveParams::from_pairwise(double omega0, double omega_d, double phi_d,
                                       double detuning) {
  if (!(omega0 >= 0.0)) throw ValidationError("drive.omega0 must be >= 0");
  if (!(std::abs(omega_d) <= omega0))
    throw ValidationError("drive.omega_d must satisfy |omega_d| <= omega0");
  DriveParams d;
  d.rabi1 = ComplexRabi::polar(omega0 + omega_d, phi_d);
  d.rabi2 = ComplexRabi::polar(omega0 - omega_d, -phi_d);
  d.detuning = detuning;
  return d;
}

std::complex<double> DriveParams::omega_alpha() const {
  using namespace std::complex_literals;
  const double pd = phi_d();
  return (omega_d() * std::sin(pd) - 1i * omega0() * std::cos(pd)) / std::numbers::sqrt2;
}

std::complex<double> DriveParams::omega_beta() const {
  using namespace std::complex_literals;
  const double pd = phi_d();
  return (omega0() * std::sin(pd) - 1i * omega_d() * std::cos(pd)) / std::numbers::sqrt2;
}

void DriveParams::validate() const {
  if (!(rabi1.magnitude >= 0.0) || !(rabi2.magnitude >= 0.0))
    throw ValidationError("drive: Rabi magnitudes must be >= 0");
  if (!std::isfinite(rabi1.phase) || !std::isfinite(rabi2.phase))
    throw ValidationError("drive: Rabi phases must be finite");
  if (!std::isfinite(detuning)) throw ValidationError("drive.detuning must be finite");
}

ChannelRabi decompose_drive(const DriveParams& drive) {
  return {drive.omega_alpha(), drive.omega_beta()};
}

}  // namespace nanoantenna::collective
