#pragma once

#include <complex>

#include "nanoantenna/beam.hpp"

namespace nanoantenna::collective {

using beam::ComplexRabi;

/// Two emitters a distance r12 apart. mu_dot_r is the cosine between the dipole
/// unit vector and the interatomic axis; the default is dipoles perpendicular
/// to the axis.
struct PairGeometry {
  double r12 = 0.25;
  double mu_dot_r = 0.0;
  double gamma = 1.0;
  double wavelength = 1.0;

  void validate() const;
};

struct CollectiveCoupling {
  double gamma = 1.0;     ///< single-emitter decay rate
  double omega12 = 0.0;   ///< dipole-dipole level shift
  double gamma12 = 0.0;   ///< cross damping
  double gamma_s = 1.0;   ///< gamma + gamma12, symmetric channel
  double gamma_a = 1.0;   ///< gamma - gamma12, antisymmetric channel

  /// Builds the channel rates so that gamma_s + gamma_a == 2 gamma holds
  /// exactly in floating point.
  static CollectiveCoupling from_rates(double gamma, double omega12, double gamma12);
};

CollectiveCoupling coupling(const PairGeometry& geom);

/// Complex Rabi frequencies at the two emitters plus the laser detuning
/// Delta_L = omega_0 - omega_L.
struct DriveParams {
  ComplexRabi rabi1{};
  ComplexRabi rabi2{};
  double detuning = 0.0;

  /// Omega_1 = (omega0 + omega_d) e^{i phi_d},  Omega_2 = (omega0 - omega_d) e^{-i phi_d}.
  static DriveParams from_pairwise(double omega0, double omega_d, double phi_d,
                                   double detuning = 0.0);

  double omega0() const { return 0.5 * (rabi1.magnitude + rabi2.magnitude); }
  double omega_d() const { return 0.5 * (rabi1.magnitude - rabi2.magnitude); }
  double phi_d() const { return 0.5 * (rabi1.phase - rabi2.phase); }
  /// (phi_1 + phi_2)/2, dropped from the collective equations.
  double global_phase() const { return 0.5 * (rabi1.phase + rabi2.phase); }

  std::complex<double> omega_alpha() const;
  std::complex<double> omega_beta() const;

  DriveParams swapped() const { return {rabi2, rabi1, detuning}; }
  void validate() const;
};

struct ChannelRabi {
  std::complex<double> alpha;  ///< drives g <-> s <-> e
  std::complex<double> beta;   ///< drives g <-> a <-> e
};

ChannelRabi decompose_drive(const DriveParams& drive);

}  // namespace nanoantenna::collective
