#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace nanoantenna::beam {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// A single Laguerre-Gaussian mode. Lengths are in units of the transition
/// wavelength, rates in units of the single-emitter decay rate.
struct BeamSpec {
  int l = 0;              ///< azimuthal index (helicity), may be negative
  int p = 0;              ///< radial index, p >= 0
  double w0 = 1.0;        ///< waist at z = 0
  double omega00 = 1.0;   ///< peak Rabi scale
  double wavelength = 1.0;
  Vec2 axis_offset{};     ///< transverse position of the beam axis

  /// Peak Rabi scale from beam power: omega00 = gamma * sqrt(2 P / (pi w0^2 I_s)).
  static BeamSpec from_power(int l, int p, double w0, double power,
                             double saturation_intensity, double gamma = 1.0,
                             double wavelength = 1.0);

  void validate() const;
  double wavenumber() const;
  double rayleigh_range() const;  ///< pi w0^2 / lambda
  double waist_at(double z) const;
};

struct TransversePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct ComplexRabi {
  double magnitude = 0.0;
  double phase = 0.0;  ///< radians in (-pi, pi]

  static ComplexRabi from_complex(std::complex<double> value);
  static ComplexRabi polar(double magnitude, double phase);
  std::complex<double> value() const { return std::polar(magnitude, phase); }
};

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

/// Associated Laguerre polynomial L_p^alpha(x) by the upward three-term recurrence.
double laguerre(int p, int alpha, double x);

/// Rabi frequency of the mode at a point, relative to the (offset) beam axis.
/// Includes the Gaussian envelope exp(-r^2/w^2(z)); no Gouy or curvature phase.
ComplexRabi lg_rabi(const BeamSpec& beam, const TransversePoint& pt);

/// Emitters at (0, +r12/2, 0) and (0, -r12/2, 0) with the beam axis at
/// x = -d, i.e. both emitters sit a lateral distance d from the axis.
/// Returns (emitter at +r12/2, emitter at -r12/2). Requires p = 0.
std::pair<ComplexRabi, ComplexRabi> displaced_pair_rabi(const BeamSpec& beam,
                                                        double d, double r12);

/// 2 l arctan(r12 / 2d), with the d = 0 limit l*pi.
double phase_difference(int l, double r12, double d);

/// Emitter separation for a pi phase difference with both emitters on the
/// intensity ring: r12 = w0 sqrt(2|l|) sin(pi / 2|l|).
double pi_phase_separation(int l, double w0);
double pi_phase_separation_large_l(int l, double w0);  ///< w0 pi / sqrt(2|l|)
double waist_for_pi_phase(int l, double r12_target);
double waist_for_pi_phase_large_l(int l, double r12_target);

/// Radius of the intensity ring of a p = 0 mode, w0 sqrt(|l|/2).
double ring_radius(int l, double w0);

/// First `count` radial maxima of |Omega|^2 on the z = 0 plane, increasing radius.
std::vector<double> radial_intensity_maxima(const BeamSpec& beam, int count);

/// Optical Ferris wheel: coherent sum of the +|l| and -|l| modes, the second
/// shifted in frequency by delta_omega. Petal intensity ~ cos^2(l phi - delta_omega t / 2).
ComplexRabi ferris_rabi(const BeamSpec& beam, const TransversePoint& pt,
                        double delta_omega, double t);

double ferris_rotation_frequency(int l, double delta_omega);

/// Azimuthal offset from a petal maximum at which |Omega| drops by `ratio`.
double ferris_offset_for_ratio(int l, double ratio);

/// Emitter separation for a Ferris-wheel placement at azimuthal offset `offset`:
/// (w0/2) sqrt(|l|/2) sin(offset/2).
double ferris_pair_separation(int l, double w0, double offset);

}  // namespace nanoantenna::beam
