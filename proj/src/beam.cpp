#include "nanoantenna/beam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nanoantenna/errors.hpp"

namespace nanoantenna::beam {

namespace {

constexpr double kPi = std::numbers::pi;

// log sqrt(p! / (|l| + p)!)
double log_mode_norm(int l, int p) {
  return 0.5 * (std::lgamma(p + 1.0) - std::lgamma(std::abs(l) + p + 1.0));
}

// Magnitude of the radial factor for a mode centred on the axis, evaluated in
// log space so |l| in the hundreds does not overflow (r sqrt2 / w)^|l|.
double radial_magnitude(const BeamSpec& beam, double r, double z) {
  const int al = std::abs(beam.l);
  if (r == 0.0 && al != 0) return 0.0;
  const double w = beam.waist_at(z);
  const double zr = beam.rayleigh_range();
  const double arg = 2.0 * r * r / (w * w);
  const double poly = laguerre(beam.p, al, arg);
  if (poly == 0.0) return 0.0;
  double log_mag = std::log(beam.omega00) - 0.5 * std::log1p(z * z / (zr * zr)) +
                   log_mode_norm(beam.l, beam.p) - r * r / (w * w) +
                   std::log(std::abs(poly));
  if (al != 0) log_mag += al * std::log(r * std::sqrt(2.0) / w);
  return std::exp(log_mag) * (poly < 0.0 ? -1.0 : 1.0);
}

}  // namespace

BeamSpec BeamSpec::from_power(int l, int p, double w0, double power,
                              double saturation_intensity, double gamma,
                              double wavelength) {
  if (power < 0.0) throw ValidationError("beam.power must be >= 0");
  if (saturation_intensity <= 0.0)
    throw ValidationError("beam.saturation_intensity must be > 0");
  if (w0 <= 0.0) throw ValidationError("beam.w0 must be > 0");
  BeamSpec b;
  b.l = l;
  b.p = p;
  b.w0 = w0;
  b.wavelength = wavelength;
  b.omega00 = gamma * std::sqrt(2.0 * power / (kPi * w0 * w0 * saturation_intensity));
  b.validate();
  return b;
}

void BeamSpec::validate() const {
  if (!(w0 > 0.0) || !std::isfinite(w0)) throw ValidationError("beam.w0 must be > 0");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength))
    throw ValidationError("beam.wavelength must be > 0");
  if (p < 0) throw ValidationError("beam.p must be >= 0");
  if (!(omega00 >= 0.0) || !std::isfinite(omega00))
    throw ValidationError("beam.omega00 must be >= 0");
}

double BeamSpec::wavenumber() const { return 2.0 * kPi / wavelength; }

double BeamSpec::rayleigh_range() const { return kPi * w0 * w0 / wavelength; }

double BeamSpec::waist_at(double z) const {
  const double zr = rayleigh_range();
  return w0 * std::sqrt(1.0 + z * z / (zr * zr));
}

ComplexRabi ComplexRabi::from_complex(std::complex<double> value) {
  return {std::abs(value), wrap_phase(std::arg(value))};
}

ComplexRabi ComplexRabi::polar(double magnitude, double phase) {
  if (magnitude < 0.0) return {-magnitude, wrap_phase(phase + kPi)};
  return {magnitude, wrap_phase(phase)};
}

double wrap_phase(double phase) {
  double w = std::remainder(phase, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double laguerre(int p, int alpha, double x) {
  if (p < 0) throw ValidationError("laguerre: p must be >= 0, got " + std::to_string(p));
  if (alpha < 0)
    throw ValidationError("laguerre: alpha must be >= 0, got " + std::to_string(alpha));
  double prev = 1.0;
  if (p == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

ComplexRabi lg_rabi(const BeamSpec& beam, const TransversePoint& pt) {
  beam.validate();
  const double dx = pt.x - beam.axis_offset.x;
  const double dy = pt.y - beam.axis_offset.y;
  const double r = std::hypot(dx, dy);
  const double amp = radial_magnitude(beam, r, pt.z);
  if (amp == 0.0) return {0.0, 0.0};
  const double phi = std::atan2(dy, dx);
  return ComplexRabi::polar(amp, beam.l * phi + beam.wavenumber() * pt.z);
}

std::pair<ComplexRabi, ComplexRabi> displaced_pair_rabi(const BeamSpec& beam,
                                                        double d, double r12) {
  if (beam.p != 0) throw ValidationError("displaced_pair_rabi requires p = 0");
  if (d < 0.0) throw ValidationError("displaced_pair_rabi: d must be >= 0");
  if (!(r12 > 0.0)) throw ValidationError("displaced_pair_rabi: r12 must be > 0");
  BeamSpec shifted = beam;
  shifted.axis_offset = {beam.axis_offset.x - d, beam.axis_offset.y};
  const auto upper = lg_rabi(shifted, {0.0, 0.5 * r12, 0.0});
  const auto lower = lg_rabi(shifted, {0.0, -0.5 * r12, 0.0});
  return {upper, lower};
}

double phase_difference(int l, double r12, double d) {
  if (d < 0.0) throw ValidationError("phase_difference: d must be >= 0");
  if (d == 0.0) return l * kPi;
  return 2.0 * l * std::atan(r12 / (2.0 * d));
}

double pi_phase_separation(int l, double w0) {
  if (l == 0) throw ValidationError("pi-phase placement needs l != 0");
  const double al = std::abs(l);
  return w0 * std::sqrt(2.0 * al) * std::sin(kPi / (2.0 * al));
}

double pi_phase_separation_large_l(int l, double w0) {
  if (l == 0) throw ValidationError("pi-phase placement needs l != 0");
  return w0 * kPi / std::sqrt(2.0 * std::abs(l));
}

double waist_for_pi_phase(int l, double r12_target) {
  if (!(r12_target > 0.0)) throw ValidationError("waist_for_pi_phase: r12 must be > 0");
  return r12_target / pi_phase_separation(l, 1.0);
}

double waist_for_pi_phase_large_l(int l, double r12_target) {
  if (!(r12_target > 0.0)) throw ValidationError("waist_for_pi_phase: r12 must be > 0");
  return r12_target / pi_phase_separation_large_l(l, 1.0);
}

double ring_radius(int l, double w0) { return w0 * std::sqrt(std::abs(l) / 2.0); }

namespace {

// Sign-carrying radial derivative of |Omega|^2 up to a positive factor, in
// terms of x = 2 r^2 / w0^2:  L (|l| L + 2 x L' - x L),  L' = -L_{p-1}^{|l|+1}.
double radial_slope(int l, int p, double x) {
  const int al = std::abs(l);
  const double lag = laguerre(p, al, x);
  const double dlag = p > 0 ? -laguerre(p - 1, al + 1, x) : 0.0;
  return lag * (al * lag + 2.0 * x * dlag - x * lag);
}

}  // namespace

std::vector<double> radial_intensity_maxima(const BeamSpec& beam, int count) {
  beam.validate();
  if (count < 1) throw ValidationError("radial_intensity_maxima: count must be >= 1");
  if (count > beam.p + 1)
    throw ValidationError("radial_intensity_maxima: count " + std::to_string(count) +
                          " exceeds the p+1 = " + std::to_string(beam.p + 1) +
                          " rings of the mode");

  const double w0 = beam.w0;
  const double span = std::max(3.0, std::sqrt(2.0 * beam.p + std::abs(beam.l) + 1.0) + 1.0);
  const int n = 2048 * static_cast<int>(std::ceil(span / 3.0));
  const auto slope_at = [&](double r) {
    return radial_slope(beam.l, beam.p, 2.0 * r * r / (w0 * w0));
  };

  std::vector<double> maxima;
  const double dr = span * w0 / n;
  // l = 0 modes peak on the axis itself; the grid starts just off it.
  if (beam.l == 0 && slope_at(dr) < 0.0) maxima.push_back(0.0);
  double r_lo = dr;
  double s_lo = slope_at(r_lo);
  for (int i = 2; i <= n && static_cast<int>(maxima.size()) < count; ++i) {
    const double r_hi = i * dr;
    const double s_hi = slope_at(r_hi);
    if (s_lo > 0.0 && s_hi <= 0.0) {
      double a = r_lo;
      double b = r_hi;
      while (b - a > 1e-10 * b) {
        const double mid = 0.5 * (a + b);
        if (slope_at(mid) > 0.0)
          a = mid;
        else
          b = mid;
      }
      maxima.push_back(0.5 * (a + b));
    }
    r_lo = r_hi;
    s_lo = s_hi;
  }
  if (static_cast<int>(maxima.size()) < count)
    throw SolverError("radial_intensity_maxima: requested " + std::to_string(count) +
                      " maxima but only " + std::to_string(maxima.size()) + " exist");
  return maxima;
}

ComplexRabi ferris_rabi(const BeamSpec& beam, const TransversePoint& pt,
                        double delta_omega, double t) {
  BeamSpec plus = beam;
  plus.l = std::abs(beam.l);
  BeamSpec minus = beam;
  minus.l = -std::abs(beam.l);
  const auto a = lg_rabi(plus, pt).value();
  const auto b = lg_rabi(minus, pt).value() * std::polar(1.0, delta_omega * t);
  return ComplexRabi::from_complex(a + b);
}

double ferris_rotation_frequency(int l, double delta_omega) {
  if (l == 0) throw ValidationError("Ferris wheel needs l != 0");
  return delta_omega / (2.0 * std::abs(l));
}

double ferris_offset_for_ratio(int l, double ratio) {
  if (l == 0) throw ValidationError("Ferris wheel needs l != 0");
  if (!(ratio >= 1.0)) throw ValidationError("Ferris ratio must be >= 1");
  return std::acos(1.0 / ratio) / std::abs(l);
}

double ferris_pair_separation(int l, double w0, double offset) {
  if (l == 0) throw ValidationError("Ferris wheel needs l != 0");
  return 0.5 * w0 * std::sqrt(std::abs(l) / 2.0) * std::sin(0.5 * offset);
}

}  // namespace nanoantenna::beam
