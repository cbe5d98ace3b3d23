#include "nanoantenna/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "nanoantenna/errors.hpp"
#include "nanoantenna/quadrature.hpp"

namespace nanoantenna::pattern {

namespace {

using liouvillian::CollectiveState;
using liouvillian::Element;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double emitter_factor(double gamma) { return 3.0 * gamma / (8.0 * kPi); }

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

// Sphere integral of the 3D pattern with the polar axis along the dipole.
// The emitter axis makes angle alpha with the dipole, cos(alpha) = mu_dot_r.
double integrate_sphere(const CorrelationTriple& c, const collective::PairGeometry& g,
                        int n_polar, int n_azimuth) {
  const auto rule = quadrature::gauss_legendre(n_polar);
  const double kr = kTwoPi * g.r12 / g.wavelength;
  const double cos_a = g.mu_dot_r;
  const double sin_a = std::sqrt(std::max(0.0, 1.0 - cos_a * cos_a));
  const double u0 = emitter_factor(g.gamma);
  const double dphi = kTwoPi / n_azimuth;
  double total = 0.0;
  for (int i = 0; i < n_polar; ++i) {
    const double u = rule.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    double ring = 0.0;
    for (int j = 0; j < n_azimuth; ++j) {
      const double phi = j * dphi;
      const double x = kr * (sin_a * s * std::cos(phi) + cos_a * u);
      ring += c.pop_sum + c.pop_diff * std::cos(x) - 2.0 * c.coh * std::sin(x);
    }
    total += rule.weights[i] * u0 * (1.0 - u * u) * ring * dphi;
  }
  return total;
}

std::size_t wrap_index(long i, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

struct Peak {
  std::size_t index;
  double value;
};

// Lowest sample strictly between two peak indices walking forward.
double valley_between(const std::vector<double>& v, std::size_t from, std::size_t to) {
  const std::size_t n = v.size();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t k = wrap_index(static_cast<long>(from) + 1, n); k != to; k = (k + 1) % n)
    lo = std::min(lo, v[k]);
  return lo;
}

double refine_peak(const std::vector<double>& v, std::size_t i, double dtheta) {
  const std::size_t n = v.size();
  const double a = v[wrap_index(static_cast<long>(i) - 1, n)];
  const double b = v[i];
  const double c = v[(i + 1) % n];
  const double denom = a - 2.0 * b + c;
  double shift = 0.0;
  if (denom < 0.0) shift = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  return wrap_angle((static_cast<double>(i) + shift) * dtheta);
}

double half_width(const std::vector<double>& v, std::size_t peak, int dir, double dtheta) {
  const std::size_t n = v.size();
  const double half = 0.5 * v[peak];
  double prev = v[peak];
  for (std::size_t step = 1; step < n; ++step) {
    const double cur = v[wrap_index(static_cast<long>(peak) + dir * static_cast<long>(step), n)];
    if (cur < half) {
      const double frac = (prev - half) / (prev - cur);
      return (static_cast<double>(step) - 1.0 + frac) * dtheta;
    }
    prev = cur;
  }
  return kPi;
}

}  // namespace

CorrelationTriple correlations(const CollectiveState& state) {
  const double ss = state[Element::ss].real();
  const double aa = state[Element::aa].real();
  const double ee = state[Element::ee].real();
  return {ss + aa + 2.0 * ee, ss - aa, state[Element::as].imag()};
}

void ObservationFrame::validate() const {
  if (!(r12 > 0.0) || !std::isfinite(r12)) throw ValidationError("frame.r12 must be > 0");
  if (!(wavelength > 0.0)) throw ValidationError("frame.wavelength must be > 0");
  if (!std::isfinite(theta)) throw ValidationError("frame.theta must be finite");
}

double intensity_at(const CorrelationTriple& corr, const ObservationFrame& frame) {
  const double x = kTwoPi * frame.r12 / frame.wavelength * std::cos(frame.theta);
  return emitter_factor(frame.gamma) *
         (corr.pop_sum + corr.pop_diff * std::cos(x) - 2.0 * corr.coh * std::sin(x));
}

double RadiationPattern::max_intensity() const {
  if (intensities.empty()) return 0.0;
  return *std::max_element(intensities.begin(), intensities.end());
}

RadiationPattern pattern(const CollectiveState& state, const PatternParams& params, int n_theta) {
  if (n_theta < 64) throw ValidationError("n_theta must be >= 64, got " + std::to_string(n_theta));
  const CorrelationTriple corr = correlations(state);
  RadiationPattern out;
  out.params = params;
  out.thetas.resize(n_theta);
  out.intensities.resize(n_theta);
  ObservationFrame frame{params.r12, 0.0, params.wavelength, params.gamma};
  frame.validate();
  for (int i = 0; i < n_theta; ++i) {
    frame.theta = kTwoPi * i / n_theta;
    out.thetas[i] = frame.theta;
    out.intensities[i] = intensity_at(corr, frame);
  }
  const double peak = out.max_intensity();
  const double tol = 1e-10 * std::max(peak, 0.0) + 1e-300;
  for (double& v : out.intensities) {
    if (v < -tol)
      throw SolverError("pattern: state gives negative intensity " + std::to_string(v) +
                        " (maximum " + std::to_string(peak) + "); the state is unphysical");
    v = std::max(v, 0.0);
  }
  return out;
}

double total_rate(const CollectiveState& state, const collective::PairGeometry& geometry,
                  const TotalRateOptions& options) {
  geometry.validate();
  if (options.n_polar < 64 || options.n_azimuth < 128)
    throw ValidationError("total_rate needs at least 64 x 128 nodes");
  const CorrelationTriple c = correlations(state);
  const double coarse = integrate_sphere(c, geometry, options.n_polar, options.n_azimuth);
  const double fine = integrate_sphere(c, geometry, 2 * options.n_polar, 2 * options.n_azimuth);
  const double residual = std::abs(fine - coarse);
  const double scale = std::abs(fine) + 1e-14 * geometry.gamma;
  if (residual > options.convergence_tol * scale)
    throw SolverError("total_rate: quadrature did not converge (residual " +
                      std::to_string(residual / scale) + " relative at " +
                      std::to_string(2 * options.n_polar) + " x " +
                      std::to_string(2 * options.n_azimuth) + " nodes)");
  return fine;
}

double analytic_total_rate(const CollectiveState& state,
                           const collective::CollectiveCoupling& coupling) {
  const double ss = state[Element::ss].real();
  const double aa = state[Element::aa].real();
  const double ee = state[Element::ee].real();
  return coupling.gamma_s * (ss + ee) + coupling.gamma_a * (aa + ee);
}

std::string_view name(Classification c) {
  switch (c) {
    case Classification::one_sided: return "one-sided";
    case Classification::two_sided: return "two-sided";
    case Classification::mixed: return "mixed";
    case Classification::isotropic: return "isotropic";
    case Classification::isotropic_null: return "isotropic-null";
  }
  return "?";
}

const Lobe* DirectivityReport::strongest() const {
  if (lobes.empty()) return nullptr;
  return &*std::max_element(lobes.begin(), lobes.end(),
                            [](const Lobe& a, const Lobe& b) { return a.peak < b.peak; });
}

DirectivityReport directivity(const RadiationPattern& pat, const DirectivityOptions& options) {
  const auto& v = pat.intensities;
  const std::size_t n = v.size();
  if (n < 256) throw ValidationError("directivity needs at least 256 samples, got " +
                                     std::to_string(n));
  if (pat.thetas.size() != n) throw ValidationError("pattern thetas/intensities size mismatch");

  DirectivityReport report;
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double vmax = *hi_it;
  const double vmin = *lo_it;
  if (!(vmax > 0.0)) return report;  // isotropic-null

  // Split the circle at cos(theta) = 0; samples exactly on the boundary count half to each side.
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t q = 4 * i;
    if (q == n || q == 3 * n) {
      plus += 0.5 * v[i];
      minus += 0.5 * v[i];
    } else if (q < n || q > 3 * n) {
      plus += v[i];
    } else {
      minus += v[i];
    }
  }
  report.asymmetry = std::clamp((plus - minus) / (plus + minus), -1.0, 1.0);

  if (vmax - vmin <= 1e-9 * vmax) {
    report.classification = Classification::isotropic;
    return report;
  }

  std::vector<Peak> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = v[wrap_index(static_cast<long>(i) - 1, n)];
    const double next = v[(i + 1) % n];
    if (v[i] > prev && v[i] >= next && v[i] >= options.lobe_floor * vmax)
      peaks.push_back({i, v[i]});
  }

  // Merge neighbours joined by a shallow valley until every gap is deep.
  bool merged = true;
  while (merged && peaks.size() > 1) {
    merged = false;
    for (std::size_t k = 0; k < peaks.size(); ++k) {
      const std::size_t next = (k + 1) % peaks.size();
      const double valley = valley_between(v, peaks[k].index, peaks[next].index);
      if (valley >= options.split_fraction * std::min(peaks[k].value, peaks[next].value)) {
        const std::size_t drop = peaks[k].value >= peaks[next].value ? next : k;
        peaks.erase(peaks.begin() + static_cast<long>(drop));
        merged = true;
        break;
      }
    }
  }

  const double dtheta = kTwoPi / static_cast<double>(n);
  for (const auto& p : peaks) {
    Lobe lobe;
    lobe.direction = refine_peak(v, p.index, dtheta);
    lobe.peak = p.value;
    lobe.fwhm = half_width(v, p.index, -1, dtheta) + half_width(v, p.index, +1, dtheta);
    report.lobes.push_back(lobe);
  }
  std::sort(report.lobes.begin(), report.lobes.end(),
            [](const Lobe& a, const Lobe& b) { return a.direction < b.direction; });

  if (report.lobes.size() == 1) {
    report.dominance = std::numeric_limits<double>::infinity();
  } else if (report.lobes.size() > 1) {
    std::vector<double> heights;
    for (const auto& l : report.lobes) heights.push_back(l.peak);
    std::sort(heights.rbegin(), heights.rend());
    report.dominance = heights[0] / heights[1];
  }

  const double a = std::abs(report.asymmetry);
  if (a < options.two_sided_max && report.lobes.size() >= 2)
    report.classification = Classification::two_sided;
  else if (a >= options.one_sided_min)
    report.classification = Classification::one_sided;
  else
    report.classification = Classification::mixed;
  return report;
}

std::vector<double> interference_angles(double r12, double phi_d, double wavelength) {
  if (!(r12 > 0.0)) throw ValidationError("interference_angles: r12 must be > 0");
  if (!(wavelength > 0.0)) throw ValidationError("interference_angles: wavelength must be > 0");
  const double kr = kTwoPi * r12 / wavelength;
  const double base = 2.0 * phi_d;
  std::vector<double> out;
  const long m_lo = static_cast<long>(std::ceil((-kr - base) / kTwoPi));
  const long m_hi = static_cast<long>(std::floor((kr - base) / kTwoPi));
  for (long m = m_lo; m <= m_hi; ++m) {
    const double c = std::clamp((base + kTwoPi * static_cast<double>(m)) / kr, -1.0, 1.0);
    const double t = std::acos(c);
    out.push_back(t);
    if (t > 0.0 && t < kPi) out.push_back(kTwoPi - t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-15; }),
            out.end());
  return out;
}

}  // namespace nanoantenna::pattern
