#pragma once

#include <string_view>
#include <vector>

#include "nanoantenna/collective.hpp"
#include "nanoantenna/liouvillian.hpp"

namespace nanoantenna::pattern {

/// pop_sum = rho_ss + rho_aa + 2 rho_ee, pop_diff = rho_ss - rho_aa, coh = Im rho_as.
struct CorrelationTriple {
  double pop_sum = 0.0;
  double pop_diff = 0.0;
  double coh = 0.0;
};

CorrelationTriple correlations(const liouvillian::CollectiveState& state);

/// In-plane observation geometry. Emitter 1 sits at -r12/2 on the y axis,
/// emitter 2 at +r12/2; theta is measured from +y. Dipoles point out of the
/// plane, so the single-emitter factor is the constant 3 gamma / 8 pi.
struct ObservationFrame {
  double r12 = 0.25;
  double theta = 0.0;
  double wavelength = 1.0;
  double gamma = 1.0;

  void validate() const;
};

double intensity_at(const CorrelationTriple& corr, const ObservationFrame& frame);

struct PatternParams {
  double r12 = 0.25;
  double wavelength = 1.0;
  double gamma = 1.0;
};

struct RadiationPattern {
  std::vector<double> thetas;       ///< uniform over [0, 2 pi)
  std::vector<double> intensities;  ///< gamma per steradian, clamped at 0
  PatternParams params;

  double max_intensity() const;
};

inline constexpr int kDefaultThetaSamples = 1440;

/// Throws SolverError if the state yields intensities below -1e-10 of the maximum.
RadiationPattern pattern(const liouvillian::CollectiveState& state, const PatternParams& params,
                         int n_theta = kDefaultThetaSamples);

struct TotalRateOptions {
  int n_polar = 64;
  int n_azimuth = 128;
  /// Allowed relative change when both node counts are doubled.
  double convergence_tol = 1e-10;
};

/// Photon emission rate from integrating the full 3D far-field intensity
/// over the sphere. Throws SolverError if the doubled grid disagrees.
double total_rate(const liouvillian::CollectiveState& state,
                  const collective::PairGeometry& geometry, const TotalRateOptions& options = {});

/// gamma_s (rho_ss + rho_ee) + gamma_a (rho_aa + rho_ee)
double analytic_total_rate(const liouvillian::CollectiveState& state,
                           const collective::CollectiveCoupling& coupling);

enum class Classification { one_sided, two_sided, mixed, isotropic, isotropic_null };
std::string_view name(Classification c);

struct DirectivityOptions {
  double lobe_floor = 0.05;      ///< peaks below this fraction of the maximum are ignored
  double split_fraction = 0.5;   ///< valleys at or above this fraction of the smaller peak merge lobes
  double two_sided_max = 0.05;
  double one_sided_min = 0.25;
};

struct Lobe {
  double direction = 0.0;  ///< radians in [0, 2 pi)
  double peak = 0.0;
  double fwhm = 0.0;       ///< in-plane full width at half maximum, radians
};

struct DirectivityReport {
  std::vector<Lobe> lobes;   ///< ordered by direction
  double asymmetry = 0.0;    ///< (P+ - P-)/(P+ + P-) over cos(theta) > 0 / < 0
  Classification classification = Classification::isotropic_null;
  /// Largest lobe peak over the second largest; +inf with a single lobe, 0 with none.
  double dominance = 0.0;

  std::size_t lobe_count() const { return lobes.size(); }
  const Lobe* strongest() const;
};

/// Requires at least 256 samples.
DirectivityReport directivity(const RadiationPattern& pat, const DirectivityOptions& options = {});

/// All theta in [0, 2 pi) with k r12 cos(theta) = 2 phi_d + 2 pi m, ascending.
std::vector<double> interference_angles(double r12, double phi_d, double wavelength = 1.0);

}  // namespace nanoantenna::pattern
