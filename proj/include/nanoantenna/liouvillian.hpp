#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nanoantenna/collective.hpp"

namespace nanoantenna::liouvillian {

using cd = std::complex<double>;
using Matrix15 = Eigen::Matrix<cd, 15, 15>;
using Vector15 = Eigen::Matrix<cd, 15, 1>;
using DensityMatrix4 = Eigen::Matrix4cd;

inline constexpr std::size_t kStateSize = 15;

/// Density-matrix elements in the collective basis {g, s, a, e}. The first 15
/// are the state vector in its fixed order; gg only appears as a table column
/// and is eliminated through the trace.
enum class Element : std::size_t {
  ss, ee, sg, se, eg, gs, es, ge,   // symmetric set
  aa, ae, ag, as, ea, ga, sa,       // antisymmetric set
  gg
};

inline constexpr std::size_t index(Element e) { return static_cast<std::size_t>(e); }
std::string_view name(Element e);
/// The element holding the complex conjugate (rho_nm -> rho_mn).
Element conjugate(Element e);

/// Symbols a generator coefficient may be built from.
enum class Symbol {
  gamma, gamma_s, gamma_a, omega12, detuning,
  omega_alpha, omega_alpha_conj, omega_beta, omega_beta_conj
};
std::string_view name(Symbol s);

/// One term of d rho_row / dt = ... + weight * symbol * rho_column.
struct CoefficientTerm {
  Element row;
  Element column;
  Symbol symbol;
  cd weight;
};

enum class EquationForm {
  derived,        ///< from the bare two-emitter master equation; authoritative
  paper_literal,  ///< the published equations, transcribed term by term
};

std::span<const CoefficientTerm> coefficient_table(EquationForm form);

/// Test hook: rescales one table entry so audits can be shown to catch it.
struct CoefficientFault {
  std::size_t term = 0;
  cd scale{-1.0, 0.0};
};

struct GeneratorOptions {
  EquationForm form = EquationForm::derived;
  std::optional<CoefficientFault> fault;
};

/// dY/dt = -M Y + P.  Immutable once built.
struct Generator {
  Matrix15 m = Matrix15::Zero();
  Vector15 p = Vector15::Zero();
  collective::CollectiveCoupling coupling{};
  collective::DriveParams drive{};

  std::string describe() const;
};

Generator build_generator(const collective::CollectiveCoupling& coupling,
                          const collective::DriveParams& drive,
                          const GeneratorOptions& options = {});

struct CollectiveState {
  std::array<cd, kStateSize> y{};

  static CollectiveState ground() { return {}; }
  static CollectiveState from_vector(const Vector15& v);
  Vector15 to_vector() const;

  cd operator[](Element e) const;
  cd& operator[](Element e);
  double rho_gg() const;

  /// Empty when every invariant holds at tolerance `tol`; otherwise a
  /// description of the first violation.
  std::optional<std::string> invariant_violation(double tol = 1e-10) const;
};

/// Direct LU solve of M Y = P. Throws SolverError when the reciprocal
/// condition estimate drops below 1e-12.
CollectiveState steady_state(const Generator& gen);

struct TrajectoryPoint {
  double t = 0.0;
  CollectiveState state;
};

struct EvolveOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double min_step = 1e-12;
};

/// Adaptive Dormand-Prince 5(4) integration. Returns every accepted step,
/// starting with (0, y0) and ending at t_final.
std::vector<TrajectoryPoint> time_evolve(const Generator& gen, const CollectiveState& y0,
                                         double t_final, double dt_hint,
                                         const EvolveOptions& options = {});

/// Product basis order {e1e2, e1g2, g1e2, g1g2}. `global_phase` restores the
/// (phi_1 + phi_2)/2 gauge dropped by the collective equations.
DensityMatrix4 to_bare_basis(const CollectiveState& state, double global_phase = 0.0);
CollectiveState from_bare_basis(const DensityMatrix4& rho, double global_phase = 0.0);

}  // namespace nanoantenna::liouvillian
