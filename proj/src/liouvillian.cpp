#include "nanoantenna/liouvillian.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nanoantenna/errors.hpp"

namespace nanoantenna::liouvillian {

namespace {

constexpr std::string_view kElementNames[] = {"ss", "ee", "sg", "se", "eg", "gs", "es", "ge",
                                              "aa", "ae", "ag", "as", "ea", "ga", "sa", "gg"};

// Collective labels: 0 = e, 1 = s, 2 = a, 3 = g.
struct Pair {
  int row;
  int col;
};

constexpr Pair kPairs[] = {
    {1, 1}, {0, 0}, {1, 3}, {1, 0}, {0, 3}, {3, 1}, {0, 1}, {3, 0},
    {2, 2}, {2, 0}, {2, 3}, {2, 1}, {0, 2}, {3, 2}, {1, 2}, {3, 3},
};

constexpr int kExcitations[] = {2, 1, 1, 0};

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

cd symbol_value(Symbol s, const collective::CollectiveCoupling& c, const cd& oa, const cd& ob,
                double detuning) {
  switch (s) {
    case Symbol::gamma: return c.gamma;
    case Symbol::gamma_s: return c.gamma_s;
    case Symbol::gamma_a: return c.gamma_a;
    case Symbol::omega12: return c.omega12;
    case Symbol::detuning: return detuning;
    case Symbol::omega_alpha: return oa;
    case Symbol::omega_alpha_conj: return std::conj(oa);
    case Symbol::omega_beta: return ob;
    case Symbol::omega_beta_conj: return std::conj(ob);
  }
  return 0.0;
}

// Collective basis vectors written in the product basis {e1e2, e1g2, g1e2, g1g2}.
Eigen::Matrix4cd collective_to_bare() {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
  t(0, 0) = 1.0;                  // e
  t(1, 1) = r; t(2, 1) = r;       // s
  t(1, 2) = r; t(2, 2) = -r;      // a
  t(3, 3) = 1.0;                  // g
  return t;
}

Eigen::Matrix4cd collective_matrix(const CollectiveState& s) {
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  for (std::size_t k = 0; k < kStateSize; ++k) c(kPairs[k].row, kPairs[k].col) = s.y[k];
  c(3, 3) = s.rho_gg();
  return c;
}

}  // namespace

std::string_view name(Element e) { return kElementNames[index(e)]; }

Element conjugate(Element e) {
  const Pair p = kPairs[index(e)];
  for (std::size_t k = 0; k <= kStateSize; ++k)
    if (kPairs[k].row == p.col && kPairs[k].col == p.row) return static_cast<Element>(k);
  return e;
}

std::string_view name(Symbol s) {
  switch (s) {
    case Symbol::gamma: return "gamma";
    case Symbol::gamma_s: return "gamma_s";
    case Symbol::gamma_a: return "gamma_a";
    case Symbol::omega12: return "omega12";
    case Symbol::detuning: return "detuning";
    case Symbol::omega_alpha: return "omega_alpha";
    case Symbol::omega_alpha_conj: return "conj(omega_alpha)";
    case Symbol::omega_beta: return "omega_beta";
    case Symbol::omega_beta_conj: return "conj(omega_beta)";
  }
  return "?";
}

std::string Generator::describe() const {
  std::ostringstream os;
  os << "coupling(gamma=" << fmt_double(coupling.gamma)
     << ", omega12=" << fmt_double(coupling.omega12)
     << ", gamma12=" << fmt_double(coupling.gamma12) << "), drive(|O1|="
     << fmt_double(drive.rabi1.magnitude) << ", arg O1=" << fmt_double(drive.rabi1.phase)
     << ", |O2|=" << fmt_double(drive.rabi2.magnitude)
     << ", arg O2=" << fmt_double(drive.rabi2.phase)
     << ", detuning=" << fmt_double(drive.detuning) << ")";
  return os.str();
}

Generator build_generator(const collective::CollectiveCoupling& coupling,
                          const collective::DriveParams& drive,
                          const GeneratorOptions& options) {
  drive.validate();
  Generator gen;
  gen.coupling = coupling;
  gen.drive = drive;
  const cd oa = drive.omega_alpha();
  const cd ob = drive.omega_beta();

  const auto table = coefficient_table(options.form);
  if (options.fault && options.fault->term >= table.size())
    throw ValidationError("coefficient fault index " + std::to_string(options.fault->term) +
                          " out of range (table has " + std::to_string(table.size()) +
                          " terms)");

  const auto ss = index(Element::ss);
  const auto ee = index(Element::ee);
  const auto aa = index(Element::aa);
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& term = table[k];
    cd c = term.weight * symbol_value(term.symbol, coupling, oa, ob, drive.detuning);
    if (options.fault && options.fault->term == k) c *= options.fault->scale;
    const auto row = index(term.row);
    if (term.column == Element::gg) {
      // rho_gg = 1 - rho_ss - rho_ee - rho_aa
      gen.p(row) += c;
      gen.m(row, ss) += c;
      gen.m(row, ee) += c;
      gen.m(row, aa) += c;
    } else {
      gen.m(row, index(term.column)) -= c;
    }
  }
  return gen;
}

CollectiveState CollectiveState::from_vector(const Vector15& v) {
  CollectiveState s;
  for (std::size_t k = 0; k < kStateSize; ++k) s.y[k] = v(static_cast<Eigen::Index>(k));
  return s;
}

Vector15 CollectiveState::to_vector() const {
  Vector15 v;
  for (std::size_t k = 0; k < kStateSize; ++k) v(static_cast<Eigen::Index>(k)) = y[k];
  return v;
}

cd CollectiveState::operator[](Element e) const {
  if (e == Element::gg) return rho_gg();
  return y[index(e)];
}

cd& CollectiveState::operator[](Element e) {
  if (e == Element::gg) throw ValidationError("rho_gg is derived from the trace");
  return y[index(e)];
}

double CollectiveState::rho_gg() const {
  return 1.0 - (y[index(Element::ss)] + y[index(Element::ee)] + y[index(Element::aa)]).real();
}

std::optional<std::string> CollectiveState::invariant_violation(double tol) const {
  for (std::size_t k = 0; k < kStateSize; ++k)
    if (!std::isfinite(y[k].real()) || !std::isfinite(y[k].imag()))
      return "rho_" + std::string(kElementNames[k]) + " is not finite";
  for (Element e : {Element::ss, Element::ee, Element::aa}) {
    const cd v = (*this)[e];
    if (std::abs(v.imag()) > tol)
      return "population rho_" + std::string(name(e)) + " has imaginary part " +
             fmt_double(v.imag());
    if (v.real() < -tol || v.real() > 1.0 + tol)
      return "population rho_" + std::string(name(e)) + " = " + fmt_double(v.real()) +
             " outside [0, 1]";
  }
  if (rho_gg() < -tol || rho_gg() > 1.0 + tol)
    return "population rho_gg = " + fmt_double(rho_gg()) + " outside [0, 1]";
  for (std::size_t k = 0; k < kStateSize; ++k) {
    const auto e = static_cast<Element>(k);
    const auto c = conjugate(e);
    if (std::abs(y[k] - std::conj((*this)[c])) > tol)
      return "rho_" + std::string(name(e)) + " is not the conjugate of rho_" +
             std::string(name(c));
  }
  const Eigen::Matrix4cd rho = collective_matrix(*this);
  const Eigen::Matrix4cd herm = 0.5 * (rho + rho.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(herm).eigenvalues().minCoeff();
  if (min_eig < -tol) return "density matrix has negative eigenvalue " + fmt_double(min_eig);
  return std::nullopt;
}

CollectiveState steady_state(const Generator& gen) {
  Eigen::PartialPivLU<Matrix15> lu(gen.m);
  const double rcond = lu.rcond();
  if (!(rcond >= 1e-12))
    throw SolverError("steady state: generator is singular or ill-conditioned (rcond=" +
                      fmt_double(rcond) + ") for " + gen.describe());
  const Vector15 y = lu.solve(gen.p);
  const double residual = (gen.m * y - gen.p).norm();
  if (!(residual <= 1e-10 * (1.0 + gen.p.norm())))
    throw SolverError("steady state: residual " + fmt_double(residual) + " too large for " +
                      gen.describe());
  return CollectiveState::from_vector(y);
}

std::vector<TrajectoryPoint> time_evolve(const Generator& gen, const CollectiveState& y0,
                                         double t_final, double dt_hint,
                                         const EvolveOptions& options) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2 * kStateSize>;

  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw ValidationError("time_evolve: t_final must be >= 0");
  if (!(dt_hint > 0.0)) throw ValidationError("time_evolve: dt must be > 0");

  const auto pack = [](const CollectiveState& s) {
    State x{};
    for (std::size_t k = 0; k < kStateSize; ++k) {
      x[2 * k] = s.y[k].real();
      x[2 * k + 1] = s.y[k].imag();
    }
    return x;
  };
  const auto unpack = [](const State& x) {
    CollectiveState s;
    for (std::size_t k = 0; k < kStateSize; ++k) s.y[k] = {x[2 * k], x[2 * k + 1]};
    return s;
  };

  const Matrix15 m = gen.m;
  const Vector15 p = gen.p;
  const auto rhs = [&](const State& x, State& dxdt, double) {
    Vector15 y;
    for (std::size_t k = 0; k < kStateSize; ++k)
      y(static_cast<Eigen::Index>(k)) = {x[2 * k], x[2 * k + 1]};
    const Vector15 d = p - m * y;
    for (std::size_t k = 0; k < kStateSize; ++k) {
      dxdt[2 * k] = d(static_cast<Eigen::Index>(k)).real();
      dxdt[2 * k + 1] = d(static_cast<Eigen::Index>(k)).imag();
    }
  };

  auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                         odeint::runge_kutta_dopri5<State>());
  std::vector<TrajectoryPoint> out;
  State x = pack(y0);
  double t = 0.0;
  double dt = std::min(dt_hint, t_final > 0.0 ? t_final : dt_hint);
  out.push_back({t, y0});
  while (t < t_final) {
    if (t + dt > t_final) dt = t_final - t;
    const double t_before = t;
    const auto result = stepper.try_step(rhs, x, t, dt);
    if (result == odeint::success) {
      out.push_back({t, unpack(x)});
      // Snap onto the end point once it is reached within rounding.
      if (t_final - t <= 1e-14 * std::max(1.0, t_final)) {
        out.back().t = t_final;
        break;
      }
    } else if (dt < options.min_step) {
      throw SolverError("time_evolve: step size underflow (dt=" + fmt_double(dt) +
                        ") at t=" + fmt_double(t_before) + " for " + gen.describe());
    }
  }
  return out;
}

DensityMatrix4 to_bare_basis(const CollectiveState& state, double global_phase) {
  Eigen::Matrix4cd c = collective_matrix(state);
  if (global_phase != 0.0)
    for (int n = 0; n < 4; ++n)
      for (int k = 0; k < 4; ++k)
        c(n, k) *= std::polar(1.0, global_phase * (kExcitations[n] - kExcitations[k]));
  const Eigen::Matrix4cd t = collective_to_bare();
  return t * c * t.adjoint();
}

CollectiveState from_bare_basis(const DensityMatrix4& rho, double global_phase) {
  const Eigen::Matrix4cd t = collective_to_bare();
  Eigen::Matrix4cd c = t.adjoint() * rho * t;
  if (global_phase != 0.0)
    for (int n = 0; n < 4; ++n)
      for (int k = 0; k < 4; ++k)
        c(n, k) *= std::polar(1.0, -global_phase * (kExcitations[n] - kExcitations[k]));
  CollectiveState s;
  for (std::size_t k = 0; k < kStateSize; ++k) s.y[k] = c(kPairs[k].row, kPairs[k].col);
  return s;
}

}  // namespace nanoantenna::liouvillian
