#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "nanoantenna/collective.hpp"

namespace nanoantenna::oracle {

using cd = std::complex<double>;
using Matrix16 = Eigen::Matrix<cd, 16, 16>;
using Matrix15 = Eigen::Matrix<cd, 15, 15>;
using Vector15 = Eigen::Matrix<cd, 15, 1>;

/// Two-emitter master equation on the row-major vectorized density matrix,
/// product basis {e1e2, e1g2, g1e2, g1g2}: vec(rho)[4 i + j] = rho(i, j).
struct BareLiouvillian {
  Matrix16 l = Matrix16::Zero();

  Eigen::Matrix4cd apply(const Eigen::Matrix4cd& rho) const;
};

BareLiouvillian build_bare(const collective::CollectiveCoupling& coupling,
                           const collective::DriveParams& drive);

/// Unit-trace null vector of L. Throws SolverError when the null space is not one-dimensional.
Eigen::Matrix4cd bare_steady_state(const BareLiouvillian& l);

/// The bare Liouvillian restricted to the collective basis {g, s, a, e} in
/// the gauge without the global drive phase, written as dY/dt = -M Y + P
/// with rho_gg eliminated by the trace. Element order matches the
/// collective state vector.
struct Projection {
  Matrix15 m = Matrix15::Zero();
  Vector15 p = Vector15::Zero();
};

Projection collective_projection(const collective::CollectiveCoupling& coupling,
                                 const collective::DriveParams& drive);

struct EntryMismatch {
  std::string entry;  ///< e.g. "M[sg,es]" or "P[gs]"
  cd expected;
  cd actual;
};

/// Entries where (m, p) differ from the projection by more than tol, largest first.
std::vector<EntryMismatch> audit(const Matrix15& m, const Vector15& p, const Projection& reference,
                                 double tol = 1e-12);

}  // namespace nanoantenna::oracle
