#include "nanoantenna/oracle.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "nanoantenna/errors.hpp"

namespace nanoantenna::oracle {

namespace {

using Op = Eigen::Matrix4cd;

// Single-emitter raising operator in the local order {e, g}.
Eigen::Matrix2cd sigma_plus() {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  s(0, 1) = 1.0;
  return s;
}

Op kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Op out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

struct Operators {
  Op raise1, raise2, lower1, lower2;
};

Operators make_operators() {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Operators o;
  o.raise1 = kron(sigma_plus(), id);
  o.raise2 = kron(id, sigma_plus());
  o.lower1 = o.raise1.adjoint();
  o.lower2 = o.raise2.adjoint();
  return o;
}

struct Model {
  Op h;
  std::array<Op, 2> lower;
  std::array<std::array<double, 2>, 2> rates;
};

Model make_model(const collective::CollectiveCoupling& c, cd omega1, cd omega2, double detuning) {
  const Operators o = make_operators();
  Model m;
  m.h = detuning * (o.raise1 * o.lower1 + o.raise2 * o.lower2) +
        c.omega12 * (o.raise1 * o.lower2 + o.raise2 * o.lower1) +
        0.5 * (omega1 * o.raise1 + std::conj(omega1) * o.lower1 + omega2 * o.raise2 +
               std::conj(omega2) * o.lower2);
  m.lower = {o.lower1, o.lower2};
  m.rates = {{{c.gamma, c.gamma12}, {c.gamma12, c.gamma}}};
  return m;
}

Op apply_model(const Model& m, const Op& rho) {
  const cd i{0.0, 1.0};
  Op out = -i * (m.h * rho - rho * m.h);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const Op& lb = m.lower[b];
      const Op la_dag = m.lower[a].adjoint();
      const Op n = la_dag * lb;
      out += m.rates[a][b] * (lb * rho * la_dag - 0.5 * (n * rho + rho * n));
    }
  return out;
}

BareLiouvillian vectorize(const Model& model) {
  BareLiouvillian out;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      Op unit = Op::Zero();
      unit(k, l) = 1.0;
      const Op image = apply_model(model, unit);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.l(4 * i + j, 4 * k + l) = image(i, j);
    }
  return out;
}

// Collective kets in the product basis.
std::array<Eigen::Vector4cd, 4> collective_kets() {
  const double r = std::sqrt(0.5);
  Eigen::Vector4cd g(0, 0, 0, 1), e(1, 0, 0, 0), s(0, r, r, 0), a(0, r, -r, 0);
  return {g, s, a, e};
}

enum Ket { G = 0, S = 1, A = 2, E = 3 };

struct Label {
  const char* name;
  Ket bra_side;  // row ket
  Ket ket_side;  // column ket
};

constexpr std::array<Label, 15> kOrder = {{
    {"ss", S, S}, {"ee", E, E}, {"sg", S, G}, {"se", S, E}, {"eg", E, G},
    {"gs", G, S}, {"es", E, S}, {"ge", G, E}, {"aa", A, A}, {"ae", A, E},
    {"ag", A, G}, {"as", A, S}, {"ea", E, A}, {"ga", G, A}, {"sa", S, A},
}};

}  // namespace

Eigen::Matrix4cd BareLiouvillian::apply(const Eigen::Matrix4cd& rho) const {
  Eigen::Matrix<cd, 16, 1> v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v(4 * i + j) = rho(i, j);
  const Eigen::Matrix<cd, 16, 1> w = l * v;
  Eigen::Matrix4cd out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = w(4 * i + j);
  return out;
}

BareLiouvillian build_bare(const collective::CollectiveCoupling& coupling,
                           const collective::DriveParams& drive) {
  drive.validate();
  return vectorize(
      make_model(coupling, drive.rabi1.value(), drive.rabi2.value(), drive.detuning));
}

Eigen::Matrix4cd bare_steady_state(const BareLiouvillian& bare) {
  Eigen::FullPivLU<Matrix16> rank_check(bare.l);
  rank_check.setThreshold(1e-10);
  const auto null_dim = 16 - rank_check.rank();
  if (null_dim != 1) {
    std::ostringstream os;
    os << "bare steady state: null space of L has dimension " << null_dim << " (expected 1)";
    throw SolverError(os.str());
  }
  Matrix16 a = bare.l;
  Eigen::Matrix<cd, 16, 1> b = Eigen::Matrix<cd, 16, 1>::Zero();
  a.row(0).setZero();
  for (int k = 0; k < 4; ++k) a(0, 5 * k) = 1.0;
  b(0) = 1.0;
  const Eigen::Matrix<cd, 16, 1> v = a.fullPivLu().solve(b);
  Eigen::Matrix4cd rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho(i, j) = v(4 * i + j);
  return rho;
}

Projection collective_projection(const collective::CollectiveCoupling& coupling,
                                 const collective::DriveParams& drive) {
  drive.validate();
  // Gauge without the global phase: only the phase difference remains.
  const double pd = drive.phi_d();
  const Model model = make_model(coupling, std::polar(drive.rabi1.magnitude, pd),
                                 std::polar(drive.rabi2.magnitude, -pd), drive.detuning);
  const auto kets = collective_kets();
  const auto coefficient = [&](const Label& row, Ket col_bra, Ket col_ket) {
    const Op unit = kets[col_bra] * kets[col_ket].adjoint();
    const Op image = apply_model(model, unit);
    return (kets[row.bra_side].adjoint() * image * kets[row.ket_side])(0, 0);
  };

  Projection out;
  for (std::size_t r = 0; r < kOrder.size(); ++r) {
    const cd from_gg = coefficient(kOrder[r], G, G);
    out.p(static_cast<Eigen::Index>(r)) = from_gg;
    for (std::size_t c = 0; c < kOrder.size(); ++c) {
      cd entry = -coefficient(kOrder[r], kOrder[c].bra_side, kOrder[c].ket_side);
      if (kOrder[c].bra_side == kOrder[c].ket_side) entry += from_gg;  // ss, ee, aa
      out.m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry;
    }
  }
  return out;
}

std::vector<EntryMismatch> audit(const Matrix15& m, const Vector15& p, const Projection& ref,
                                 double tol) {
  std::vector<EntryMismatch> out;
  for (std::size_t r = 0; r < kOrder.size(); ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    if (std::abs(p(ri) - ref.p(ri)) > tol)
      out.push_back({std::string("P[") + kOrder[r].name + "]", ref.p(ri), p(ri)});
    for (std::size_t c = 0; c < kOrder.size(); ++c) {
      const auto ci = static_cast<Eigen::Index>(c);
      if (std::abs(m(ri, ci) - ref.m(ri, ci)) > tol)
        out.push_back({std::string("M[") + kOrder[r].name + "," + kOrder[c].name + "]",
                       ref.m(ri, ci), m(ri, ci)});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const EntryMismatch& a, const EntryMismatch& b) {
    return std::abs(a.expected - a.actual) > std::abs(b.expected - b.actual);
  });
  return out;
}

}  // namespace nanoantenna::oracle
