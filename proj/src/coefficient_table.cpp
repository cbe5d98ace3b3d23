// Right-hand sides of the 15 collective-basis equations, one table row per term.
//
// The derived table was obtained by expanding
//   d rho/dt = -i[H, rho] + Gs D[A_gs + A_se] rho + Ga D[A_ga - A_ae] rho
//   H = Delta (A_ss + A_aa + 2 A_ee) + Omega12 (A_ss - A_aa)
//       + i[Oa (A_es + A_sg) + Ob (A_ag - A_ea) - h.c.]
// which is the bare two-emitter master equation rewritten in {g, s, a, e}.
//
// The literal table is the published form. It differs in four cross-damping
// coefficients (marked below) and carries no detuning terms.

#include "nanoantenna/liouvillian.hpp"

namespace nanoantenna::liouvillian {

namespace {

using E = Element;
using S = Symbol;

constexpr cd one{1.0, 0.0};
constexpr cd neg{-1.0, 0.0};
constexpr cd neg_half{-0.5, 0.0};
constexpr cd i1{0.0, 1.0};
constexpr cd neg_i{0.0, -1.0};
constexpr cd i2{0.0, 2.0};
constexpr cd neg_i2{0.0, -2.0};

// Terms shared by both forms, in equation order.
#define NANOANTENNA_COMMON_TERMS(SG_ES, GS_SE, AG_EA, GA_AE) \
  /* rho_ss */                                                                   \
  {E::ss, E::ss, S::gamma_s, neg}, {E::ss, E::ee, S::gamma_s, one},              \
  {E::ss, E::gs, S::omega_alpha, one}, {E::ss, E::se, S::omega_alpha, neg},      \
  {E::ss, E::sg, S::omega_alpha_conj, one}, {E::ss, E::es, S::omega_alpha_conj, neg}, \
  /* rho_ee */                                                                   \
  {E::ee, E::ee, S::gamma_s, neg}, {E::ee, E::ee, S::gamma_a, neg},              \
  {E::ee, E::se, S::omega_alpha, one}, {E::ee, E::es, S::omega_alpha_conj, one}, \
  {E::ee, E::ae, S::omega_beta, neg}, {E::ee, E::ea, S::omega_beta_conj, neg},   \
  /* rho_sg */                                                                   \
  {E::sg, E::sg, S::gamma_s, neg_half}, {E::sg, E::sg, S::omega12, neg_i},       \
  {E::sg, E::es, S::gamma_s, SG_ES},                                             \
  {E::sg, E::gg, S::omega_alpha, one}, {E::sg, E::ss, S::omega_alpha, neg},      \
  {E::sg, E::eg, S::omega_alpha_conj, neg}, {E::sg, E::sa, S::omega_beta, neg},  \
  /* rho_se */                                                                   \
  {E::se, E::se, S::gamma_s, neg}, {E::se, E::se, S::gamma_a, neg_half},         \
  {E::se, E::se, S::omega12, neg_i},                                             \
  {E::se, E::ss, S::omega_alpha_conj, one}, {E::se, E::ee, S::omega_alpha_conj, neg}, \
  {E::se, E::ge, S::omega_alpha, one}, {E::se, E::sa, S::omega_beta_conj, neg},  \
  /* rho_eg */                                                                   \
  {E::eg, E::eg, S::gamma_s, neg_half}, {E::eg, E::eg, S::gamma_a, neg_half},    \
  {E::eg, E::sg, S::omega_alpha, one}, {E::eg, E::es, S::omega_alpha, neg},      \
  {E::eg, E::ag, S::omega_beta, neg}, {E::eg, E::ea, S::omega_beta, neg},        \
  /* rho_gs */                                                                   \
  {E::gs, E::gs, S::gamma_s, neg_half}, {E::gs, E::gs, S::omega12, i1},          \
  {E::gs, E::se, S::gamma_s, GS_SE},                                             \
  {E::gs, E::gg, S::omega_alpha_conj, one}, {E::gs, E::ss, S::omega_alpha_conj, neg}, \
  {E::gs, E::ge, S::omega_alpha, neg}, {E::gs, E::as, S::omega_beta_conj, neg},  \
  /* rho_es */                                                                   \
  {E::es, E::es, S::gamma_s, neg}, {E::es, E::es, S::gamma_a, neg_half},         \
  {E::es, E::es, S::omega12, i1},                                                \
  {E::es, E::ss, S::omega_alpha, one}, {E::es, E::ee, S::omega_alpha, neg},      \
  {E::es, E::eg, S::omega_alpha_conj, one}, {E::es, E::as, S::omega_beta, neg},  \
  /* rho_ge */                                                                   \
  {E::ge, E::ge, S::gamma_s, neg_half}, {E::ge, E::ge, S::gamma_a, neg_half},    \
  {E::ge, E::gs, S::omega_alpha_conj, one}, {E::ge, E::se, S::omega_alpha_conj, neg}, \
  {E::ge, E::ga, S::omega_beta_conj, neg}, {E::ge, E::ae, S::omega_beta_conj, neg}, \
  /* rho_aa */                                                                   \
  {E::aa, E::aa, S::gamma_a, neg}, {E::aa, E::ee, S::gamma_a, one},              \
  {E::aa, E::ga, S::omega_beta, one}, {E::aa, E::ae, S::omega_beta, one},        \
  {E::aa, E::ag, S::omega_beta_conj, one}, {E::aa, E::ea, S::omega_beta_conj, one}, \
  /* rho_ae */                                                                   \
  {E::ae, E::ae, S::gamma_s, neg_half}, {E::ae, E::ae, S::gamma_a, neg},         \
  {E::ae, E::ae, S::omega12, i1},                                                \
  {E::ae, E::aa, S::omega_beta_conj, neg}, {E::ae, E::ee, S::omega_beta_conj, one}, \
  {E::ae, E::ge, S::omega_beta, one}, {E::ae, E::as, S::omega_alpha_conj, one},  \
  /* rho_ag */                                                                   \
  {E::ag, E::ag, S::gamma_a, neg_half}, {E::ag, E::ag, S::omega12, i1},          \
  {E::ag, E::ea, S::gamma_a, AG_EA},                                              \
  {E::ag, E::gg, S::omega_beta, one}, {E::ag, E::aa, S::omega_beta, neg},        \
  {E::ag, E::eg, S::omega_beta_conj, one}, {E::ag, E::as, S::omega_alpha, neg},  \
  /* rho_as */                                                                   \
  {E::as, E::as, S::gamma_s, neg_half}, {E::as, E::as, S::gamma_a, neg_half},    \
  {E::as, E::as, S::omega12, i2},                                                \
  {E::as, E::ae, S::omega_alpha, neg}, {E::as, E::ag, S::omega_alpha_conj, one}, \
  {E::as, E::gs, S::omega_beta, one}, {E::as, E::es, S::omega_beta_conj, one},   \
  /* rho_ea */                                                                   \
  {E::ea, E::ea, S::gamma_s, neg_half}, {E::ea, E::ea, S::gamma_a, neg},         \
  {E::ea, E::ea, S::omega12, neg_i},                                             \
  {E::ea, E::aa, S::omega_beta, neg}, {E::ea, E::ee, S::omega_beta, one},        \
  {E::ea, E::eg, S::omega_beta_conj, one}, {E::ea, E::sa, S::omega_alpha, one},  \
  /* rho_ga */                                                                   \
  {E::ga, E::ga, S::gamma_a, neg_half}, {E::ga, E::ga, S::omega12, neg_i},       \
  {E::ga, E::ae, S::gamma_a, GA_AE},                                              \
  {E::ga, E::gg, S::omega_beta_conj, one}, {E::ga, E::aa, S::omega_beta_conj, neg}, \
  {E::ga, E::ge, S::omega_beta, one}, {E::ga, E::sa, S::omega_alpha_conj, neg},  \
  /* rho_sa */                                                                   \
  {E::sa, E::sa, S::gamma_s, neg_half}, {E::sa, E::sa, S::gamma_a, neg_half},    \
  {E::sa, E::sa, S::omega12, neg_i2},                                            \
  {E::sa, E::ea, S::omega_alpha_conj, neg}, {E::sa, E::ga, S::omega_alpha, one}, \
  {E::sa, E::sg, S::omega_beta_conj, one}, {E::sa, E::se, S::omega_beta, one}

// Detuning enters every coherence as -i Delta (N_row - N_col) with N the
// excitation number of each collective state.
#define NANOANTENNA_DETUNING_TERMS                                                        \
  {E::sg, E::sg, S::detuning, neg_i}, {E::se, E::se, S::detuning, i1},                   \
  {E::eg, E::eg, S::detuning, neg_i2}, {E::gs, E::gs, S::detuning, i1},                  \
  {E::es, E::es, S::detuning, neg_i}, {E::ge, E::ge, S::detuning, i2},                   \
  {E::ae, E::ae, S::detuning, i1}, {E::ag, E::ag, S::detuning, neg_i},                   \
  {E::ea, E::ea, S::detuning, neg_i}, {E::ga, E::ga, S::detuning, i1}

constexpr CoefficientTerm kDerived[] = {
    NANOANTENNA_COMMON_TERMS(one, one, neg, neg),
    NANOANTENNA_DETUNING_TERMS,
};

// Printed cross damping: -Gs/2 on rho_sg<-rho_es and rho_gs<-rho_se,
// -Ga/2 on rho_ag<-rho_ea and rho_ga<-rho_ae.
constexpr CoefficientTerm kLiteral[] = {
    NANOANTENNA_COMMON_TERMS(neg_half, neg_half, neg_half, neg_half),
};

#undef NANOANTENNA_COMMON_TERMS
#undef NANOANTENNA_DETUNING_TERMS

}  // namespace

std::span<const CoefficientTerm> coefficient_table(EquationForm form) {
  switch (form) {
    case EquationForm::paper_literal:
      return kLiteral;
    case EquationForm::derived:
    default:
      return kDerived;
  }
}

}  // namespace nanoantenna::liouvillian
