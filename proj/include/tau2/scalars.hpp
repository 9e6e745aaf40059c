#pragma once
// Scalar model data: coefficient functions a(u), d(u), delta(u), the
// truncation scalars, the inhomogeneous-term polynomial F(u) and the
// constant c, plus cached parameter products.
#include "tau2/transfer.hpp"

namespace tau2 {

struct ModelConstants {
  cplx Dp, Dm, Fp, Fm, Gp, Gm, Hp, Hm;  // site-parameter products
  cplx c_numerator;       // bracket fixing c; ~0 on the degenerate surface
  cplx c = 0.0;           // defined when |c_numerator| is away from zero
  bool degenerate = false;
  cplx asym_coeff;        // scalar in lim t(u): -1/4 {e^{dth} Fp Fm' ...}
};

ModelConstants model_constants(const ModelConfig& cfg);

// fitted Laurent form of F(u): step 2p, degrees -p(2N+4) .. p(2N+4)
LaurentFit f_curve(const ModelConfig& cfg);

// context with eagerly cached constants and the fitted F curve
struct ScalarContext {
  ModelConfig cfg;
  ModelConstants k;
  LaurentFit f_fit;
  explicit ScalarContext(const ModelConfig& c)
      : cfg(c), k(model_constants(c)), f_fit(f_curve(c)) {}
};

// distance to the nearest zero of sh(2u + j eta), j in [-(2p+1), 2p+1];
// the coefficient functions and their eta-shifted products degrade there
double pole_proximity(cplx u, const ModelConfig& cfg);

// coefficient functions; a_func throws std::domain_error at sinh(2u+eta) ~ 0
cplx a_func(cplx u, const ModelConfig& cfg);
cplx d_func(cplx u, const ModelConfig& cfg);
cplx delta_fn(cplx u, const ModelConfig& cfg);            // a(u) d(u-eta)
cplx delta_from_dets(cplx u, const ModelConfig& cfg);     // determinant form

cplx abar(cplx u, const ModelConfig& cfg);  // prod_m a(u - m eta)
cplx dbar(cplx u, const ModelConfig& cfg);

// truncation scalars: diagonal of Kentries+ avgT Kentries- avgThat (p = 3)
std::pair<cplx, cplx> tilde_ad(cplx u, const ModelConfig& cfg);

cplx f_func(cplx u, const ModelConfig& cfg);  // tildeA + tildeD - abar - dbar

// throws std::domain_error("degenerate parameter surface: ...") if the
// defining bracket nearly vanishes
cplx c_constant(const ModelConfig& cfg);

cplx asymptotic_coeff(const ModelConfig& cfg);  // without the e^{+-(...)u} factor

cplx t_zero_scalar(const ModelConfig& cfg);      // t(0) = scalar * id
cplx t_half_pi_scalar(const ModelConfig& cfg);   // t(i pi/2) = scalar * id

// fitted Laurent coefficients of any sampled scalar (utility for tests/tq)
LaurentFit fit_scalar(const std::function<cplx(cplx)>& f, int step, int min_deg,
                      int max_deg, Rng& rng);

}  // namespace tau2
