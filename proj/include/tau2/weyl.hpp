#pragma once
// Cyclic Weyl-algebra representation and model configuration: X, Z with
// XZ = qZX at q = e^{-eta}, eta = 2 i pi / p, plus the per-site parameter
// set (d, f, g, h) subject to g h = f d type constraints.
#include "tau2/tensorkit.hpp"

namespace tau2 {

struct SiteParams {
  cplx dp, dm, fp, fm, gp, gm;  // free
  cplx hp, hm;                  // fixed by hm = fm dp / gm, hp = fp dm / gp
};

struct BoundaryParams {
  cplx am, bm, tm;  // alpha_-, beta_-, theta_-
  cplx ap, bp, tp;  // alpha_+, beta_+, theta_+
};

struct ModelConfig {
  int p = 3;
  int N = 1;
  std::uint64_t seed = 0;
  std::vector<SiteParams> sites;
  BoundaryParams boundary{};

  cplx eta() const { return cplx(0.0, 2.0 * M_PI / p); }
  cplx q() const { return std::exp(-eta()); }
  int qdim() const;  // p^N
};

Mat weyl_x(int p);
Mat weyl_z(int p);
// X^{-1} and Z^{-1} as the (p-1)-th matrix power, never a numerical inverse
Mat weyl_x_inv(int p);
Mat weyl_z_inv(int p);

// moduli drawn in [0.5, 2) with random phases; derived h's rejection-resampled
// away from zero
SiteParams gen_site_params(Rng& rng);
SiteParams make_site(cplx dp, cplx dm, cplx fp, cplx fm, cplx gp, cplx gm);

// throws std::invalid_argument("p must be odd >= 3") on bad p
ModelConfig gen_config(std::uint64_t seed, int p, int N);

double site_constraint_residual(const SiteParams& s);

// true iff (g+^p + g-^p)/(h+^p + h-^p) is site-independent
bool chiral_potts_constrained(const ModelConfig& cfg, double tol = 1e-10);

}  // namespace tau2
