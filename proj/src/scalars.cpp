#include "tau2/scalars.hpp"

#include <stdexcept>

namespace tau2 {

ModelConstants model_constants(const ModelConfig& cfg) {
  ModelConstants k;
  k.Dp = k.Dm = k.Fp = k.Fm = k.Gp = k.Gm = k.Hp = k.Hm = 1.0;
  for (const auto& s : cfg.sites) {
    k.Dp *= s.dp;
    k.Dm *= s.dm;
    k.Fp *= s.fp;
    k.Fm *= s.fm;
    k.Gp *= s.gp;
    k.Gm *= s.gm;
    k.Hp *= s.hp;
    k.Hm *= s.hm;
  }
  const auto& b = cfg.boundary;
  const cplx eta = cfg.eta();
  const double p = cfg.p;
  const double sgn = (cfg.N % 2 == 0) ? 1.0 : -1.0;
  const cplx dth = b.tp - b.tm;
  const cplx sab = b.ap + b.bp + b.am + b.bm;
  k.c_numerator = 0.25 * (std::exp(dth) * k.Fp * k.Fm + std::exp(-dth) * k.Dp * k.Dm -
                          sgn * std::exp(-sab) * k.Gm * k.Hp * std::exp(-eta) -
                          sgn * std::exp(sab) * k.Gp * k.Hm * std::exp(eta));
  cplx denom = std::pow(0.5, 2 * cfg.p) *
               (std::exp(p * dth) * std::pow(k.Fp * k.Fm, cfg.p) +
                std::exp(-p * dth) * std::pow(k.Dp * k.Dm, cfg.p) -
                sgn * std::exp(-p * sab) * std::pow(k.Gm * k.Hp, cfg.p) -
                sgn * std::exp(p * sab) * std::pow(k.Gp * k.Hm, cfg.p));
  cplx scale = std::abs(std::exp(dth) * k.Fp * k.Fm) + std::abs(std::exp(-dth) * k.Dp * k.Dm) +
               std::abs(k.Gm * k.Hp) + std::abs(k.Gp * k.Hm);
  k.degenerate = std::abs(k.c_numerator) < 1e-10 * std::abs(scale);
  if (!k.degenerate) k.c = k.c_numerator / denom;
  k.asym_coeff = -0.25 * std::exp(static_cast<double>(cfg.N + 2) * eta) *
                 (std::exp(dth) * k.Fp * k.Fm + std::exp(-dth) * k.Dp * k.Dm);
  return k;
}

double pole_proximity(cplx u, const ModelConfig& cfg) {
  const cplx eta = cfg.eta();
  double best = std::numeric_limits<double>::infinity();
  for (int j = -(2 * cfg.p + 1); j <= 2 * cfg.p + 1; ++j)
    best = std::min(best, std::abs(sh(2.0 * u + static_cast<double>(j) * eta)));
  return best;
}

cplx a_func(cplx u, const ModelConfig& cfg) {
  const cplx eta = cfg.eta();
  cplx den = sh(2.0 * u + eta);
  if (std::abs(den) < 1e-12)
    throw std::domain_error("a(u) evaluated at a pole of sh(2u+eta)");
  cplx Ab = std::exp(-static_cast<double>(cfg.N) * eta);
  for (const auto& s : cfg.sites) Ab *= s.gm * s.hp;
  for (const auto& s : cfg.sites) {
    Ab *= (std::exp(u) - std::exp(-u + 2.0 * eta) * s.dm * s.fm / (s.gm * s.hp));
    Ab *= (std::exp(-u) * s.dp * s.fp / (s.gm * s.hp) - std::exp(u));
  }
  const auto& b = cfg.boundary;
  return -4.0 * sh(2.0 * u + 2.0 * eta) / den * sh(u - b.am) * sh(u - b.ap) *
         ch(u - b.bm) * ch(u - b.bp) * Ab;
}

cplx d_func(cplx u, const ModelConfig& cfg) { return a_func(-u - cfg.eta(), cfg); }

cplx delta_fn(cplx u, const ModelConfig& cfg) {
  return a_func(u, cfg) * d_func(u - cfg.eta(), cfg);
}

cplx delta_from_dets(cplx u, const ModelConfig& cfg) {
  const cplx eta = cfg.eta();
  cplx nu = 1.0 / (sh(2.0 * u + eta) * sh(2.0 * u - eta));
  return -nu * detq_k_plus(u, cfg.boundary, eta) * detq_t(cfg, u) *
         detq_k_minus(u, cfg.boundary, eta) * detq_t_hat(cfg, u);
}

cplx abar(cplx u, const ModelConfig& cfg) {
  cplx out = 1.0;
  for (int m = 1; m <= cfg.p; ++m) out *= a_func(u - static_cast<double>(m) * cfg.eta(), cfg);
  return out;
}

cplx dbar(cplx u, const ModelConfig& cfg) {
  cplx out = 1.0;
  for (int m = 1; m <= cfg.p; ++m) out *= d_func(u - static_cast<double>(m) * cfg.eta(), cfg);
  return out;
}

std::pair<cplx, cplx> tilde_ad(cplx u, const ModelConfig& cfg) {
  Mat M = fused_k_entries_plus(u, cfg.boundary) * avg_monodromy(cfg, u, false) *
          fused_k_entries_minus(u, cfg.boundary) * avg_monodromy(cfg, u, true);
  return {M(0, 0), M(1, 1)};
}

cplx f_func(cplx u, const ModelConfig& cfg) {
  auto [ta, td] = tilde_ad(u, cfg);
  return ta + td - abar(u, cfg) - dbar(u, cfg);
}

cplx c_constant(const ModelConfig& cfg) {
  ModelConstants k = model_constants(cfg);
  if (k.degenerate)
    throw std::domain_error(
        "degenerate parameter surface: the bracket fixing c vanishes");
  return k.c;
}

cplx asymptotic_coeff(const ModelConfig& cfg) { return model_constants(cfg).asym_coeff; }

cplx t_zero_scalar(const ModelConfig& cfg) {
  const auto& b = cfg.boundary;
  const cplx eta = cfg.eta();
  cplx out = -8.0 * sh(b.am) * ch(b.bm) * sh(b.ap) * ch(b.bp) * ch(eta);
  for (const auto& s : cfg.sites)
    out *= std::exp(-eta) * s.dp * s.fp + std::exp(eta) * s.dm * s.fm -
           std::exp(eta) * s.gp * s.hm - std::exp(-eta) * s.gm * s.hp;
  return out;
}

cplx t_half_pi_scalar(const ModelConfig& cfg) {
  const auto& b = cfg.boundary;
  const cplx eta = cfg.eta();
  cplx out = -8.0 * ch(b.am) * sh(b.bm) * ch(b.ap) * sh(b.bp) * ch(eta);
  for (const auto& s : cfg.sites)
    out *= std::exp(-eta) * s.dp * s.fp + std::exp(eta) * s.dm * s.fm +
           std::exp(eta) * s.gp * s.hm + std::exp(-eta) * s.gm * s.hp;
  return out;
}

LaurentFit fit_scalar(const std::function<cplx(cplx)>& f, int step, int min_deg,
                      int max_deg, Rng& rng) {
  int nc = (max_deg - min_deg) / step + 1;
  int m = nc + 4;
  // keep |Re u| small enough that |e^{deg u}| stays within ~e^3 of unity,
  // otherwise the least-squares system is hopelessly ill conditioned
  int worst = std::max(std::abs(min_deg), std::abs(max_deg));
  double xmax = std::min(0.9, 3.0 / std::max(1, worst));
  std::vector<cplx> us(m), fs(m);
  for (int i = 0; i < m; ++i) {
    for (int tries = 0; tries < 100; ++tries) {
      us[i] = rng.box(xmax, 1.5);
      try {
        fs[i] = f(us[i]);
        break;
      } catch (const std::domain_error&) {
        // redraw away from a pole of the sampled function
      }
    }
  }
  return laurent_fit(us, fs, step, min_deg, max_deg);
}

LaurentFit f_curve(const ModelConfig& cfg) {
  Rng rng(cfg.seed ^ 0x5fc0ffeeULL);
  int d = cfg.p * (2 * cfg.N + 4);
  auto guarded = [&](cplx u) {
    if (pole_proximity(u, cfg) < 1e-3)
      throw std::domain_error("sample too close to a coefficient-function pole");
    return f_func(u, cfg);
  };
  return fit_scalar(guarded, 2 * cfg.p, -d, d, rng);
}

}  // namespace tau2
