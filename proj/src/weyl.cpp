#include "tau2/weyl.hpp"

#include <stdexcept>

namespace tau2 {

int ModelConfig::qdim() const {
  int d = 1;
  for (int i = 0; i < N; ++i) d *= p;
  return d;
}

Mat weyl_x(int p) {
  cplx q = std::exp(cplx(0.0, -2.0 * M_PI / p));
  Mat X = Mat::Zero(p, p);
  for (int m = 0; m < p; ++m) X(m, m) = std::pow(q, m);
  return X;
}

Mat weyl_z(int p) {
  Mat Z = Mat::Zero(p, p);
  for (int m = 0; m < p; ++m) Z((m + 1) % p, m) = 1.0;
  return Z;
}

namespace {
Mat mat_power(const Mat& A, int k) {
  Mat out = Mat::Identity(A.rows(), A.cols());
  for (int i = 0; i < k; ++i) out = out * A;
  return out;
}
}  // namespace

Mat weyl_x_inv(int p) { return mat_power(weyl_x(p), p - 1); }
Mat weyl_z_inv(int p) { return mat_power(weyl_z(p), p - 1); }

SiteParams make_site(cplx dp, cplx dm, cplx fp, cplx fm, cplx gp, cplx gm) {
  SiteParams s{dp, dm, fp, fm, gp, gm, 0.0, 0.0};
  s.hm = fm * dp / gm;
  s.hp = fp * dm / gp;
  return s;
}

SiteParams gen_site_params(Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    SiteParams s = make_site(rng.unit_modulus(0.5, 2.0), rng.unit_modulus(0.5, 2.0),
                             rng.unit_modulus(0.5, 2.0), rng.unit_modulus(0.5, 2.0),
                             rng.unit_modulus(0.5, 2.0), rng.unit_modulus(0.5, 2.0));
    if (std::abs(s.hp) > 0.1 && std::abs(s.hm) > 0.1) return s;
  }
  throw std::runtime_error("gen_site_params: rejection sampling failed");
}

ModelConfig gen_config(std::uint64_t seed, int p, int N) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("p must be odd >= 3");
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  ModelConfig cfg;
  cfg.p = p;
  cfg.N = N;
  cfg.seed = seed;
  Rng rng(seed);
  for (int n = 0; n < N; ++n) cfg.sites.push_back(gen_site_params(rng));
  cfg.boundary.am = rng.unit_modulus(0.5, 2.0);
  cfg.boundary.bm = rng.unit_modulus(0.5, 2.0);
  cfg.boundary.tm = rng.unit_modulus(0.5, 2.0);
  cfg.boundary.ap = rng.unit_modulus(0.5, 2.0);
  cfg.boundary.bp = rng.unit_modulus(0.5, 2.0);
  cfg.boundary.tp = rng.unit_modulus(0.5, 2.0);
  return cfg;
}

double site_constraint_residual(const SiteParams& s) {
  double r1 = std::abs(s.gm * s.hm - s.fm * s.dp) /
              std::max(std::abs(s.fm * s.dp), 1e-300);
  double r2 = std::abs(s.gp * s.hp - s.fp * s.dm) /
              std::max(std::abs(s.fp * s.dm), 1e-300);
  return std::max(r1, r2);
}

bool chiral_potts_constrained(const ModelConfig& cfg, double tol) {
  auto lam = [&](const SiteParams& s) {
    return (std::pow(s.gp, cfg.p) + std::pow(s.gm, cfg.p)) /
           (std::pow(s.hp, cfg.p) + std::pow(s.hm, cfg.p));
  };
  cplx l0 = lam(cfg.sites.front());
  for (const auto& s : cfg.sites)
    if (std::abs(lam(s) - l0) > tol * std::max(1.0, std::abs(l0))) return false;
  return true;
}

}  // namespace tau2
