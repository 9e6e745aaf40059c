#include "tau2/spectrum.hpp"

#include <stdexcept>

namespace tau2 {

namespace {

double min_gap(const CVec& vals) {
  double scale = vals.cwiseAbs().maxCoeff();
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < vals.size(); ++i)
    for (int j = i + 1; j < vals.size(); ++j)
      gap = std::min(gap, std::abs(vals(i) - vals(j)) / std::max(scale, 1e-300));
  return gap;
}

CVec diag_in_basis(const Mat& V, const Mat& Vinv, const Mat& op, double* leakage) {
  Mat D = Vinv * op * V;
  CVec d = D.diagonal();
  if (leakage) {
    Mat off = D;
    off.diagonal().setZero();
    *leakage = off.norm() / std::max(D.norm(), 1e-300);
  }
  return d;
}

}  // namespace

SpectrumResult eigencurves(const ModelConfig& cfg, Rng& rng) {
  const int Q = cfg.qdim();
  SpectrumResult sr;

  bool anchored = false;
  for (int attempt = 0; attempt < 5 && !anchored; ++attempt) {
    cplx u0 = sample_u(rng);
    Mat t0 = transfer(cfg, u0);
    EigResult er = eig(t0);
    if (!er.ill_conditioned && er.cond < 1e6 && min_gap(er.values) > 1e-8) {
      sr.V = er.vectors;
      sr.anchor_u0 = u0;
      sr.eigvec_cond = er.cond;
      sr.used_combination = false;
      anchored = true;
      break;
    }
    cplx u1 = sample_u(rng);
    cplx gamma = cplx(rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8));
    Mat tc = t0 + gamma * transfer(cfg, u1);
    er = eig(tc);
    if (!er.ill_conditioned && er.cond < 1e6 && min_gap(er.values) > 1e-8) {
      sr.V = er.vectors;
      sr.anchor_u0 = u0;
      sr.anchor_u1 = u1;
      sr.gamma = gamma;
      sr.used_combination = true;
      sr.eigvec_cond = er.cond;
      anchored = true;
    }
  }
  if (!anchored)
    throw std::runtime_error(
        "eigencurves: no well-conditioned anchor found in 5 attempts");
  sr.Vinv = sr.V.inverse();

  const int step = 2, dmax = 2 * (cfg.N + 2);
  const int nc = cfg.N + 2 + 1 + cfg.N + 2;  // 2N+5 coefficients
  const double xmax = std::min(0.9, 3.0 / dmax);
  int m = nc + 1;  // 2N+6 samples, one held out by laurent_fit
  for (int grow = 0; grow < 4; ++grow) {
    std::vector<cplx> us(m);
    std::vector<CVec> vals(m);
    double worst_leak = 0.0;
    for (int i = 0; i < m; ++i) {
      us[i] = rng.box(xmax, 1.5);
      double leak = 0.0;
      vals[i] = transported_eigenvalues(sr, cfg, us[i], &leak);
      worst_leak = std::max(worst_leak, leak);
    }
    sr.max_offdiag_leakage = worst_leak;
    sr.curves.assign(Q, EigCurve{});
    double worst_fit = 0.0;
    for (int k = 0; k < Q; ++k) {
      std::vector<cplx> fs(m);
      for (int i = 0; i < m; ++i) fs[i] = vals[i](k);
      LaurentFit lf = laurent_fit(us, fs, step, -dmax, dmax);
      sr.curves[k] = EigCurve{k, lf.curve, lf.heldout_residual, sr.eigvec_cond};
      worst_fit = std::max(worst_fit, lf.heldout_residual);
    }
    if (worst_fit <= 1e-9) break;
    m += nc;  // add samples and refit
  }
  return sr;
}

CVec transported_eigenvalues(const SpectrumResult& sr, const ModelConfig& cfg,
                             cplx u, double* leakage) {
  return diag_in_basis(sr.V, sr.Vinv, transfer(cfg, u), leakage);
}

CVec fused_eigenvalues(const SpectrumResult& sr, int twoj, const ModelConfig& cfg,
                       cplx u, double* leakage) {
  return diag_in_basis(sr.V, sr.Vinv, fused_transfer(twoj, cfg, u), leakage);
}

double det_rep_residual(const SpectrumResult& sr, int twoj,
                        const ModelConfig& cfg, cplx u) {
  const int Q = cfg.qdim();
  const cplx eta = cfg.eta();
  CVec fused = fused_eigenvalues(sr, twoj, cfg, u);
  std::vector<CVec> rows(twoj);
  std::vector<cplx> urow(twoj);
  for (int r = 0; r < twoj; ++r) {
    // row r (0-based) sits at u_r = u + (j + 1/2 - (r+1)) eta, descending
    urow[r] = u + ((twoj + 1) / 2.0 - (r + 1)) * eta;
    rows[r] = transported_eigenvalues(sr, cfg, urow[r]);
  }
  double worst = 0.0;
  for (int k = 0; k < Q; ++k) {
    Mat M = Mat::Zero(twoj, twoj);
    for (int r = 0; r < twoj; ++r) {
      M(r, r) = rows[r](k);
      if (r + 1 < twoj) M(r, r + 1) = -a_func(urow[r], cfg);
      if (r > 0) M(r, r - 1) = -d_func(urow[r], cfg);
    }
    cplx det = M.determinant();
    worst = std::max(worst,
                     std::abs(det - fused(k)) / std::max(std::abs(fused(k)), 1e-300));
  }
  return worst;
}

}  // namespace tau2
