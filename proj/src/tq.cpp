#include "tau2/tq.hpp"

#include <algorithm>
#include <array>

namespace tau2 {

namespace {

cplx poly_eval_w(const std::vector<cplx>& coeffs, cplx w) {
  cplx out = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out = out * w + *it;
  return out;
}

cplx guarded_point(Rng& rng, const ModelConfig& cfg, double xmax = 0.9,
                   double ymax = 1.2) {
  for (int tries = 0; tries < 200; ++tries) {
    cplx u = rng.box(xmax, ymax);
    if (pole_proximity(u, cfg) > 1e-3) return u;
  }
  return rng.box(xmax, ymax);
}

// T_p(w)^2 - 1 scaled monic, ascending in w.  With w = ch(2u+eta) and
// eta = 2 i pi / p this equals sh(2pu)^2 up to the leading 2^{2p-2}, so its
// w-roots are the 2p zeros of sh(2pu): the relation pins that factor inside
// Q and only the remaining (p-1)N roots are solution-dependent.
std::vector<double> structural_monic(int p) {
  std::vector<double> t0{1.0}, t1{0.0, 1.0};
  for (int k = 2; k <= p; ++k) {
    std::vector<double> t2(k + 1, 0.0);
    for (int j = 0; j < k; ++j) t2[j + 1] += 2.0 * t1[j];
    for (int j = 0; j <= k - 2; ++j) t2[j] -= t0[j];
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::vector<double> s(2 * p + 1, 0.0);
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j) s[i + j] += t1[i] * t1[j];
  s[0] -= 1.0;
  const double lead = s[2 * p];
  for (auto& v : s) v /= lead;
  return s;
}

std::vector<int> w_flags(const std::vector<cplx>& ws) {
  const int n = static_cast<int>(ws.size());
  std::vector<int> fl(n, 0);
  for (int i = 0; i < n; ++i) {
    cplx w = ws[i];
    if (std::abs(w - 1.0) < 1e-8 || std::abs(w + 1.0) < 1e-8) fl[i] |= 1;
    for (int j = 0; j < n; ++j)
      if (j != i && std::abs(w - ws[j]) <
                        1e-6 * std::max({1.0, std::abs(w), std::abs(ws[j])}))
        fl[i] |= 2;
  }
  return fl;
}

// least-squares solve for a monic-scaled degree-deg polynomial in
// w = cosh(2u+eta) satisfying lam(u) Q(u) = a Q(u-eta) + d Q(u+eta) + inh(u)
std::vector<cplx> two_term_ls(const ModelConfig& cfg,
                              const std::function<cplx(cplx)>& lam,
                              const std::function<cplx(cplx)>& inh, int deg,
                              const std::vector<cplx>& upts) {
  const cplx eta = cfg.eta();
  const int npts = static_cast<int>(upts.size());
  const double lead = std::pow(2.0, -deg);
  Mat A(npts, std::max(deg, 1));
  CVec b(npts);
  if (deg == 0) return {1.0};
  for (int i = 0; i < npts; ++i) {
    cplx us = upts[i];
    cplx cu = lam(us), cm = -a_func(us, cfg), cp = -d_func(us, cfg);
    cplx wu = ch(2.0 * us + eta), wm = ch(2.0 * (us - eta) + eta),
         wp = ch(2.0 * (us + eta) + eta);
    cplx pu = 1.0, pm = 1.0, pp = 1.0;
    for (int m = 0; m < deg; ++m) {
      A(i, m) = cu * pu + cm * pm + cp * pp;
      pu *= wu;
      pm *= wm;
      pp *= wp;
    }
    b(i) = -(cu * pu + cm * pm + cp * pp) * lead + inh(us);
    double rs = std::abs(b(i));
    for (int m = 0; m < deg; ++m) rs = std::max(rs, std::abs(A(i, m)));
    if (rs > 0.0) {
      A.row(i) /= rs;
      b(i) /= rs;
    }
  }
  CVec qc = A.colPivHouseholderQr().solve(b);
  std::vector<cplx> qfull(deg + 1);
  for (int m = 0; m < deg; ++m) qfull[m] = qc(m);
  qfull[deg] = lead;
  return qfull;
}

}  // namespace

cplx q_eval(const std::vector<cplx>& qcoeffs, cplx u, cplx eta) {
  return poly_eval_w(qcoeffs, ch(2.0 * u + eta));
}

QSolution solve_q(const ScalarContext& sc, const SpectrumResult& sr, int index,
                  Rng& rng, double corrupt_c) {
  const ModelConfig& cfg = sc.cfg;
  const cplx eta = cfg.eta();
  QSolution qs;
  qs.index = index;
  qs.m_prime = (cfg.p - 1) * cfg.N + 2 * cfg.p;
  try {
    const double pref = tq_prefactor(cfg);
    const cplx c = sc.k.c * corrupt_c;
    auto lam = [&](cplx u) { return transported_eigenvalues(sr, cfg, u)(index); };
    auto inh = [&](cplx u) {
      return pref * c * sh(2.0 * u) * sh(2.0 * u + 2.0 * eta) *
             sc.f_fit.curve.eval(u);
    };
    std::vector<cplx> upts(2 * qs.m_prime + 10);
    for (auto& u : upts) u = guarded_point(rng, cfg);
    qs.qcoeffs = two_term_ls(cfg, lam, inh, qs.m_prime, upts);

    double rmax = 0.0;
    for (int i = 0; i < 50; ++i) {
      cplx us = guarded_point(rng, cfg);
      cplx t1 = lam(us) * q_eval(qs.qcoeffs, us, eta);
      cplx t2 = a_func(us, cfg) * q_eval(qs.qcoeffs, us - eta, eta);
      cplx t3 = d_func(us, cfg) * q_eval(qs.qcoeffs, us + eta, eta);
      double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
      rmax = std::max(rmax, std::abs(t1 - t2 - t3 - inh(us)) / scale);
    }
    qs.tq_residual = rmax;
    qs.roots = extract_roots(qs.qcoeffs, eta, &qs.branch_flags);

    // divide out the pinned sh(2pu) factor; the quotient carries the Bethe
    // roots in well-separated positions, while the raw companion roots smear
    // the pinned ones by sqrt(eps) at the w = +-1 branch points
    double structural_rem = 0.0;
    const int tp = 2 * cfg.p;
    if (static_cast<int>(qs.qcoeffs.size()) == qs.m_prime + 1 &&
        qs.m_prime > tp) {
      const std::vector<double> smon = structural_monic(cfg.p);
      std::vector<cplx> rem = qs.qcoeffs;
      std::vector<cplx> qhat(qs.m_prime - tp + 1);
      for (int k = static_cast<int>(qhat.size()) - 1; k >= 0; --k) {
        cplx c0 = rem[k + tp];
        qhat[k] = c0;
        for (int j = 0; j <= tp; ++j) rem[k + j] -= c0 * smon[j];
      }
      double scale = 0.0, rmag = 0.0;
      for (cplx c0 : qs.qcoeffs) scale = std::max(scale, std::abs(c0));
      for (int j = 0; j < tp; ++j) rmag = std::max(rmag, std::abs(rem[j]));
      structural_rem = rmag / scale;
      std::vector<cplx> gw = poly_roots(qhat);
      if (structural_rem < 1e-7 &&
          gw.size() + 1 == qhat.size()) {
        std::vector<cplx> ws, roots;
        for (int j = -(cfg.p - 1); j <= cfg.p; ++j) {
          cplx uj(0.0, M_PI * j / (2.0 * cfg.p));
          roots.push_back(uj);
          ws.push_back(ch(2.0 * uj + eta));
        }
        for (cplx w : gw) {
          ws.push_back(w);
          roots.push_back(0.5 * (std::log(w + std::sqrt(w * w - 1.0)) - eta));
        }
        qs.roots = std::move(roots);
        qs.branch_flags = w_flags(ws);
      } else {
        structural_rem = 0.0;  // corrupted or non-factoring: keep raw roots
      }
    }
    qs.max_bae_residual = std::max(bae_residual(sc, qs), structural_rem);
    if (rmax > 1e-6) {
      qs.note = "eigenvalue " + std::to_string(index) + ": T-Q residual " +
                std::to_string(rmax) + " exceeds 1e-6";
    } else if (static_cast<int>(qs.roots.size()) != qs.m_prime) {
      qs.note = "eigenvalue " + std::to_string(index) + ": expected " +
                std::to_string(qs.m_prime) + " roots, got " +
                std::to_string(qs.roots.size());
    } else {
      qs.ok = true;
    }
  } catch (const std::exception& ex) {
    qs.note = "eigenvalue " + std::to_string(index) + ": " + ex.what();
  }
  return qs;
}

std::vector<cplx> extract_roots(const std::vector<cplx>& qcoeffs, cplx eta,
                                std::vector<int>* flags) {
  std::vector<cplx> wroots = poly_roots(qcoeffs);
  std::vector<cplx> roots(wroots.size());
  for (std::size_t i = 0; i < wroots.size(); ++i) {
    cplx w = wroots[i];
    roots[i] = 0.5 * (std::log(w + std::sqrt(w * w - 1.0)) - eta);
  }
  if (flags) *flags = w_flags(wroots);
  return roots;
}

double bae_residual(const ScalarContext& sc, const QSolution& qs) {
  const ModelConfig& cfg = sc.cfg;
  const cplx eta = cfg.eta();
  const double pref = tq_prefactor(cfg);
  std::vector<std::array<double, 3>> mags;
  std::vector<cplx> sums;
  for (cplx lj : qs.roots) {
    // roots on the sh(2pu) lattice sit on poles of the coefficient
    // functions; the relation there is certified by tq_residual instead
    if (pole_proximity(lj, cfg) < 1e-4) continue;
    cplx t1 = a_func(lj, cfg) * q_eval(qs.qcoeffs, lj - eta, eta);
    cplx t2 = d_func(lj, cfg) * q_eval(qs.qcoeffs, lj + eta, eta);
    cplx t3 = pref * sc.k.c * sh(2.0 * lj) * sh(2.0 * lj + 2.0 * eta) *
              sc.f_fit.curve.eval(lj);
    mags.push_back({std::abs(t1), std::abs(t2), std::abs(t3)});
    sums.push_back(t1 + t2 + t3);
  }
  double big = 0.0;
  for (const auto& m : mags) big = std::max({big, m[0], m[1], m[2]});
  double floor = 1e-12 * big;
  double worst = 0.0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    double scale = std::max({mags[i][0], mags[i][1], mags[i][2], floor});
    worst = std::max(worst, std::abs(sums[i]) / scale);
  }
  return worst;
}

namespace {

// complex residual vector of the degenerate-surface conditions: the bracket
// fixing c, then the F coefficients that must vanish (l = 1 .. N+2), each
// normalized so it measures cancellation between the two product sums
std::vector<cplx> degenerate_residuals(const ModelConfig& cfg,
                                       const std::vector<cplx>& nodes) {
  ModelConstants k = model_constants(cfg);
  const auto& b = cfg.boundary;
  const cplx dth = b.tp - b.tm;
  const cplx sab = b.ap + b.bp + b.am + b.bm;
  double sb = std::abs(std::exp(dth) * k.Fp * k.Fm) +
              std::abs(std::exp(-dth) * k.Dp * k.Dm) +
              std::abs(std::exp(-sab - cfg.eta()) * k.Gm * k.Hp) +
              std::abs(std::exp(sab + cfg.eta()) * k.Gp * k.Hm);
  std::vector<cplx> res;
  res.push_back(4.0 * k.c_numerator / std::max(sb, 1e-300));

  const int step = 2 * cfg.p;
  const int dmax = cfg.p * (2 * cfg.N + 4);
  const int m = static_cast<int>(nodes.size());
  std::vector<cplx> us(m), gs(m), hs(m);
  for (int i = 0; i < m; ++i) {
    us[i] = nodes[i];
    auto [ta, td] = tilde_ad(nodes[i], cfg);
    gs[i] = ta + td;
    hs[i] = abar(nodes[i], cfg) + dbar(nodes[i], cfg);
  }
  LaurentFit gf = laurent_fit(us, gs, step, -dmax, dmax);
  LaurentFit hf = laurent_fit(us, hs, step, -dmax, dmax);
  double scale = 0.0;
  for (int i = 0; i < gf.curve.n_coeffs(); ++i)
    scale = std::max(scale, std::abs(gf.curve.coeffs[i]) + std::abs(hf.curve.coeffs[i]));
  // F_l multiplies e^{p(2N+4-2l)u}; ascending coefficient index is 2N+4-l.
  // Each difference is normalized by its own pair of coefficients, not by the
  // global scale: the coefficients span orders of magnitude, and a small
  // coefficient divided by the global maximum would read as near-zero without
  // any cancellation.  The global scale only floors the denominator.
  for (int l = 1; l <= cfg.N + 2; ++l) {
    int i = 2 * cfg.N + 4 - l;
    double den = std::max(std::abs(gf.curve.coeffs[i]) + std::abs(hf.curve.coeffs[i]),
                          1e-8 * std::max(scale, 1e-300));
    res.push_back((gf.curve.coeffs[i] - hf.curve.coeffs[i]) / den);
  }
  return res;
}

std::vector<cplx> degenerate_nodes(const ModelConfig& cfg, Rng& rng) {
  const int nc = 2 * cfg.N + 5;
  const double xmax = std::min(0.9, 3.0 / (cfg.p * (2 * cfg.N + 4)));
  std::vector<cplx> nodes(nc + 3);
  for (auto& u : nodes) {
    for (int tries = 0; tries < 200; ++tries) {
      u = rng.box(xmax, 1.5);
      if (pole_proximity(u, cfg) > 1e-3) break;
    }
  }
  return nodes;
}

}  // namespace

DegenerateReport degenerate_constraints(const ModelConfig& cfg, double tol) {
  DegenerateReport rep;
  Rng rng(cfg.seed ^ 0xdecadeULL);
  auto res = degenerate_residuals(cfg, degenerate_nodes(cfg, rng));
  rep.residuals.resize(res.size());
  bool all = true;
  for (std::size_t i = 0; i < res.size(); ++i) {
    rep.residuals[i] = std::abs(res[i]);
    all = all && rep.residuals[i] < tol;
  }
  rep.in_regime = all;

  ModelConstants k = model_constants(cfg);
  const auto& b = cfg.boundary;
  const cplx dth = b.tp - b.tm;
  const cplx sab = b.ap + b.bp + b.am + b.bm;
  const double sgn = (cfg.N % 2 == 0) ? 1.0 : -1.0;
  double sb = std::abs(k.Fp * k.Fm) + std::abs(k.Dp * k.Dm) +
              std::abs(k.Gm * k.Hp) + std::abs(k.Gp * k.Hm);
  for (int M = 0; M < 3 * cfg.p; ++M) {
    cplx ex = static_cast<double>(2 * cfg.N + 2 * M + 1) * cfg.eta();
    cplx v = std::exp(dth) * k.Fp * k.Fm + std::exp(-dth) * k.Dp * k.Dm -
             sgn * std::exp(-sab) * k.Gm * k.Hp * std::exp(-ex) -
             sgn * std::exp(sab) * k.Gp * k.Hm * std::exp(ex);
    if (std::abs(v) < tol * std::max(sb, 1e-300)) rep.feasible_M.push_back(M);
  }
  return rep;
}

std::optional<ModelConfig> degenerate_search(std::uint64_t seed, int p, int N,
                                             int max_starts) {
  const int nvar = 2 * (N + 3);  // Re/Im of alpha_-, beta_-, theta_-, g_n^+
  for (int start = 0; start < max_starts; ++start) {
    ModelConfig cfg0 = gen_config(seed + 1000ULL * start, p, N);
    Rng rng(seed ^ (0xabcdULL + start));
    auto nodes = degenerate_nodes(cfg0, rng);

    auto build = [&](const Eigen::VectorXd& x) {
      ModelConfig cfg = cfg0;
      cfg.boundary.am = cplx(x(0), x(1));
      cfg.boundary.bm = cplx(x(2), x(3));
      cfg.boundary.tm = cplx(x(4), x(5));
      for (int n = 0; n < N; ++n) {
        const SiteParams& s = cfg0.sites[n];
        cplx gp(x(6 + 2 * n), x(7 + 2 * n));
        cfg.sites[n] = make_site(s.dp, s.dm, s.fp, s.fm, gp, s.gm);
      }
      return cfg;
    };
    auto resid = [&](const Eigen::VectorXd& x) {
      Eigen::VectorXd r = Eigen::VectorXd::Constant(nvar, 1e6);
      ModelConfig cfg = build(x);
      for (const auto& s : cfg.sites)
        if (std::abs(s.gp) < 0.02 || std::abs(s.gp) > 50.0) return r;
      auto cres = degenerate_residuals(cfg, nodes);
      for (int i = 0; i < N + 3; ++i) {
        r(2 * i) = cres[i].real();
        r(2 * i + 1) = cres[i].imag();
      }
      return r;
    };

    Eigen::VectorXd x(nvar);
    x << cfg0.boundary.am.real(), cfg0.boundary.am.imag(), cfg0.boundary.bm.real(),
        cfg0.boundary.bm.imag(), cfg0.boundary.tm.real(), cfg0.boundary.tm.imag();
    for (int n = 0; n < N; ++n) {
      x(6 + 2 * n) = cfg0.sites[n].gp.real();
      x(7 + 2 * n) = cfg0.sites[n].gp.imag();
    }

    Eigen::VectorXd r = resid(x);
    double lambda = 1e-3;
    for (int iter = 0; iter < 150 && r.lpNorm<Eigen::Infinity>() > 1e-11; ++iter) {
      Eigen::MatrixXd J(nvar, nvar);
      for (int i = 0; i < nvar; ++i) {
        double h = 1e-6 * (1.0 + std::abs(x(i)));
        Eigen::VectorXd xp = x;
        xp(i) += h;
        J.col(i) = (resid(xp) - r) / h;
      }
      Eigen::MatrixXd JtJ = J.transpose() * J;
      Eigen::VectorXd g = J.transpose() * r;
      bool accepted = false;
      for (int damp = 0; damp < 12; ++damp) {
        Eigen::MatrixXd A = JtJ + lambda * Eigen::MatrixXd::Identity(nvar, nvar);
        Eigen::VectorXd delta = A.ldlt().solve(-g);
        Eigen::VectorXd xt = x + delta;
        Eigen::VectorXd rt = resid(xt);
        if (rt.norm() < r.norm()) {
          x = xt;
          r = rt;
          lambda = std::max(lambda / 3.0, 1e-12);
          accepted = true;
          break;
        }
        lambda *= 10.0;
      }
      if (!accepted) break;
    }
    if (r.lpNorm<Eigen::Infinity>() < 1e-9) {
      ModelConfig found = build(x);
      if (degenerate_constraints(found).in_regime) return found;
    }
  }
  return std::nullopt;
}

ConventionalTQReport conventional_tq_verify(const ModelConfig& cfg, Rng& rng) {
  ConventionalTQReport rep;
  DegenerateReport dc = degenerate_constraints(cfg);
  if (!dc.in_regime) {
    rep.note = "not in degenerate regime";
    return rep;
  }
  rep.in_regime = true;
  if (dc.feasible_M.empty()) {
    rep.note = "degenerate surface but no feasible truncation degree M";
    return rep;
  }
  SpectrumResult sr = eigencurves(cfg, rng);
  const int Q = cfg.qdim();
  const cplx eta = cfg.eta();
  auto zero_inh = [](cplx) { return cplx(0.0); };

  int tried = 0;
  for (int M : dc.feasible_M) {
    if (++tried > 3) break;
    std::vector<cplx> upts(2 * M + 12);
    for (auto& u : upts) u = guarded_point(rng, cfg);
    double worst_tq = 0.0, worst_bae = 0.0;
    for (int k = 0; k < Q; ++k) {
      auto lam = [&](cplx u) { return transported_eigenvalues(sr, cfg, u)(k); };
      std::vector<cplx> qbar = two_term_ls(cfg, lam, zero_inh, M, upts);
      for (int i = 0; i < 30; ++i) {
        cplx us = guarded_point(rng, cfg);
        cplx t1 = lam(us) * q_eval(qbar, us, eta);
        cplx t2 = a_func(us, cfg) * q_eval(qbar, us - eta, eta);
        cplx t3 = d_func(us, cfg) * q_eval(qbar, us + eta, eta);
        double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
        worst_tq = std::max(worst_tq, std::abs(t1 - t2 - t3) / scale);
      }
      if (M > 0) {
        std::vector<cplx> roots = extract_roots(qbar, eta);
        std::vector<cplx> sums;
        std::vector<double> big;
        for (cplx lj : roots) {
          if (pole_proximity(lj, cfg) < 1e-4) continue;
          cplx t1 = a_func(lj, cfg) * q_eval(qbar, lj - eta, eta);
          cplx t2 = d_func(lj, cfg) * q_eval(qbar, lj + eta, eta);
          sums.push_back(t1 + t2);
          big.push_back(std::max(std::abs(t1), std::abs(t2)));
        }
        double floor = big.empty() ? 0.0 : 1e-12 * *std::max_element(big.begin(), big.end());
        for (std::size_t i = 0; i < sums.size(); ++i)
          worst_bae = std::max(worst_bae,
                               std::abs(sums[i]) / std::max(big[i], floor));
      }
    }
    if (worst_tq < 1e-6 && worst_bae < 1e-6) {
      rep.M = M;
      rep.max_tq_residual = worst_tq;
      rep.max_bae_residual = worst_bae;
      rep.pass = true;
      rep.note = "two-term T-Q verified with deg Q = " + std::to_string(M);
      return rep;
    }
    if (rep.note.empty() || worst_tq < rep.max_tq_residual) {
      rep.M = M;
      rep.max_tq_residual = worst_tq;
      rep.max_bae_residual = worst_bae;
      rep.note = "best residual " + std::to_string(worst_tq) + " at deg Q = " +
                 std::to_string(M);
    }
  }
  return rep;
}

}  // namespace tau2
