#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tau2/tq.hpp"

using namespace tau2;

TEST_CASE("q_eval is a polynomial in cosh(2u + eta)") {
  const cplx eta(0.0, 2.0 * M_PI / 3);
  std::vector<cplx> coeffs{cplx(1, 2), cplx(-0.5, 0), cplx(0, 1)};
  cplx u(0.31, -0.22);
  cplx w = ch(2.0 * u + eta);
  CHECK(rel_diff(q_eval(coeffs, u, eta), coeffs[0] + coeffs[1] * w + coeffs[2] * w * w) <
        1e-15);
}

TEST_CASE("root extraction inverts a constructed Q polynomial") {
  const cplx eta(0.0, 2.0 * M_PI / 3);
  std::vector<cplx> lams{cplx(0.4, 0.3), cplx(-0.2, 0.6), cplx(0.1, -0.5)};
  std::vector<cplx> ws;
  for (cplx l : lams) ws.push_back(ch(2.0 * l + eta));

  // monic in w, then scaled so the leading coefficient is 2^{-M}
  std::vector<cplx> poly{1.0};
  for (cplx w : ws) {
    std::vector<cplx> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= w * poly[i];
    }
    poly = next;
  }
  for (auto& c : poly) c *= 0.125;

  std::vector<int> flags;
  auto roots = extract_roots(poly, eta, &flags);
  REQUIRE(roots.size() == 3);
  REQUIRE(flags.size() == 3);
  for (cplx w : ws) {
    double best = 1e18;
    for (cplx r : roots) best = std::min(best, std::abs(ch(2.0 * r + eta) - w));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("inhomogeneous T-Q solve at a single site") {
  ModelConfig cfg = gen_config(81, 3, 1);
  ScalarContext sc(cfg);
  CHECK(!sc.k.degenerate);
  Rng rng(81);
  SpectrumResult sr = eigencurves(cfg, rng);
  const int mprime = (cfg.p - 1) * cfg.N + 2 * cfg.p;

  for (int idx = 0; idx < cfg.qdim(); ++idx) {
    QSolution qs = solve_q(sc, sr, idx, rng);
    CHECK(qs.ok);
    CHECK(qs.m_prime == mprime);
    CHECK(static_cast<int>(qs.roots.size()) == mprime);
    CHECK(qs.tq_residual < 1e-6);
    CHECK(qs.max_bae_residual < 1e-6);
    CHECK(std::abs(qs.qcoeffs.back() - std::pow(0.5, mprime)) < 1e-15);
  }

  // corrupting the constant must break the relation
  QSolution bad = solve_q(sc, sr, 0, rng, 3.0);
  CHECK(bad.tq_residual > 1e-4);
}

TEST_CASE("Q carries the 2p roots pinned to the sh(2pu) lattice") {
  ModelConfig cfg = gen_config(81, 3, 1);
  ScalarContext sc(cfg);
  Rng rng(81);
  SpectrumResult sr = eigencurves(cfg, rng);

  for (int idx = 0; idx < cfg.qdim(); ++idx) {
    QSolution qs = solve_q(sc, sr, idx, rng);
    REQUIRE(qs.ok);
    int pinned = 0, generic = 0;
    for (int j = -(cfg.p - 1); j <= cfg.p; ++j) {
      cplx uj(0.0, M_PI * j / (2.0 * cfg.p));
      for (cplx r : qs.roots)
        if (std::abs(r - uj) < 1e-12) {
          ++pinned;
          break;
        }
    }
    for (cplx r : qs.roots)
      if (pole_proximity(r, cfg) > 1e-2) ++generic;
    CHECK(pinned == 2 * cfg.p);
    CHECK(generic == (cfg.p - 1) * cfg.N);
  }
}

TEST_CASE("degenerate diagnostics on a generic configuration") {
  ModelConfig cfg = gen_config(83, 3, 1);
  DegenerateReport dr = degenerate_constraints(cfg);
  REQUIRE(static_cast<int>(dr.residuals.size()) == cfg.N + 3);
  CHECK(!dr.in_regime);
  double dmin = dr.residuals[0];
  for (double r : dr.residuals) dmin = std::min(dmin, r);
  CHECK(dmin > 1e-2);

  Rng rng(83);
  ConventionalTQReport rep = conventional_tq_verify(cfg, rng);
  CHECK(!rep.in_regime);
  CHECK(!rep.note.empty());
}
