#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tau2/spectrum.hpp"

using namespace tau2;

TEST_CASE("eigenvalue curves follow the transfer spectrum") {
  ModelConfig cfg = gen_config(71, 3, 1);
  Rng rng(71);
  SpectrumResult sr = eigencurves(cfg, rng);
  REQUIRE(static_cast<int>(sr.curves.size()) == cfg.qdim());
  for (const auto& ec : sr.curves) {
    CHECK(ec.fit_residual < 1e-9);
    CHECK(static_cast<int>(ec.curve.coeffs.size()) == 2 * cfg.N + 5);
  }

  cplx u(0.19, -0.27);
  Mat t = transfer(cfg, u);
  cplx tr = 0.0, det = 1.0;
  double leak = 0.0;
  CVec lam = transported_eigenvalues(sr, cfg, u, &leak);
  CHECK(leak < 1e-10);
  for (int i = 0; i < lam.size(); ++i) {
    tr += lam(i);
    det *= lam(i);
  }
  CHECK(rel_diff(tr, t.trace()) < 1e-10);
  CHECK(rel_diff(det, t.determinant()) < 1e-9);

  // fitted curves evaluate to the same spectrum away from the samples
  cplx sum_fit = 0.0;
  for (const auto& ec : sr.curves) sum_fit += ec.curve.eval(u);
  CHECK(rel_diff(sum_fit, t.trace()) < 1e-9);
}

TEST_CASE("transport diagonalizes the whole commuting family") {
  ModelConfig cfg = gen_config(73, 3, 2);
  Rng rng(73);
  SpectrumResult sr = eigencurves(cfg, rng);
  double leak = 0.0;
  transported_eigenvalues(sr, cfg, cplx(-0.22, 0.37), &leak);
  CHECK(leak < 1e-9);
  fused_eigenvalues(sr, 2, cfg, cplx(0.12, 0.41), &leak);
  CHECK(leak < 1e-8);
}

TEST_CASE("tridiagonal determinant representation of fused eigenvalues") {
  ModelConfig cfg = gen_config(79, 3, 1);
  Rng rng(79);
  SpectrumResult sr = eigencurves(cfg, rng);
  Rng prng(11);
  int tested = 0;
  for (int i = 0; i < 12 && tested < 3; ++i) {
    cplx u = sample_u(prng);
    if (pole_proximity(u, cfg) < 5e-2) continue;
    ++tested;
    CHECK(det_rep_residual(sr, 2, cfg, u) < 1e-8);
    CHECK(det_rep_residual(sr, 3, cfg, u) < 1e-8);
  }
  CHECK(tested == 3);
}
