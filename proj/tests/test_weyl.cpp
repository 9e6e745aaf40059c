#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tau2/weyl.hpp"

using namespace tau2;

TEST_CASE("weyl pair obeys the exchange relation at p = 3 and 5") {
  for (int p : {3, 5}) {
    cplx q = std::exp(-cplx(0.0, 2.0 * M_PI / p));
    Mat X = weyl_x(p), Z = weyl_z(p);
    CHECK(rel_diff(X * Z, q * Z * X) < 1e-14);
    CHECK(rel_diff(X * weyl_x_inv(p), Mat::Identity(p, p)) < 1e-14);
    CHECK(rel_diff(Z * weyl_z_inv(p), Mat::Identity(p, p)) < 1e-14);
    Mat Xp = X, Zp = Z;
    for (int k = 1; k < p; ++k) {
      Xp = Xp * X;
      Zp = Zp * Z;
    }
    CHECK(rel_diff(Xp, Mat::Identity(p, p)) < 1e-13);
    CHECK(rel_diff(Zp, Mat::Identity(p, p)) < 1e-13);
  }
}

TEST_CASE("derived boundary site parameters") {
  SiteParams s = make_site(1.0, 2.0, 3.0, 4.0, 1.0, 1.0);
  CHECK(std::abs(s.hm - 4.0) < 1e-15);
  CHECK(std::abs(s.hp - 6.0) < 1e-15);
  CHECK(site_constraint_residual(s) < 1e-15);

  Rng rng(99);
  for (int i = 0; i < 20; ++i) {
    SiteParams g = gen_site_params(rng);
    CHECK(site_constraint_residual(g) < 1e-14);
    CHECK(std::abs(g.hp) > 1e-3);
    CHECK(std::abs(g.hm) > 1e-3);
  }
}

TEST_CASE("config generation is deterministic and validates p") {
  ModelConfig a = gen_config(314, 3, 2);
  ModelConfig b = gen_config(314, 3, 2);
  CHECK(a.sites.size() == 2);
  CHECK(a.qdim() == 9);
  for (int n = 0; n < 2; ++n) {
    CHECK(a.sites[n].dp == b.sites[n].dp);
    CHECK(a.sites[n].hm == b.sites[n].hm);
  }
  CHECK(a.boundary.am == b.boundary.am);
  CHECK(a.boundary.tp == b.boundary.tp);

  CHECK_THROWS_WITH_AS(gen_config(1, 4, 1), "p must be odd >= 3", std::invalid_argument);
  CHECK_THROWS_AS(gen_config(1, 2, 1), std::invalid_argument);
}

TEST_CASE("chiral potts constraint detection") {
  ModelConfig generic = gen_config(5, 3, 2);
  CHECK(!chiral_potts_constrained(generic));

  // identical sites trivially share the ratio
  ModelConfig shared = generic;
  shared.sites[1] = shared.sites[0];
  CHECK(chiral_potts_constrained(shared));

  ModelConfig single = gen_config(6, 3, 1);
  CHECK(chiral_potts_constrained(single));
}
