#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tau2/scalars.hpp"
#include "tau2/transfer.hpp"

using namespace tau2;

TEST_CASE("L operator blocks in the cyclic basis") {
  ModelConfig cfg = gen_config(1, 3, 1);
  cfg.sites[0] = make_site(1.0, 2.0, 3.0, 4.0, 1.0, 1.0);
  const cplx eta = cfg.eta();
  const cplx q = cfg.q();
  const auto& s = cfg.sites[0];
  cplx u(0.27, -0.19);
  Mat L = l_op(s, 1, u, cfg);
  REQUIRE(L.rows() == 6);

  cplx eu = std::exp(u), em = std::exp(-u);
  CHECK(rel_diff(L(0, 0), eu * s.dp + em * s.dm) < 1e-15);
  CHECK(rel_diff(L(1, 1), eu * s.dp * q + em * s.dm / q) < 1e-15);
  // B = (g+ X^-1 + g- X) Z moves the clock state up by one
  CHECK(rel_diff(L(1, 3), s.gp / q + s.gm * q) < 1e-15);
  CHECK(std::abs(L(0, 3)) < 1e-15);
  // D(0,0) = e^u f+ + e^-u f-
  CHECK(rel_diff(L(3, 3), eu * s.fp + em * s.fm) < 1e-15);

  cplx expected = std::exp(2.0 * u - eta) * 3.0 + std::exp(-2.0 * u + eta) * 8.0 -
                  std::exp(eta) * 4.0 - std::exp(-eta) * 6.0;
  CHECK(rel_diff(detq_l(s, u, eta), expected) < 1e-14);
  CHECK(rel_diff(detq_lhat(s, u, eta), detq_l(s, -u, eta)) < 1e-14);
}

TEST_CASE("monodromy factorizes into embedded site operators") {
  ModelConfig cfg = gen_config(23, 3, 2);
  cplx u(0.11, 0.31);
  Mat manual = l_op(cfg.sites[1], 2, u, cfg) * l_op(cfg.sites[0], 1, u, cfg);
  CHECK(rel_diff(monodromy(cfg, u), manual) < 1e-14);
  Mat manual_hat = lhat_op(cfg.sites[0], 1, u, cfg) * lhat_op(cfg.sites[1], 2, u, cfg);
  CHECK(rel_diff(monodromy_hat(cfg, u), manual_hat) < 1e-14);

  const int Q = cfg.qdim();
  Mat A = monodromy_entry(cfg, u, 0, 0, false);
  CHECK(rel_diff(A, monodromy(cfg, u).block(0, 0, Q, Q)) < 1e-15);
}

TEST_CASE("transfer family commutes and hits its special values") {
  for (int N : {1, 2}) {
    ModelConfig cfg = gen_config(29 + N, 3, N);
    const int Q = cfg.qdim();
    cplx u(0.21, -0.33), v(-0.37, 0.14);
    Mat tu = transfer(cfg, u), tv = transfer(cfg, v);
    CHECK((tu * tv - tv * tu).norm() / (tu.norm() * tv.norm()) < 1e-12);
    CHECK(rel_diff(transfer(cfg, -u - cfg.eta()), tu) < 1e-12);
    CHECK(rel_diff(transfer(cfg, cplx(0, 0)),
                   t_zero_scalar(cfg) * Mat::Identity(Q, Q)) < 1e-12);
    CHECK(rel_diff(transfer(cfg, cplx(0, M_PI / 2)),
                   t_half_pi_scalar(cfg) * Mat::Identity(Q, Q)) < 1e-12);
  }
}

TEST_CASE("quantum determinant of the monodromy") {
  for (int N : {1, 2}) {
    ModelConfig cfg = gen_config(31 + N, 3, N);
    const int Q = cfg.qdim();
    cplx u(0.17, 0.23);
    cplx prod = 1.0;
    for (const auto& s : cfg.sites) prod *= detq_l(s, u, cfg.eta());
    CHECK(rel_diff(detq_t(cfg, u), prod) < 1e-13);
    CHECK(rel_diff(detq_t_trace(cfg, u, false), detq_t(cfg, u) * Mat::Identity(Q, Q)) <
          1e-12);
    CHECK(rel_diff(detq_t_trace(cfg, u, true),
                   detq_t_hat(cfg, u) * Mat::Identity(Q, Q)) < 1e-12);
  }
}

TEST_CASE("averages collapse to scalars, single site closed form") {
  ModelConfig cfg = gen_config(37, 3, 1);
  const auto& s = cfg.sites[0];
  const int p = cfg.p;
  cplx u(0.41, -0.13);
  cplx ep = std::exp(3.0 * u), em = std::exp(-3.0 * u);

  Mat av = avg_monodromy(cfg, u, false);
  CHECK(rel_diff(av(0, 0), ep * std::pow(s.dp, p) + em * std::pow(s.dm, p)) < 1e-12);
  CHECK(rel_diff(av(0, 1), std::pow(s.gp, p) + std::pow(s.gm, p)) < 1e-12);
  CHECK(rel_diff(av(1, 0), std::pow(s.hp, p) + std::pow(s.hm, p)) < 1e-12);
  CHECK(rel_diff(av(1, 1), ep * std::pow(s.fp, p) + em * std::pow(s.fm, p)) < 1e-12);

  Mat avh = avg_monodromy(cfg, u, true);
  CHECK(rel_diff(avh(0, 0), ep * std::pow(s.fm, p) + em * std::pow(s.fp, p)) < 1e-12);
  CHECK(rel_diff(avh(0, 1), -av(0, 1)) < 1e-12);

  // the ordered product of shifted blocks is that scalar times the identity
  Mat P = Mat::Identity(3, 3);
  for (int m = 1; m <= p; ++m)
    P = P * monodromy_entry(cfg, u - static_cast<double>(m) * cfg.eta(), 0, 0, false);
  CHECK(rel_diff(P, av(0, 0) * Mat::Identity(3, 3)) < 1e-10);
}

TEST_CASE("fused transfer: base cases and first hierarchy step") {
  ModelConfig cfg = gen_config(41, 3, 1);
  const int Q = cfg.qdim();
  CHECK(rel_diff(fused_transfer(0, cfg, cplx(0.3, 0.1)), Mat::Identity(Q, Q)) == 0.0);

  cplx u(0.26, 0.31);
  Mat lhs = transfer(cfg, u) * transfer(cfg, u - cfg.eta());
  Mat rhs = fused_transfer(2, cfg, u - 0.5 * cfg.eta()) +
            delta_fn(u, cfg) * Mat::Identity(Q, Q);
  CHECK(rel_diff(lhs, rhs) < 1e-10);
}
