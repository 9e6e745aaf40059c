#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tau2/rk.hpp"

using namespace tau2;

namespace {
const cplx eta(0.0, 2.0 * M_PI / 3);

BoundaryParams sample_boundary() {
  BoundaryParams b;
  b.am = cplx(0.31, -0.42);
  b.bm = cplx(-0.18, 0.77);
  b.tm = cplx(0.52, 0.13);
  b.ap = cplx(-0.61, 0.29);
  b.bp = cplx(0.44, -0.35);
  b.tp = cplx(-0.27, 0.58);
  return b;
}
}  // namespace

TEST_CASE("R matrix degenerates to the permutation at u = 0") {
  CHECK(rel_diff(r_matrix(0.0, eta), sh(eta) * perm2()) < 1e-15);
  // unitarity-type product: R(u) R21(-u) = -sh(u+eta) sh(u-eta) id
  cplx u(0.37, -0.21);
  Mat R = r_matrix(u, eta);
  Mat Rb = perm2() * r_matrix(-u, eta) * perm2();
  CHECK(rel_diff(R * Rb, -sh(u + eta) * sh(u - eta) * Mat::Identity(4, 4)) < 1e-14);
}

TEST_CASE("K- special values") {
  BoundaryParams b = sample_boundary();
  Mat K0 = k_minus(0.0, b);
  CHECK(rel_diff(K0, 2.0 * sh(b.am) * ch(b.bm) * Mat::Identity(2, 2)) < 1e-14);
  Mat Kh = k_minus(cplx(0.0, M_PI / 2), b);
  CHECK(rel_diff(Kh, 2.0 * cplx(0, 1) * ch(b.am) * sh(b.bm) * pauli_z()) < 1e-14);
}

TEST_CASE("K+ is the reflected reparametrized K-") {
  BoundaryParams b = sample_boundary();
  BoundaryParams dual{};
  dual.am = -b.ap;
  dual.bm = -b.bp;
  dual.tm = b.tp;
  cplx u(0.23, 0.41);
  CHECK(rel_diff(k_plus(u, b, eta), k_minus(-u - eta, dual)) < 1e-15);
}

TEST_CASE("boundary quantum determinants: closed form vs projected trace") {
  BoundaryParams b = sample_boundary();
  Rng rng(17);
  for (int i = 0; i < 8; ++i) {
    cplx u = sample_u(rng);
    CHECK(rel_diff(detq_k_minus_trace(u, b, eta), detq_k_minus(u, b, eta)) < 1e-12);
    CHECK(rel_diff(detq_k_plus_trace(u, b, eta), detq_k_plus(u, b, eta)) < 1e-12);
  }
  // frozen closed forms at one point
  cplx u(0.29, -0.37);
  cplx dm = -4.0 * sh(2.0 * u - 2.0 * eta) * sh(u + b.am) * sh(u - b.am) *
            ch(u + b.bm) * ch(u - b.bm);
  cplx dp = 4.0 * sh(2.0 * u + 2.0 * eta) * sh(u + b.ap) * sh(u - b.ap) *
            ch(u + b.bp) * ch(u - b.bp);
  CHECK(rel_diff(detq_k_minus(u, b, eta), dm) < 1e-14);
  CHECK(rel_diff(detq_k_plus(u, b, eta), dp) < 1e-14);
}

TEST_CASE("symmetrizers are projectors of the right rank") {
  for (int m : {2, 3}) {
    Mat P = proj_sym(m);
    CHECK(rel_diff(P * P, P) < 1e-14);
    CHECK(std::abs(P.trace() - cplx(m + 1, 0)) < 1e-12);
  }
  Mat Pa = proj_asym2();
  CHECK(rel_diff(Pa * Pa, Pa) < 1e-14);
  CHECK(std::abs(Pa.trace() - cplx(1, 0)) < 1e-13);
  CHECK(rel_diff(proj_sym(2) + Pa, Mat::Identity(4, 4)) < 1e-14);
}

TEST_CASE("fusion normalization scalars") {
  cplx u(0.41, 0.18);
  CHECK(rel_diff(mu_scale(3, u, eta),
                 sh(2.0 * u) * sh(2.0 * u + eta) * sh(2.0 * u + 2.0 * eta)) < 1e-14);
  auto rho = [&](cplx v) { return sh(v - eta) * sh(v + eta); };
  CHECK(rel_diff(fusion_norm(2, u, eta), -rho(2.0 * u + eta)) < 1e-14);
  CHECK(rel_diff(fusion_norm(3, u, eta),
                 -rho(2.0 * u) * rho(2.0 * u + eta) * rho(2.0 * u + 2.0 * eta)) < 1e-14);
}

TEST_CASE("mixed R commutes with the pair symmetrizer") {
  cplx x(0.33, -0.27);
  Mat Rm = r_mixed(x, eta);
  Mat P = embed(proj_sym(2), {0, 1}, {2, 2, 2});
  CHECK(rel_diff(P * Rm * P, Rm) < 1e-13);
}

TEST_CASE("symmetric spin-z basis of three qubits") {
  Mat B = sym_basis3();
  REQUIRE(B.rows() == 8);
  REQUIRE(B.cols() == 4);
  CHECK(rel_diff(B.transpose() * B, Mat::Identity(4, 4)) < 1e-14);
  CHECK(std::abs(B(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(B(7, 3) - 1.0) < 1e-15);
  const double r3 = 1.0 / std::sqrt(3.0);
  for (int idx : {1, 2, 4}) CHECK(std::abs(B(idx, 1) - r3) < 1e-15);
  for (int idx : {3, 5, 6}) CHECK(std::abs(B(idx, 2) - r3) < 1e-15);
  // projector onto the symmetric subspace
  CHECK(rel_diff(B * B.transpose(), proj_sym(3)) < 1e-13);
}

TEST_CASE("fused K extremal entries, frozen closed forms") {
  BoundaryParams b = sample_boundary();
  cplx u(0.19, 0.23);
  Mat Em = fused_k_entries_minus(u, b);
  CHECK(rel_diff(Em(0, 0), 0.5 * (sh(3.0 * b.am) * ch(3.0 * b.bm) * ch(3.0 * u) +
                                  ch(3.0 * b.am) * sh(3.0 * b.bm) * sh(3.0 * u))) < 1e-14);
  CHECK(rel_diff(Em(1, 1), 0.5 * (sh(3.0 * b.am) * ch(3.0 * b.bm) * ch(3.0 * u) -
                                  ch(3.0 * b.am) * sh(3.0 * b.bm) * sh(3.0 * u))) < 1e-14);
  CHECK(rel_diff(Em(0, 1), 0.25 * std::exp(3.0 * b.tm) * sh(6.0 * u)) < 1e-14);
  CHECK(rel_diff(Em(1, 0), 0.25 * std::exp(-3.0 * b.tm) * sh(6.0 * u)) < 1e-14);

  Mat Ep = fused_k_entries_plus(u, b);
  CHECK(rel_diff(Ep(0, 0), 0.5 * (-sh(3.0 * b.ap) * ch(3.0 * b.bp) * ch(3.0 * u) +
                                  ch(3.0 * b.ap) * sh(3.0 * b.bp) * sh(3.0 * u))) < 1e-14);
  CHECK(rel_diff(Ep(1, 1), 0.5 * (-sh(3.0 * b.ap) * ch(3.0 * b.bp) * ch(3.0 * u) -
                                  ch(3.0 * b.ap) * sh(3.0 * b.bp) * sh(3.0 * u))) < 1e-14);
  CHECK(rel_diff(Ep(0, 1), -0.25 * std::exp(3.0 * b.tp) * sh(6.0 * u)) < 1e-14);
  CHECK(rel_diff(Ep(1, 0), -0.25 * std::exp(-3.0 * b.tp) * sh(6.0 * u)) < 1e-14);
}
