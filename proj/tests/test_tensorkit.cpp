#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tau2/tensorkit.hpp"

using namespace tau2;

TEST_CASE("kron and embed agree on simple factors") {
  Mat A(2, 2), B(3, 3);
  A << 1, cplx(0, 2), -1, 0.5;
  B.setZero();
  B(0, 1) = 1;
  B(1, 2) = cplx(2, -1);
  B(2, 0) = 3;

  CHECK(rel_diff(embed(A, {0}, {2, 3}), kron_mat(A, Mat::Identity(3, 3))) < 1e-15);
  CHECK(rel_diff(embed(B, {1}, {2, 3}), kron_mat(Mat::Identity(2, 2), B)) < 1e-15);
  CHECK(rel_diff(embed(kron_mat(A, B), {0, 1}, {2, 3}), kron_mat(A, B)) < 1e-15);

  // acting on non-adjacent slots factorizes into commuting single-slot embeds
  Mat lhs = embed(kron_mat(A, A), {0, 2}, {2, 2, 2});
  Mat rhs = embed(A, {0}, {2, 2, 2}) * embed(A, {2}, {2, 2, 2});
  CHECK(rel_diff(lhs, rhs) < 1e-15);

  // slot order matters: {1,0} applies the first factor to the second slot
  Mat swapped = embed(kron_mat(A, B), {1, 0}, {3, 2});
  CHECK(rel_diff(swapped, kron_mat(B, A)) < 1e-15);
}

TEST_CASE("trace over the leading factor") {
  Mat K(2, 2), M(3, 3);
  K << cplx(1, 1), 2, 3, cplx(0, -4);
  M.setRandom();
  CHECK(rel_diff(trace_first(kron_mat(K, M), 2, 3), K.trace() * M) < 1e-14);
}

TEST_CASE("laurent_fit recovers known coefficients") {
  auto f = [](cplx u) {
    return 2.0 * std::exp(-2.0 * u) + cplx(0.5, 1.0) * std::exp(2.0 * u) + 3.0;
  };
  Rng rng(5);
  std::vector<cplx> us, fs;
  for (int i = 0; i < 6; ++i) {
    us.push_back(rng.box(0.8, 1.4));
    fs.push_back(f(us.back()));
  }
  LaurentFit lf = laurent_fit(us, fs, 2, -2, 2);
  REQUIRE(lf.curve.n_coeffs() == 3);
  CHECK(std::abs(lf.curve.coeffs[0] - 2.0) < 1e-12);
  CHECK(std::abs(lf.curve.coeffs[1] - 3.0) < 1e-12);
  CHECK(std::abs(lf.curve.coeffs[2] - cplx(0.5, 1.0)) < 1e-12);
  CHECK(lf.heldout_residual < 1e-12);
  CHECK(std::abs(lf.curve.eval(cplx(0.3, -0.2)) - f(cplx(0.3, -0.2))) < 1e-12);

  std::vector<cplx> short_us(us.begin(), us.begin() + 3);
  std::vector<cplx> short_fs(fs.begin(), fs.begin() + 3);
  CHECK_THROWS_AS(laurent_fit(short_us, short_fs, 2, -2, 2), std::invalid_argument);
}

TEST_CASE("poly_roots on a factored cubic") {
  // (x - 1)(x - 2i)(x + 3) = x^3 + (2 - 2i) x^2 - (3 + 4i) x + 6i
  std::vector<cplx> coeffs{cplx(0, 6), cplx(-3, -4), cplx(2, -2), 1.0};
  auto roots = poly_roots(coeffs);
  REQUIRE(roots.size() == 3);
  for (cplx target : {cplx(1, 0), cplx(0, 2), cplx(-3, 0)}) {
    double best = 1e18;
    for (cplx r : roots) best = std::min(best, std::abs(r - target));
    CHECK(best < 1e-12);
  }
  CHECK_THROWS_AS(poly_roots({cplx(1, 0)}), std::invalid_argument);
}

TEST_CASE("eig reproduces a known spectrum") {
  Mat D = Mat::Zero(3, 3);
  D(0, 0) = cplx(1, 2);
  D(1, 1) = -0.5;
  D(2, 2) = cplx(0, -3);
  Mat V(3, 3);
  V << 1, 1, 0, 0, 1, 1, 1, 0, 1;
  Mat A = V * D * V.inverse();
  EigResult er = eig(A);
  CHECK(!er.ill_conditioned);
  for (int i = 0; i < 3; ++i) {
    double best = 1e18;
    for (int j = 0; j < 3; ++j) best = std::min(best, std::abs(er.values(j) - D(i, i)));
    CHECK(best < 1e-12);
  }
  CHECK(rel_diff(A * er.vectors, er.vectors * er.values.asDiagonal().toDenseMatrix()) <
        1e-12);
}

TEST_CASE("rng streams are deterministic and bounded") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng c(7);
  for (int i = 0; i < 100; ++i) {
    double x = c.uniform(-1.0, 2.0);
    CHECK(x >= -1.0);
    CHECK(x < 2.0);
    cplx z = c.box(0.5, 1.5);
    CHECK(std::abs(z.real()) <= 0.5);
    CHECK(std::abs(z.imag()) <= 1.5);
    cplx w = c.unit_modulus(0.5, 2.0);
    CHECK(std::abs(w) >= 0.5);
    CHECK(std::abs(w) < 2.0);
  }
}

TEST_CASE("fnv1a matches the reference value") {
  CHECK(fnv1a("abc") == 0xe71fa2190541574bULL);
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> out(257, 0);
  parallel_for(257, [&](int i) { out[i] = i * i; });
  for (int i = 0; i < 257; ++i) CHECK(out[i] == i * i);
}
