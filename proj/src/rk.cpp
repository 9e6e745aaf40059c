#include "tau2/rk.hpp"

#include <algorithm>
#include <numeric>

namespace tau2 {

Mat pauli_x() {
  Mat s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

Mat pauli_y() {
  Mat s(2, 2);
  s << 0, cplx(0, -1), cplx(0, 1), 0;
  return s;
}

Mat pauli_z() {
  Mat s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

Mat r_matrix(cplx u, cplx eta) {
  Mat R = Mat::Zero(4, 4);
  R(0, 0) = R(3, 3) = sh(u + eta);
  R(1, 1) = R(2, 2) = sh(u);
  R(1, 2) = R(2, 1) = sh(eta);
  return R;
}

Mat perm2() {
  Mat P = Mat::Zero(4, 4);
  P(0, 0) = P(1, 2) = P(2, 1) = P(3, 3) = 1.0;
  return P;
}

Mat proj_asym2() { return (Mat::Identity(4, 4) - perm2()) / 2.0; }

Mat proj_sym(int m) {
  const int dim = 1 << m;
  Mat S = Mat::Zero(dim, dim);
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  long count = 0;
  do {
    for (int i = 0; i < dim; ++i) {
      // factor k of |i> moves to position sigma[k]
      int j = 0;
      for (int k = 0; k < m; ++k) {
        int bit = (i >> (m - 1 - k)) & 1;
        j |= bit << (m - 1 - sigma[k]);
      }
      S(j, i) += 1.0;
    }
    ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return S / static_cast<double>(count);
}

Mat k_minus(cplx u, const BoundaryParams& b) {
  Mat K(2, 2);
  K(0, 0) = 2.0 * (sh(b.am) * ch(b.bm) * ch(u) + ch(b.am) * sh(b.bm) * sh(u));
  K(1, 1) = 2.0 * (sh(b.am) * ch(b.bm) * ch(u) - ch(b.am) * sh(b.bm) * sh(u));
  K(0, 1) = std::exp(b.tm) * sh(2.0 * u);
  K(1, 0) = std::exp(-b.tm) * sh(2.0 * u);
  return K;
}

namespace {
BoundaryParams dual_map(const BoundaryParams& b) {
  BoundaryParams m = b;
  m.am = -b.ap;
  m.bm = -b.bp;
  m.tm = b.tp;
  return m;
}
}  // namespace

Mat k_plus(cplx u, const BoundaryParams& b, cplx eta) {
  return k_minus(-u - eta, dual_map(b));
}

cplx detq_k_minus(cplx u, const BoundaryParams& b, cplx eta) {
  return -4.0 * sh(2.0 * u - 2.0 * eta) * sh(u + b.am) * sh(u - b.am) *
         ch(u + b.bm) * ch(u - b.bm);
}

cplx detq_k_plus(cplx u, const BoundaryParams& b, cplx eta) {
  return 4.0 * sh(2.0 * u + 2.0 * eta) * sh(u + b.ap) * sh(u - b.ap) *
         ch(u + b.bp) * ch(u - b.bp);
}

cplx detq_k_minus_trace(cplx u, const BoundaryParams& b, cplx eta) {
  Mat K1 = kron_mat(k_minus(u, b), Mat::Identity(2, 2));
  Mat K2 = kron_mat(Mat::Identity(2, 2), k_minus(u - eta, b));
  return (proj_asym2() * K1 * r_matrix(2.0 * u - eta, eta) * K2).trace();
}

cplx detq_k_plus_trace(cplx u, const BoundaryParams& b, cplx eta) {
  Mat K1 = kron_mat(k_plus(u, b, eta), Mat::Identity(2, 2));
  Mat K2 = kron_mat(Mat::Identity(2, 2), k_plus(u - eta, b, eta));
  return (proj_asym2() * K1 * r_matrix(-2.0 * u - eta, eta) * K2).trace();
}

cplx fusion_norm(int twoj, cplx u, cplx eta) {
  auto rho = [&](cplx v) { return sh(v - eta) * sh(v + eta); };
  cplx out = 1.0;
  for (int l = 1; l < twoj; ++l)
    for (int k = 1; k <= l; ++k)
      out *= -rho(2.0 * u + static_cast<double>(l + k + 1 - twoj) * eta);
  return out;
}

cplx mu_scale(int p, cplx u, cplx eta) {
  cplx out = 1.0;
  for (int l = 1; l <= p - 1; ++l)
    for (int k = 1; k <= l; ++k)
      out *= sh(2.0 * u + static_cast<double>(l + k - p + 1) * eta);
  return out;
}

OperatorMatrix fused_k_minus(int twoj, cplx u, const BoundaryParams& b, cplx eta) {
  std::vector<int> dims(twoj, 2);
  Mat P = proj_sym(twoj);
  Mat out = P;
  for (int k = 1; k <= twoj; ++k) {
    for (int l = 1; l < k; ++l) {
      cplx arg = 2.0 * u + static_cast<double>(k + l - twoj - 1) * eta;
      out = out * embed(r_matrix(arg, eta), {l - 1, k - 1}, dims);
    }
    cplx uk = u + (static_cast<double>(k) - twoj / 2.0 - 0.5) * eta;
    out = out * embed(k_minus(uk, b), {k - 1}, dims);
  }
  return {out * P, dims};
}

OperatorMatrix fused_k_plus(int twoj, cplx u, const BoundaryParams& b, cplx eta) {
  OperatorMatrix out = fused_k_minus(twoj, -u - eta, dual_map(b), eta);
  out.mat /= fusion_norm(twoj, u, eta);
  return out;
}

Mat fused_k_entries_minus(cplx u, const BoundaryParams& b) {
  Mat K(2, 2);
  K(0, 0) = 0.5 * (sh(3.0 * b.am) * ch(3.0 * b.bm) * ch(3.0 * u) +
                   ch(3.0 * b.am) * sh(3.0 * b.bm) * sh(3.0 * u));
  K(1, 1) = 0.5 * (sh(3.0 * b.am) * ch(3.0 * b.bm) * ch(3.0 * u) -
                   ch(3.0 * b.am) * sh(3.0 * b.bm) * sh(3.0 * u));
  K(0, 1) = 0.25 * std::exp(3.0 * b.tm) * sh(6.0 * u);
  K(1, 0) = 0.25 * std::exp(-3.0 * b.tm) * sh(6.0 * u);
  return K;
}

Mat fused_k_entries_plus(cplx u, const BoundaryParams& b) {
  Mat K(2, 2);
  K(0, 0) = 0.5 * (-sh(3.0 * b.ap) * ch(3.0 * b.bp) * ch(3.0 * u) +
                   ch(3.0 * b.ap) * sh(3.0 * b.bp) * sh(3.0 * u));
  K(1, 1) = 0.5 * (-sh(3.0 * b.ap) * ch(3.0 * b.bp) * ch(3.0 * u) -
                   ch(3.0 * b.ap) * sh(3.0 * b.bp) * sh(3.0 * u));
  K(0, 1) = -0.25 * std::exp(3.0 * b.tp) * sh(6.0 * u);
  K(1, 0) = -0.25 * std::exp(-3.0 * b.tp) * sh(6.0 * u);
  return K;
}

Mat r_mixed(cplx x, cplx eta) {
  std::vector<int> dims{2, 2, 2};
  Mat P = embed(proj_sym(2), {0, 1}, dims);
  Mat Ra = embed(r_matrix(x - eta / 2.0, eta), {0, 2}, dims);
  Mat Rb = embed(r_matrix(x + eta / 2.0, eta), {1, 2}, dims);
  return P * Ra * Rb * P;
}

Mat sym_basis3() {
  Mat B = Mat::Zero(8, 4);
  const double r3 = 1.0 / std::sqrt(3.0);
  B(0, 0) = 1.0;                          // |uuu>
  B(4, 1) = B(2, 1) = B(1, 1) = r3;       // sym |uud>: 100,010,001
  B(3, 2) = B(5, 2) = B(6, 2) = r3;       // sym |udd>: 011,101,110
  B(7, 3) = 1.0;                          // |ddd>
  return B;
}

}  // namespace tau2
