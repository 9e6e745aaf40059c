#include "tau2/transfer.hpp"

namespace tau2 {

Mat embed_site(const Mat& op, int n, int p, int N) {
  Mat out = Mat::Identity(1, 1);
  for (int k = 1; k <= N; ++k)
    out = kron_mat(out, k == n ? op : Mat::Identity(p, p));
  return out;
}

namespace {
Mat assemble_aux_blocks(const Mat& A, const Mat& B, const Mat& C, const Mat& D,
                        int n, int p, int N) {
  const int Q = static_cast<int>(std::pow(p, N) + 0.5);
  Mat out(2 * Q, 2 * Q);
  out.block(0, 0, Q, Q) = embed_site(A, n, p, N);
  out.block(0, Q, Q, Q) = embed_site(B, n, p, N);
  out.block(Q, 0, Q, Q) = embed_site(C, n, p, N);
  out.block(Q, Q, Q, Q) = embed_site(D, n, p, N);
  return out;
}
}  // namespace

Mat l_op(const SiteParams& s, int n, cplx u, const ModelConfig& cfg) {
  const int p = cfg.p;
  Mat X = weyl_x(p), Z = weyl_z(p), Xi = weyl_x_inv(p), Zi = weyl_z_inv(p);
  Mat A = std::exp(u) * s.dp * X + std::exp(-u) * s.dm * Xi;
  Mat B = (s.gp * Xi + s.gm * X) * Z;
  Mat C = (s.hp * Xi + s.hm * X) * Zi;
  Mat D = std::exp(u) * s.fp * Xi + std::exp(-u) * s.fm * X;
  return assemble_aux_blocks(A, B, C, D, n, p, cfg.N);
}

Mat lhat_op(const SiteParams& s, int n, cplx u, const ModelConfig& cfg) {
  const int p = cfg.p;
  const cplx eta = cfg.eta();
  Mat X = weyl_x(p), Z = weyl_z(p), Xi = weyl_x_inv(p), Zi = weyl_z_inv(p);
  Mat A = std::exp(-u - eta) * s.fp * Xi + std::exp(u + eta) * s.fm * X;
  Mat B = -(s.gp * Xi + s.gm * X) * Z;
  Mat C = -(s.hp * Xi + s.hm * X) * Zi;
  Mat D = std::exp(-u - eta) * s.dp * X + std::exp(u + eta) * s.dm * Xi;
  return assemble_aux_blocks(A, B, C, D, n, p, cfg.N);
}

cplx detq_l(const SiteParams& s, cplx u, cplx eta) {
  return std::exp(2.0 * u - eta) * s.dp * s.fp + std::exp(-2.0 * u + eta) * s.dm * s.fm -
         std::exp(eta) * s.gp * s.hm - std::exp(-eta) * s.gm * s.hp;
}

cplx detq_lhat(const SiteParams& s, cplx u, cplx eta) { return detq_l(s, -u, eta); }

Mat monodromy(const ModelConfig& cfg, cplx u) {
  const int Q = cfg.qdim();
  Mat out = Mat::Identity(2 * Q, 2 * Q);
  for (int n = cfg.N; n >= 1; --n) out = out * l_op(cfg.sites[n - 1], n, u, cfg);
  return out;
}

Mat monodromy_hat(const ModelConfig& cfg, cplx u) {
  const int Q = cfg.qdim();
  Mat out = Mat::Identity(2 * Q, 2 * Q);
  for (int n = 1; n <= cfg.N; ++n) out = out * lhat_op(cfg.sites[n - 1], n, u, cfg);
  return out;
}

Mat monodromy_entry(const ModelConfig& cfg, cplx u, int a, int b, bool hat) {
  const int Q = cfg.qdim();
  Mat T = hat ? monodromy_hat(cfg, u) : monodromy(cfg, u);
  return T.block(a * Q, b * Q, Q, Q);
}

Mat transfer(const ModelConfig& cfg, cplx u) {
  const int Q = cfg.qdim();
  Mat KP = kron_mat(k_plus(u, cfg.boundary, cfg.eta()), Mat::Identity(Q, Q));
  Mat KM = kron_mat(k_minus(u, cfg.boundary), Mat::Identity(Q, Q));
  Mat M = KP * monodromy(cfg, u) * KM * monodromy_hat(cfg, u);
  return trace_first(M, 2, Q);
}

cplx detq_t(const ModelConfig& cfg, cplx u) {
  cplx out = 1.0;
  for (const auto& s : cfg.sites) out *= detq_l(s, u, cfg.eta());
  return out;
}

cplx detq_t_hat(const ModelConfig& cfg, cplx u) {
  cplx out = 1.0;
  for (const auto& s : cfg.sites) out *= detq_lhat(s, u, cfg.eta());
  return out;
}

Mat detq_t_trace(const ModelConfig& cfg, cplx u, bool hat) {
  const int Q = cfg.qdim();
  const cplx eta = cfg.eta();
  std::vector<int> dims{2, 2, Q};
  Mat T1 = hat ? monodromy_hat(cfg, u - eta) : monodromy(cfg, u - eta);
  Mat T2 = hat ? monodromy_hat(cfg, u) : monodromy(cfg, u);
  Mat M = embed(proj_asym2(), {0, 1}, dims) * embed(T1, {0, 2}, dims) *
          embed(T2, {1, 2}, dims);
  return trace_first(M, 4, Q);
}

Mat avg_l(const SiteParams& s, cplx u, int p, bool hat) {
  const double dp = p;
  Mat out(2, 2);
  auto pw = [&](cplx z) { return std::pow(z, p); };
  if (!hat) {
    out(0, 0) = std::exp(dp * u) * pw(s.dp) + std::exp(-dp * u) * pw(s.dm);
    out(0, 1) = pw(s.gp) + pw(s.gm);
    out(1, 0) = pw(s.hp) + pw(s.hm);
    out(1, 1) = std::exp(dp * u) * pw(s.fp) + std::exp(-dp * u) * pw(s.fm);
  } else {
    out(0, 0) = std::exp(dp * u) * pw(s.fm) + std::exp(-dp * u) * pw(s.fp);
    out(0, 1) = -pw(s.gp) - pw(s.gm);
    out(1, 0) = -pw(s.hp) - pw(s.hm);
    out(1, 1) = std::exp(dp * u) * pw(s.dm) + std::exp(-dp * u) * pw(s.dp);
  }
  return out;
}

Mat avg_monodromy(const ModelConfig& cfg, cplx u, bool hat) {
  Mat out = Mat::Identity(2, 2);
  if (!hat) {
    for (int n = cfg.N; n >= 1; --n) out = out * avg_l(cfg.sites[n - 1], u, cfg.p, false);
  } else {
    for (int n = 1; n <= cfg.N; ++n) out = out * avg_l(cfg.sites[n - 1], u, cfg.p, true);
  }
  return out;
}

OperatorMatrix fused_t(int twoj, const ModelConfig& cfg, cplx u, bool hat) {
  const int Q = cfg.qdim();
  std::vector<int> dims(twoj, 2);
  dims.push_back(Q);
  Mat P = embed(proj_sym(twoj), [&] {
    std::vector<int> slots(twoj);
    for (int i = 0; i < twoj; ++i) slots[i] = i;
    return slots;
  }(), dims);
  Mat out = P;
  for (int k = 1; k <= twoj; ++k) {
    cplx arg = u + (static_cast<double>(k) - twoj / 2.0 - 0.5) * cfg.eta();
    Mat T = hat ? monodromy_hat(cfg, arg) : monodromy(cfg, arg);
    out = out * embed(T, {k - 1, twoj}, dims);
  }
  return {out * P, dims};
}

Mat fused_transfer(int twoj, const ModelConfig& cfg, cplx u) {
  const int Q = cfg.qdim();
  if (twoj == 0) return Mat::Identity(Q, Q);
  std::vector<int> dims(twoj, 2);
  dims.push_back(Q);
  std::vector<int> aux_slots(twoj);
  for (int i = 0; i < twoj; ++i) aux_slots[i] = i;
  Mat KP = embed(fused_k_plus(twoj, u, cfg.boundary, cfg.eta()).mat, aux_slots, dims);
  Mat KM = embed(fused_k_minus(twoj, u, cfg.boundary, cfg.eta()).mat, aux_slots, dims);
  Mat M = KP * fused_t(twoj, cfg, u, false).mat * KM * fused_t(twoj, cfg, u, true).mat;
  return trace_first(M, 1 << twoj, Q);
}

}  // namespace tau2
