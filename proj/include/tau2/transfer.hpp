#pragma once
// L-operators, monodromy matrices, the open-chain transfer matrix, quantum
// determinants, p-fold average values and the fused transfer hierarchy.
#include "tau2/rk.hpp"

namespace tau2 {

// p x p site operator embedded at site n (1-based) of the length-N chain
Mat embed_site(const Mat& op, int n, int p, int N);

// (2 p^N) x (2 p^N): auxiliary C2 tensor quantum space
Mat l_op(const SiteParams& s, int n, cplx u, const ModelConfig& cfg);
Mat lhat_op(const SiteParams& s, int n, cplx u, const ModelConfig& cfg);

cplx detq_l(const SiteParams& s, cplx u, cplx eta);
cplx detq_lhat(const SiteParams& s, cplx u, cplx eta);

Mat monodromy(const ModelConfig& cfg, cplx u);       // L_N ... L_1
Mat monodromy_hat(const ModelConfig& cfg, cplx u);   // Lhat_1 ... Lhat_N
// quantum-space block (a,b) of the monodromy, a,b in {0,1}
Mat monodromy_entry(const ModelConfig& cfg, cplx u, int a, int b, bool hat);

Mat transfer(const ModelConfig& cfg, cplx u);  // tr_aux{K+ T K- That}

cplx detq_t(const ModelConfig& cfg, cplx u);
cplx detq_t_hat(const ModelConfig& cfg, cplx u);
// projected two-row trace form; equals detq * id on the quantum space
Mat detq_t_trace(const ModelConfig& cfg, cplx u, bool hat);

// p-fold averages: 2x2 scalar-valued L and monodromy
Mat avg_l(const SiteParams& s, cplx u, int p, bool hat);
Mat avg_monodromy(const ModelConfig& cfg, cplx u, bool hat);

// projected ordered products of shifted monodromies on (C2)^{2j} x quantum;
// space_tag = {2,..,2, p^N}
OperatorMatrix fused_t(int twoj, const ModelConfig& cfg, cplx u, bool hat);

// spin-j transfer matrix on the quantum space; twoj = 0 gives id
Mat fused_transfer(int twoj, const ModelConfig& cfg, cplx u);

}  // namespace tau2
