#pragma once
// Six-vertex R-matrix, non-diagonal reflection K-matrices, symmetric
// projectors and the fused K-matrices on spin-j auxiliary spaces.
#include "tau2/weyl.hpp"

namespace tau2 {

Mat pauli_x();
Mat pauli_y();
Mat pauli_z();

Mat r_matrix(cplx u, cplx eta);  // 4x4
Mat perm2();                     // permutation on C2 x C2
Mat proj_asym2();                // (1 - P)/2
Mat proj_sym(int m);             // symmetrizer on (C2)^m, rank m+1

Mat k_minus(cplx u, const BoundaryParams& b);
Mat k_plus(cplx u, const BoundaryParams& b, cplx eta);

cplx detq_k_minus(cplx u, const BoundaryParams& b, cplx eta);
cplx detq_k_plus(cplx u, const BoundaryParams& b, cplx eta);
// projected-trace forms of the same quantities (cross-checks)
cplx detq_k_minus_trace(cplx u, const BoundaryParams& b, cplx eta);
cplx detq_k_plus_trace(cplx u, const BoundaryParams& b, cplx eta);

// normalization scalar f^{(j)}(u), twoj = 2j
cplx fusion_norm(int twoj, cplx u, cplx eta);
// block scalar mu^{(p/2)}(u) = prod_{l=1}^{p-1} prod_{k=1}^{l} sinh(2u+(l+k-p+1) eta)
cplx mu_scale(int p, cplx u, cplx eta);

// ordered projected products on (C2)^{2j}; space_tag = {2,...,2}
OperatorMatrix fused_k_minus(int twoj, cplx u, const BoundaryParams& b, cplx eta);
OperatorMatrix fused_k_plus(int twoj, cplx u, const BoundaryParams& b, cplx eta);

// closed-form 2x2 extremal-block entries of the spin-3/2 fused K (p = 3 only);
// the fused product equals mu_scale * these entries on the extremal block
Mat fused_k_entries_minus(cplx u, const BoundaryParams& b);
Mat fused_k_entries_plus(cplx u, const BoundaryParams& b);

// mixed spin-1 x spin-1/2 R-matrix on (C2)^3:
// P+_{12} R_{13}(x - eta/2) R_{23}(x + eta/2) P+_{12}
Mat r_mixed(cplx x, cplx eta);

// orthonormal symmetric basis of (C2)^3 ordered by total spin-z:
// |uuu>, sym|uud>/sqrt3, sym|udd>/sqrt3, |ddd>; returned as 8x4 isometry
Mat sym_basis3();

}  // namespace tau2
