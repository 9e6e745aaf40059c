#pragma once
// Eigenvalue curves of the commuting transfer family: anchor
// diagonalization plus similarity transport, Laurent fits per curve.
#include "tau2/scalars.hpp"

namespace tau2 {

struct EigCurve {
  int index = 0;
  LaurentCurve curve;        // step 2, degrees -(2N+4)..(2N+4) in e^u
  double fit_residual = 0.0; // held-out relative residual
  double eigvec_cond = 0.0;
};

struct SpectrumResult {
  std::vector<EigCurve> curves;
  Mat V, Vinv;               // transport basis from the anchor
  cplx anchor_u0 = 0.0;
  bool used_combination = false;  // anchor was t(u0) + gamma t(u1)
  cplx anchor_u1 = 0.0;
  cplx gamma = 0.0;
  double eigvec_cond = 0.0;
  double max_offdiag_leakage = 0.0;
};

// Diagonalizes an anchor transfer matrix (resampling until the eigenvector
// condition number is < 1e6 and eigenvalue gaps are > 1e-8, then falling back
// to a random commuting combination; throws std::runtime_error after 5
// failures) and fits each transported eigenvalue curve. Adds samples while
// the held-out residual exceeds 1e-9.
SpectrumResult eigencurves(const ModelConfig& cfg, Rng& rng);

// diag(V^{-1} t(u) V); records relative off-diagonal leakage if out != nullptr
CVec transported_eigenvalues(const SpectrumResult& sr, const ModelConfig& cfg,
                             cplx u, double* leakage = nullptr);
// same transport applied to the spin-j transfer matrix
CVec fused_eigenvalues(const SpectrumResult& sr, int twoj, const ModelConfig& cfg,
                       cplx u, double* leakage = nullptr);

// tridiagonal determinant representation of the spin-j eigenvalue curves;
// returns max relative deviation from the transported fused spectrum at u
double det_rep_residual(const SpectrumResult& sr, int twoj,
                        const ModelConfig& cfg, cplx u);

}  // namespace tau2
