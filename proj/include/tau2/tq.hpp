#pragma once
// T-Q machinery: least-squares solution of the inhomogeneous T-Q relation
// for Q(u), Bethe-root extraction, Bethe-equation residuals, and the
// degenerate (vanishing inhomogeneous term) regime.
#include "tau2/spectrum.hpp"
#include <optional>

namespace tau2 {

struct QSolution {
  int index = 0;                   // eigenvalue index
  int m_prime = 0;                 // (p-1)N + 2p
  std::vector<cplx> qcoeffs;       // ascending in w = cosh(2u+eta); leading 2^{-M'}
  double tq_residual = 0.0;        // max relative T-Q residual at 50 fresh points
  std::vector<cplx> roots;         // Bethe roots lambda_j
  std::vector<int> branch_flags;   // bit1: w near +-1, bit2: near-coincident
  double max_bae_residual = 0.0;
  bool ok = false;
  std::string note;
};

// Solves for Q given the eigenvalue curve sr.curves[index]; corrupt_c
// multiplies the constant c (negative control). Throws nothing; failures set
// ok = false and name the eigenvalue index in note.
QSolution solve_q(const ScalarContext& sc, const SpectrumResult& sr, int index,
                  Rng& rng, double corrupt_c = 1.0);

// roots of Q from its w-polynomial coefficients; flags record branch choices
std::vector<cplx> extract_roots(const std::vector<cplx>& qcoeffs, cplx eta,
                                std::vector<int>* flags = nullptr);

cplx q_eval(const std::vector<cplx>& qcoeffs, cplx u, cplx eta);

// max guarded residual of the Bethe equations for the given roots
double bae_residual(const ScalarContext& sc, const QSolution& qs);

struct DegenerateReport {
  std::vector<double> residuals;  // N+3: defining bracket, then F-coefficients
  std::vector<int> feasible_M;    // M in [0, 3p) with the asymptotic match
  bool in_regime = false;
};
DegenerateReport degenerate_constraints(const ModelConfig& cfg, double tol = 1e-6);

// Best-effort Levenberg-Marquardt search (square system in Re/Im of
// alpha_-, beta_-, theta_-, g_1^+) for a configuration on the degenerate
// surface. nullopt when no start converges.
std::optional<ModelConfig> degenerate_search(std::uint64_t seed, int p, int N,
                                             int max_starts = 6);

struct ConventionalTQReport {
  bool in_regime = false;   // false => "not in degenerate regime", no verdict
  int M = 0;
  double max_tq_residual = 0.0;
  double max_bae_residual = 0.0;
  bool pass = false;
  std::string note;
};
// Verifies the two-term T-Q relation on a degenerate-surface config; on a
// generic config reports in_regime = false (explicitly not a failure).
ConventionalTQReport conventional_tq_verify(const ModelConfig& cfg, Rng& rng);

}  // namespace tau2
