#pragma once
// Dense complex tensor utilities: embeddings, eigen decompositions,
// Laurent-polynomial fitting, companion-matrix root finding.
#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace tau2 {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline cplx sh(cplx z) { return std::sinh(z); }
inline cplx ch(cplx z) { return std::cosh(z); }

// splitmix64: portable deterministic stream, identical across platforms.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  double uniform(double lo, double hi);          // [lo, hi)
  cplx unit_modulus(double lo, double hi);       // modulus in [lo,hi), random phase
  cplx box(double xmax, double ymax);            // Re in [-xmax,xmax), Im likewise
};

// spectral-parameter samples live in |Re u| <= 1, Im u in (-pi/2, pi/2)
cplx sample_u(Rng& rng);

// dense operator tagged with its tensor-factor dimensions
struct OperatorMatrix {
  Mat mat;
  std::vector<int> space_tag;
  int dim() const { return static_cast<int>(mat.rows()); }
};

Mat kron_mat(const Mat& a, const Mat& b);
OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);

// op acts on the listed slots (in order) of a product space with dims[i]
// factors; identity elsewhere.
Mat embed(const Mat& op, const std::vector<int>& slots, const std::vector<int>& dims);

// trace over the leading factor of dimension adim: M is (adim*qdim)^2
Mat trace_first(const Mat& M, int adim, int qdim);

struct LaurentCurve {
  int step = 2;
  int min_deg = 0;
  int max_deg = 0;
  std::vector<cplx> coeffs;  // ascending degree, size (max_deg-min_deg)/step + 1
  int n_coeffs() const { return (max_deg - min_deg) / step + 1; }
  cplx eval(cplx u) const;
};

struct LaurentFit {
  LaurentCurve curve;
  double heldout_residual = 0.0;  // relative error at the withheld sample
  double lsq_residual = 0.0;      // max relative residual over the fit samples
};

// Least-squares fit of f(u) = sum c_k e^{k u}, k = min_deg..max_deg step `step`.
// Requires us.size() == fs.size() and at least n_coeffs+1 samples (last one is
// withheld from the fit); throws std::invalid_argument otherwise.
LaurentFit laurent_fit(const std::vector<cplx>& us, const std::vector<cplx>& fs,
                       int step, int min_deg, int max_deg);

struct EigResult {
  CVec values;
  Mat vectors;
  double cond = 0.0;        // SVD condition number of the eigenvector matrix
  bool ill_conditioned = false;  // cond > 1e8
};
EigResult eig(const Mat& A);

// roots of c0 + c1 x + ... + cn x^n (ascending coeffs) via companion matrix;
// throws std::invalid_argument for degree 0 or vanishing leading coefficient.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs);

std::uint64_t fnv1a(std::string_view s);

// bounded by TAU2_THREADS (default: hardware concurrency); deterministic
// as long as each index writes only its own slot.
int thread_budget();
void parallel_for(int n, const std::function<void(int)>& fn);

double rel_diff(const Mat& a, const Mat& b);
double rel_diff(cplx a, cplx b);

}  // namespace tau2
