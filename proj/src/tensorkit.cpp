#include "tau2/tensorkit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace tau2 {

std::uint64_t Rng::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  double x = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * x;
}

cplx Rng::unit_modulus(double lo, double hi) {
  double r = uniform(lo, hi);
  double th = uniform(0.0, 2.0 * M_PI);
  return std::polar(r, th);
}

cplx Rng::box(double xmax, double ymax) {
  return {uniform(-xmax, xmax), uniform(-ymax, ymax)};
}

cplx sample_u(Rng& rng) {
  return {rng.uniform(-1.0, 1.0), rng.uniform(-1.5, 1.5)};
}

Mat kron_mat(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out;
  out.mat = kron_mat(a.mat, b.mat);
  out.space_tag = a.space_tag;
  out.space_tag.insert(out.space_tag.end(), b.space_tag.begin(), b.space_tag.end());
  return out;
}

Mat embed(const Mat& op, const std::vector<int>& slots, const std::vector<int>& dims) {
  const int K = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) total *= d;
  std::vector<long> stride(K);
  stride[K - 1] = 1;
  for (int k = K - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  long ds = 1;
  for (int s : slots) ds *= dims[s];
  if (op.rows() != ds || op.cols() != ds)
    throw std::invalid_argument("embed: operator dimension does not match slots");

  std::vector<int> rest;
  for (int k = 0; k < K; ++k)
    if (std::find(slots.begin(), slots.end(), k) == slots.end()) rest.push_back(k);
  long dr = total / ds;

  // global index offsets for each slot-configuration / rest-configuration
  std::vector<long> slot_off(ds), rest_off(dr);
  for (long a = 0; a < ds; ++a) {
    long rem = a, off = 0;
    for (int si = static_cast<int>(slots.size()) - 1; si >= 0; --si) {
      int leg = slots[si];
      off += (rem % dims[leg]) * stride[leg];
      rem /= dims[leg];
    }
    slot_off[a] = off;
  }
  for (long r = 0; r < dr; ++r) {
    long rem = r, off = 0;
    for (int ri = static_cast<int>(rest.size()) - 1; ri >= 0; --ri) {
      int leg = rest[ri];
      off += (rem % dims[leg]) * stride[leg];
      rem /= dims[leg];
    }
    rest_off[r] = off;
  }

  Mat out = Mat::Zero(total, total);
  for (long a = 0; a < ds; ++a)
    for (long b = 0; b < ds; ++b) {
      const cplx v = op(a, b);
      if (v == cplx(0.0, 0.0)) continue;
      for (long r = 0; r < dr; ++r) out(slot_off[a] + rest_off[r], slot_off[b] + rest_off[r]) += v;
    }
  return out;
}

Mat trace_first(const Mat& M, int adim, int qdim) {
  Mat out = Mat::Zero(qdim, qdim);
  for (int a = 0; a < adim; ++a) out += M.block(a * qdim, a * qdim, qdim, qdim);
  return out;
}

cplx LaurentCurve::eval(cplx u) const {
  cplx out = 0.0;
  int deg = min_deg;
  for (const cplx& c : coeffs) {
    out += c * std::exp(static_cast<double>(deg) * u);
    deg += step;
  }
  return out;
}

LaurentFit laurent_fit(const std::vector<cplx>& us, const std::vector<cplx>& fs,
                       int step, int min_deg, int max_deg) {
  if (us.size() != fs.size())
    throw std::invalid_argument("laurent_fit: sample size mismatch");
  if (step <= 0 || (max_deg - min_deg) % step != 0 || max_deg < min_deg)
    throw std::invalid_argument("laurent_fit: bad degree shape");
  const int nc = (max_deg - min_deg) / step + 1;
  const int m = static_cast<int>(us.size());
  if (m < nc + 1)
    throw std::invalid_argument("laurent_fit: need at least n_coeffs+1 samples");

  const int mf = m - 1;  // last sample withheld
  Mat A(mf, nc);
  CVec b(mf);
  for (int i = 0; i < mf; ++i) {
    for (int k = 0; k < nc; ++k)
      A(i, k) = std::exp(static_cast<double>(min_deg + k * step) * us[i]);
    b(i) = fs[i];
  }
  CVec x = A.colPivHouseholderQr().solve(b);

  LaurentFit out;
  out.curve.step = step;
  out.curve.min_deg = min_deg;
  out.curve.max_deg = max_deg;
  out.curve.coeffs.assign(x.data(), x.data() + nc);

  double fscale = 0.0;
  for (const cplx& f : fs) fscale = std::max(fscale, std::abs(f));
  double lsq = 0.0;
  for (int i = 0; i < mf; ++i) {
    double r = std::abs(out.curve.eval(us[i]) - fs[i]) /
               std::max(std::abs(fs[i]), 1e-12 * fscale);
    lsq = std::max(lsq, r);
  }
  out.lsq_residual = lsq;
  out.heldout_residual = std::abs(out.curve.eval(us[mf]) - fs[mf]) /
                         std::max(std::abs(fs[mf]), 1e-12 * fscale);
  return out;
}

EigResult eig(const Mat& A) {
  Eigen::ComplexEigenSolver<Mat> es(A);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig: solver failed");
  EigResult out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  Eigen::JacobiSVD<Mat> svd(out.vectors);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  out.cond = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
  out.ill_conditioned = !(out.cond < 1e8);
  return out;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) throw std::invalid_argument("poly_roots: degree must be >= 1");
  const cplx lead = coeffs.back();
  double scale = 0.0;
  for (const cplx& c : coeffs) scale = std::max(scale, std::abs(c));
  if (std::abs(lead) <= 1e-14 * scale)
    throw std::invalid_argument("poly_roots: vanishing leading coefficient");

  Mat C = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -coeffs[i] / lead;
  Eigen::ComplexEigenSolver<Mat> es(C, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int thread_budget() {
  if (const char* env = std::getenv("TAU2_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int nt = std::min(thread_budget(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (int i = cursor.fetch_add(1); i < n; i = cursor.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

double rel_diff(const Mat& a, const Mat& b) {
  double na = a.norm(), nb = b.norm();
  return (a - b).norm() / std::max({na, nb, 1e-300});
}

double rel_diff(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace tau2
