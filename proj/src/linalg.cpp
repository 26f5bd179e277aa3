#include "qcqp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcqp {

namespace {

// Row-major scratch for the rotation sweeps; vt holds V transposed so that
// rotating two eigenvectors touches two contiguous rows.
inline void rotate(double* a, int n, int i, int j, int k, int l, double s, double tau) {
  double g = a[i * n + j], h = a[k * n + l];
  a[i * n + j] = g - s * (h + g * tau);
  a[k * n + l] = h + s * (g - h * tau);
}

}  // namespace

SymEigen sym_eigen(const Mat& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw std::invalid_argument("sym_eigen needs a square matrix");
  SymEigen out;
  if (n == 0) {
    out.values = Vec(0);
    out.vectors = Mat(0, 0);
    return out;
  }
  if (!A.allFinite()) throw std::invalid_argument("sym_eigen: non-finite entry");

  std::vector<double> a(static_cast<size_t>(n) * n), vt(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a[i * n + j] = A(i, j);
  for (int i = 0; i < n; ++i) vt[i * n + i] = 1.0;
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (int i = 0; i < n; ++i) d[i] = b[i] = a[i * n + i];

  for (int sweep = 1; sweep <= 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off += std::abs(a[p * n + q]);
    if (off == 0.0) break;
    const double tresh = sweep < 4 ? 0.2 * off / (static_cast<double>(n) * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(d[p]) + g == std::abs(d[p]) && std::abs(d[q]) + g == std::abs(d[q])) {
          a[p * n + q] = 0.0;
          continue;
        }
        if (std::abs(apq) <= tresh) continue;
        double h = d[q] - d[p];
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c, tau = s / (1.0 + c);
        h = t * apq;
        z[p] -= h;
        z[q] += h;
        d[p] -= h;
        d[q] += h;
        a[p * n + q] = 0.0;
        for (int j = 0; j < p; ++j) rotate(a.data(), n, j, p, j, q, s, tau);
        for (int j = p + 1; j < q; ++j) rotate(a.data(), n, p, j, j, q, s, tau);
        for (int j = q + 1; j < n; ++j) rotate(a.data(), n, p, j, q, j, s, tau);
        double* vp = &vt[static_cast<size_t>(p) * n];
        double* vq = &vt[static_cast<size_t>(q) * n];
        for (int j = 0; j < n; ++j) {
          double gp = vp[j], hq = vq[j];
          vp[j] = gp - s * (hq + gp * tau);
          vq[j] = hq + s * (gp - hq * tau);
        }
      }
    }
    for (int p = 0; p < n; ++p) {
      b[p] += z[p];
      d[p] = b[p];
      z[p] = 0.0;
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    int src = order[k];
    out.values[k] = d[src];
    const double* v = &vt[static_cast<size_t>(src) * n];
    int big = 0;
    for (int j = 1; j < n; ++j)
      if (std::abs(v[j]) > std::abs(v[big])) big = j;
    double sign = v[big] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) out.vectors(j, k) = sign * v[j];
  }
  return out;
}

SpdFactor::SpdFactor(const Mat& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || n == 0) throw std::invalid_argument("factor_spd needs a nonempty square matrix");
  double tr = A.trace();
  if (!(tr > 0.0)) throw NotSPD("matrix has nonpositive trace");
  llt_.compute(A);
  if (llt_.info() != Eigen::Success) throw NotSPD("Cholesky breakdown");
  const double floor = 1e-12 * tr / n;
  const Mat& L = llt_.matrixLLT();
  for (int i = 0; i < n; ++i)
    if (!(L(i, i) * L(i, i) > floor)) throw NotSPD("pivot below threshold");
}

Vec SpdFactor::solve(const Vec& b) const { return llt_.solve(b); }

Mat psd_project(const Mat& A) {
  SymEigen e = sym_eigen(A);
  Vec lam = e.values.cwiseMax(0.0);
  return e.vectors * lam.asDiagonal() * e.vectors.transpose();
}

double min_eig_bound(const Mat& A, EigBound mode) {
  const int n = static_cast<int>(A.rows());
  if (n == 0) return 0.0;
  if (mode == EigBound::Exact) return sym_eigen(A).values[0];
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) radius += std::abs(A(i, j));
    lo = std::min(lo, A(i, i) - radius);
  }
  return lo;
}

double max_eig_bound(const Mat& A, EigBound mode) { return -min_eig_bound(-A, mode); }

double form_min_eig(const QuadraticForm& f) {
  if (f.is_affine()) return 0.0;
  std::vector<int> idx;
  for (const auto& t : f.P()) {
    idx.push_back(t.row);
    idx.push_back(t.col);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  const int k = static_cast<int>(idx.size());
  std::vector<int> pos(f.dim(), -1);
  for (int a = 0; a < k; ++a) pos[idx[a]] = a;
  Mat A = Mat::Zero(k, k);
  for (const auto& t : f.P()) A(pos[t.row], pos[t.col]) = A(pos[t.col], pos[t.row]) = t.value;
  double lmin = sym_eigen(A).values[0];
  return k < f.dim() ? std::min(lmin, 0.0) : lmin;
}

}  // namespace qcqp
