#include "qcqp/split.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace qcqp {

Splitting split_shift(const Mat& P, EigBound mode) {
  const int n = static_cast<int>(P.rows());
  const double lmin = min_eig_bound(P, mode);
  const double lmax = max_eig_bound(P, mode);
  Splitting s;
  const Mat I = Mat::Identity(n, n);
  if (std::abs(lmax) < std::abs(lmin)) {
    // P+ = tI, P- = tI - P with t >= lambda_max
    double t = std::max(0.0, lmax);
    if (t > 0.0) t += 1e-9;
    s.Pplus = t * I;
    s.Pminus = t * I - P;
    s.curvature = 2.0 * t;
  } else {
    double t = std::max(0.0, -lmin);
    if (t > 0.0) t += 1e-9;
    s.Pplus = P + t * I;
    s.Pminus = t * I;
    s.curvature = 2.0 * t;
  }
  return s;
}

Splitting split_eigen(const Mat& P) {
  SymEigen e = sym_eigen(P);
  Vec pos = e.values.cwiseMax(0.0), neg = (-e.values).cwiseMax(0.0);
  Splitting s;
  s.Pplus = e.vectors * pos.asDiagonal() * e.vectors.transpose();
  s.Pminus = e.vectors * neg.asDiagonal() * e.vectors.transpose();
  s.Pplus = 0.5 * (s.Pplus + s.Pplus.transpose()).eval();
  s.Pminus = 0.5 * (s.Pminus + s.Pminus.transpose()).eval();
  s.curvature = s.Pplus.trace() + s.Pminus.trace() - e.values.cwiseAbs().sum();
  return s;
}

CholeskySplitting split_cholesky_diff(const Mat& P, double delta, CholeskyChoice choice) {
  const int n = static_cast<int>(P.rows());
  if (P.cols() != n) throw std::invalid_argument("split needs a square matrix");
  if (!P.allFinite()) throw std::invalid_argument("split needs a finite matrix");
  if (delta <= 0.0) delta = 1e-8 * (1.0 + (n ? P.diagonal().cwiseAbs().maxCoeff() : 0.0));
  CholeskySplitting out;
  out.L1 = Mat::Zero(n, n);
  out.L2 = Mat::Zero(n, n);
  out.perm.resize(n);
  for (int i = 0; i < n; ++i) out.perm[i] = i;
  Mat M = 0.5 * (P + P.transpose());
  const double sd = std::sqrt(delta);
  auto divide = [&](double d) {
    out.min_divisor = std::min(out.min_divisor, std::abs(d));
    return 1.0 / d;
  };
  // SPD input with every pivot at least delta keeps the natural order (classical Cholesky);
  // otherwise a small pivot relative to its column is swapped for the largest remaining diagonal
  Eigen::LLT<Mat> llt(M);
  const bool natural = llt.info() == Eigen::Success && (n == 0 || llt.matrixLLT().diagonal().minCoeff() >= sd);
  constexpr double alpha = 0.6404;  // (1 + sqrt 17) / 8
  for (int k = 0; k < n; ++k) {
    const int m = n - k - 1;
    if (!natural && m > 0) {
      const double g = M.col(k).tail(m).cwiseAbs().maxCoeff();
      if (std::abs(M(k, k)) < alpha * g) {
        Eigen::Index j;
        const double best = M.diagonal().tail(n - k).cwiseAbs().maxCoeff(&j);
        j += k;
        if (best > std::abs(M(k, k))) {
          M.row(k).swap(M.row(j));
          M.col(k).swap(M.col(j));
          out.L1.row(k).swap(out.L1.row(j));
          out.L2.row(k).swap(out.L2.row(j));
          std::swap(out.perm[k], out.perm[j]);
        }
      }
    }
    // work on sigma * M so the pivot is nonnegative; sigma = -1 swaps the factors
    const double sigma = M(k, k) < 0.0 ? -1.0 : 1.0;
    const double a = sigma * M(k, k);
    Vec v = sigma * M.col(k).tail(m);
    Mat S = sigma * M.bottomRightCorner(m, m);
    Vec c1 = Vec::Zero(n - k), c2 = Vec::Zero(n - k);
    if (a >= delta) {
      double ra = std::sqrt(a);
      c1[0] = ra;
      c1.tail(m) = v * divide(ra);
      S -= c1.tail(m) * c1.tail(m).transpose();
    } else if (choice == CholeskyChoice::V1Zero) {
      c1[0] = std::sqrt(delta + a);
      c2[0] = sd;
      c2.tail(m) = -v * divide(sd);
      S += c2.tail(m) * c2.tail(m).transpose();
    } else {
      double rb = std::sqrt(delta + a);
      c1[0] = rb;
      c1.tail(m) = v * divide(rb);
      c2[0] = sd;
      S -= c1.tail(m) * c1.tail(m).transpose();
    }
    if (sigma > 0.0) {
      out.L1.col(k).tail(n - k) = c1;
      out.L2.col(k).tail(n - k) = c2;
    } else {
      out.L1.col(k).tail(n - k) = c2;
      out.L2.col(k).tail(n - k) = c1;
    }
    M.bottomRightCorner(m, m) = sigma * S;
  }
  // back to the caller's ordering: row perm[i] of the factor is row i of the permuted one
  Mat L1(n, n), L2(n, n);
  for (int i = 0; i < n; ++i) {
    L1.row(out.perm[i]) = out.L1.row(i);
    L2.row(out.perm[i]) = out.L2.row(i);
  }
  out.L1 = std::move(L1);
  out.L2 = std::move(L2);
  out.split.Pplus = out.L1 * out.L1.transpose();
  out.split.Pminus = out.L2 * out.L2.transpose();
  SymEigen e = sym_eigen(0.5 * (P + P.transpose()));
  out.split.curvature = out.split.Pplus.trace() + out.split.Pminus.trace() - e.values.cwiseAbs().sum();
  return out;
}

Splitting split_ldl(const Mat& P, double delta, bool* fell_back) {
  const int n = static_cast<int>(P.rows());
  if (delta <= 0.0) delta = 1e-8 * (1.0 + (n ? P.diagonal().cwiseAbs().maxCoeff() : 0.0));
  Mat L = Mat::Identity(n, n);
  Vec D = Vec::Zero(n);
  Mat M = 0.5 * (P + P.transpose());
  for (int k = 0; k < n; ++k) {
    const int m = n - k - 1;
    double d = M(k, k);
    Vec v = M.col(k).tail(m);
    if (std::abs(d) < delta) {
      if (v.cwiseAbs().maxCoeff() <= 0.0 || m == 0) {
        D[k] = d;  // zero pivot with zero column: nothing to eliminate
        continue;
      }
      // a 2x2 pivot block would be needed
      if (fell_back) *fell_back = true;
      return split_cholesky_diff(P, delta).split;
    }
    D[k] = d;
    L.col(k).tail(m) = v / d;
    M.bottomRightCorner(m, m) -= v * v.transpose() / d;
  }
  if (fell_back) *fell_back = false;
  Splitting s;
  s.Pplus = L * D.cwiseMax(0.0).asDiagonal() * L.transpose();
  s.Pminus = L * (-D).cwiseMax(0.0).asDiagonal() * L.transpose();
  SymEigen e = sym_eigen(0.5 * (P + P.transpose()));
  s.curvature = s.Pplus.trace() + s.Pminus.trace() - e.values.cwiseAbs().sum();
  return s;
}

Splitting split(const Mat& P, SplitMethod method) {
  switch (method) {
    case SplitMethod::Shift: return split_shift(P);
    case SplitMethod::Eigen: return split_eigen(P);
    case SplitMethod::CholeskyDiff: return split_cholesky_diff(P).split;
    case SplitMethod::Ldl: return split_ldl(P);
  }
  throw std::invalid_argument("unknown split method");
}

}  // namespace qcqp
