#pragma once

#include "qcqp/core.hpp"

#include <Eigen/Cholesky>

namespace qcqp {

/// Eigenvalues ascending; eigenvector columns in matching order.
/// Each eigenvector is signed so its largest-magnitude entry is positive.
struct SymEigen {
  Vec values;
  Mat vectors;
};

/// Cyclic Jacobi rotations on a symmetric matrix (only the upper triangle is read).
SymEigen sym_eigen(const Mat& A);

struct NotSPD : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cholesky factor kept for repeated solves.
class SpdFactor {
 public:
  SpdFactor() = default;
  /// Throws NotSPD when a pivot falls below 1e-12 * trace / n.
  explicit SpdFactor(const Mat& A);
  Vec solve(const Vec& b) const;
  int dim() const { return static_cast<int>(llt_.rows()); }
  const Eigen::LLT<Mat>& llt() const { return llt_; }

 private:
  Eigen::LLT<Mat> llt_;
};

inline Vec solve_spd(const Mat& A, const Vec& b) { return SpdFactor(A).solve(b); }
inline SpdFactor factor_spd(const Mat& A) { return SpdFactor(A); }
inline Vec back_solve(const SpdFactor& F, const Vec& b) { return F.solve(b); }

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped to zero).
Mat psd_project(const Mat& A);

enum class EigBound { Exact, Gershgorin };

/// Lower bound on the smallest eigenvalue; exact when mode == Exact.
double min_eig_bound(const Mat& A, EigBound mode = EigBound::Exact);
/// Upper bound on the largest eigenvalue.
double max_eig_bound(const Mat& A, EigBound mode = EigBound::Exact);

/// Exact smallest eigenvalue of P, computed on the rows P touches.
double form_min_eig(const QuadraticForm& f);

}  // namespace qcqp
