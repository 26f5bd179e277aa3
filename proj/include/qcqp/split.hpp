#pragma once

#include "qcqp/linalg.hpp"

#include <vector>

namespace qcqp {

/// P = Pplus - Pminus with both parts PSD.
struct Splitting {
  Mat Pplus;
  Mat Pminus;
  double curvature = 0.0;  // curvature added beyond the eigen split
};

/// Diagonal shift by t = max(0, -lambda_min) (or the mirrored form when
/// |lambda_max| < |lambda_min|). curvature = 2t.
Splitting split_shift(const Mat& P, EigBound mode = EigBound::Exact);

/// Positive and negative eigen-parts.
Splitting split_eigen(const Mat& P);

enum class CholeskyChoice { V1Zero, V2Zero };

struct CholeskySplitting {
  Splitting split;
  Mat L1;  // Pplus = L1 L1'
  Mat L2;  // Pminus = L2 L2'
  std::vector<int> perm;  // L1, L2 rows reordered by perm are lower triangular
  double min_divisor = std::numeric_limits<double>::infinity();
};

/// Column-by-column difference of two lower-triangular factors. Pivots with
/// magnitude below delta are lifted by delta so no divisor drops below sqrt(delta).
/// delta <= 0 selects 1e-8 * (1 + max |P_ii|). SPD input is factored in natural order;
/// otherwise a pivot below 0.64 times its column maximum is swapped for the largest
/// remaining diagonal entry, which limits element growth.
CholeskySplitting split_cholesky_diff(const Mat& P, double delta = -1.0,
                                      CholeskyChoice choice = CholeskyChoice::V1Zero);

/// P = L D L' with unit lower L and diagonal D; Pplus = L D+ L', Pminus = L D- L'.
/// Falls back to split_cholesky_diff when a pivot is too small for a 1x1 step.
Splitting split_ldl(const Mat& P, double delta = -1.0, bool* fell_back = nullptr);

enum class SplitMethod { Shift, Eigen, CholeskyDiff, Ldl };

Splitting split(const Mat& P, SplitMethod method);

}  // namespace qcqp
