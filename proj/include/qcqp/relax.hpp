#pragma once

#include "qcqp/core.hpp"
#include "qcqp/lp.hpp"
#include "qcqp/oneconstraint.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace qcqp {

/// Lower bound from aggregating the constraints with weights lambda into one
/// constraint and solving that problem globally. lambda must be >= 0 on
/// inequality rows; equality rows accept either sign. Empty lambda means all ones.
struct SpectralBound {
  double bound = -std::numeric_limits<double>::infinity();
  OneConstraintStatus status = OneConstraintStatus::DualUnbounded;
  Vec x;             // minimizer of the aggregated problem (when Optimal)
  double eta = 0.0;  // multiplier on the aggregated constraint
  Vec lambda;
};

SpectralBound spectral_bound(const Problem& p, const Vec& lambda = Vec());

enum class CutRule { MinEigenvector, AllNegative };

struct CuttingPlaneOptions {
  int max_cuts = -1;         // <= 0: 50 n
  double psd_tol = 1e-6;
  double box = -1.0;         // <= 0: 10 (1 + ||q0||inf + max_i ||qi||inf)
  CutRule cut_rule = CutRule::MinEigenvector;
  bool seed_spectral = true; // start from cuts that reproduce the all-ones spectral bound
  int inactive_age = 5;      // drop a cut after this many consecutive solves with slack
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
};

struct CuttingPlaneResult {
  double bound = -std::numeric_limits<double>::infinity();
  Mat X;
  Vec x;
  std::vector<double> trace;  // bound after each LP solve, nondecreasing
  bool valid = false;         // false when the safeguard box is active at the final LP point
  bool converged = false;     // lambda_min(Z) >= -psd_tol
  bool infeasible = false;    // certified: the lifted LP has no point at all
  double min_eig = -std::numeric_limits<double>::infinity();
  int cuts = 0;
  int iterations = 0;
  LpStatus lp_status = LpStatus::NumericalFailure;
  double box = 0.0;
};

/// Outer approximation of the semidefinite relaxation: LP over (X, x) plus
/// cuts a'Za >= 0 generated from eigenvectors of Z = [[X, x], [x', 1]].
CuttingPlaneResult sdr_bound_cutting_plane(const Problem& p, const CuttingPlaneOptions& opts = {});

/// Draws from N(x, psd_project(X - x x')); sample k uses seed + k.
/// `repair` receives the magnitude of the most negative eigenvalue clipped from X - x x'.
std::vector<Vec> sample_from_lifted(const Mat& X, const Vec& x, int count, std::uint64_t seed,
                                    double psd_tol = 1e-6, double* repair = nullptr);

/// Appends -(a_i'x - b_i)(a_j'x - b_j) <= 0 for pairs of affine inequality rows.
Problem tighten(const Problem& p, int pair_budget);

}  // namespace qcqp
