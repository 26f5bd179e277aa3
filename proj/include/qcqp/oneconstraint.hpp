#pragma once

#include "qcqp/core.hpp"
#include "qcqp/linalg.hpp"

#include <optional>

namespace qcqp {

/// Separable model used by the projection and one-constraint solvers:
///   minimize sum_i w_i^2 + a_i w_i   s.t.   g(w) = sum_i lam_i w_i^2 + b_i w_i + c  (= 0 or <= 0)
/// Stationarity gives w_i(t) = -(a_i + t b_i) / (2 (1 + t lam_i)); g(w(t)) is decreasing in t.
struct SecularModel {
  Vec lam, a, b;
  double c = 0.0;
};

struct SecularSolution {
  Vec w;
  double t = 0.0;        // multiplier
  bool boundary = false; // singular pencil: 1 + t lam_i = 0 for some i
  int iterations = 0;
};

/// t_min = -inf for an equality; for an inequality the multiplier must satisfy t >= t_min.
/// Throws EmptyConstraintSet when g can never reach the required sign.
SecularSolution solve_secular(const SecularModel& m, double t_min, bool inequality);

/// Nearest-point projection onto one quadratic constraint set. The eigenvectors of
/// P are computed once (restricted to the indices P touches), so repeated
/// projections cost O(k^2 + n) with k the size of that support.
class Projector {
 public:
  Projector() = default;
  explicit Projector(const QuadraticForm& f);

  const QuadraticForm& form() const { return f_; }
  /// argmin ||x - z|| s.t. f(x) = 0.
  Vec project_eq(const Vec& z, double* multiplier = nullptr) const;
  /// z itself when f(z) <= 0, otherwise the projection onto f(x) = 0.
  Vec project_ineq(const Vec& z, double* multiplier = nullptr) const;
  /// Projection onto {x : f(x) + shift = 0}; lets interval constraints share one eigendecomposition.
  Vec project_eq_shifted(const Vec& z, double shift, double* multiplier = nullptr) const;

 private:
  QuadraticForm f_;
  std::vector<int> rot_;   // indices rotated by Q
  std::vector<int> free_;  // remaining indices with q_j != 0
  Vec lam_;
  Mat Q_;
};

Vec project_eq(const QuadraticForm& f, const Vec& z);
Vec project_ineq(const QuadraticForm& f, const Vec& z);
/// argmin ||x - z|| s.t. l <= f(x) <= u.
Vec solve_interval(const QuadraticForm& f, double l, double u, const Vec& z);

struct ProjectionResult {
  Vec x;
  double nu = 0.0;            // multiplier: 2(x - z) + nu grad f(x) = 0
  double kkt_residual = 0.0;  // max of stationarity and constraint residuals
};

/// max(||2(x - z) + nu grad f(x)||, constraint residual) for the given sense.
double kkt_residual(const QuadraticForm& f, const Vec& z, const Vec& x, double nu, Sense sense);
ProjectionResult project(const QuadraticForm& f, const Vec& z, Sense sense);

enum class OneConstraintStatus { Optimal, Infeasible, DualUnbounded };

struct OneConstraintResult {
  OneConstraintStatus status = OneConstraintStatus::Optimal;
  Vec x;
  double value = 0.0;       // f0(x)
  double dual_value = 0.0;  // Lagrangian dual at the returned multiplier
  double multiplier = 0.0;  // eta for f1
  bool boundary = false;
};

/// Global minimum of f0 subject to the single constraint f1 (<= 0 or = 0),
/// found by maximizing the one-dimensional Lagrangian dual.
OneConstraintResult solve_one_constraint(const QuadraticForm& f0, const QuadraticForm& f1, Sense sense);

/// minimize f0 s.t. l <= f1(x) <= u by solving the two one-sided problems and
/// keeping the one whose solution also meets the other side. Falls back to the
/// two equality problems f1 = l and f1 = u. Infeasible when nothing is found.
OneConstraintResult solve_interval(const QuadraticForm& f0, const QuadraticForm& f1, double l, double u);

}  // namespace qcqp
