#pragma once

#include <limits>
#include <vector>

namespace qcqp {

struct Interval {
  double lo;
  double hi;
};

/// Sorted, disjoint closed intervals; endpoints may be +-infinity.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet everything();
  static IntervalSet empty_set() { return IntervalSet(); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(double t, double tol = 0.0) const;
  /// Point of the set closest to t; ties go to the larger point. Set must be nonempty.
  double nearest(double t) const;

 private:
  std::vector<Interval> parts_;
};

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);

/// {x : p x^2 + q x + r <= 0}. |p| < 1e-12 is treated as affine.
IntervalSet constraint_solution_set(double p, double q, double r);

struct OneVarQuad {
  double p = 0.0, q = 0.0, r = 0.0;
  double operator()(double x) const { return (p * x + q) * x + r; }
};

enum class OneVarStatus { Optimal, Infeasible, Unbounded };

struct OneVarResult {
  OneVarStatus status = OneVarStatus::Infeasible;
  double x = std::numeric_limits<double>::quiet_NaN();
  double value = std::numeric_limits<double>::quiet_NaN();
};

/// minimize obj(x) over a feasible set.
OneVarResult solve_onevar(const OneVarQuad& obj, const IntervalSet& feasible);
/// minimize obj(x) s.t. every c(x) <= 0.
OneVarResult solve_onevar(const OneVarQuad& obj, const std::vector<OneVarQuad>& constraints);

}  // namespace qcqp
