#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace qcqp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// One entry of the upper triangle of a symmetric matrix.
struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// f(x) = x'Px + q'x + r with P kept as upper-triangle triplets.
/// Off-diagonal triplets stand for both (i,j) and (j,i).
class QuadraticForm {
 public:
  QuadraticForm() = default;
  explicit QuadraticForm(int n);
  QuadraticForm(int n, std::vector<Triplet> P, Vec q, double r);

  /// Keeps the upper triangle of (P + P')/2.
  static QuadraticForm from_dense(const Mat& P, const Vec& q, double r);

  int dim() const { return n_; }
  const std::vector<Triplet>& P() const { return P_; }
  const Vec& q() const { return q_; }
  double r() const { return r_; }

  double evaluate(const Vec& x) const;
  double quad(const Vec& x) const;  // x'Px only
  Vec apply(const Vec& x) const;    // Px
  Vec gradient(const Vec& x) const; // 2Px + q
  Mat dense_P() const;
  bool is_affine() const { return P_.empty(); }

  /// Indices touched by P or q.
  std::vector<int> support() const;

  QuadraticForm scaled(double s) const;
  QuadraticForm negated() const { return scaled(-1.0); }
  QuadraticForm plus(const QuadraticForm& other, double weight = 1.0) const;
  /// Same form on a larger variable space (extra variables unused).
  QuadraticForm embedded(int n_new) const;

 private:
  void canonicalize();

  int n_ = 0;
  std::vector<Triplet> P_;
  Vec q_;
  double r_ = 0.0;
};

enum class Sense { LeqZero, EqZero };

struct EmptyConstraintSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Constraint {
  QuadraticForm f;
  Sense sense = Sense::LeqZero;
};

/// minimize f0(x) subject to f_i(x) <= 0 or f_i(x) = 0.
/// `maximize` records that the objective was negated from a maximization.
struct Problem {
  int n = 0;
  QuadraticForm objective;
  std::vector<Constraint> constraints;
  bool maximize = false;

  int m() const { return static_cast<int>(constraints.size()); }
  void validate() const;
  /// Objective in the sense the problem was posed.
  double reported_objective(double f0) const { return maximize ? -f0 : f0; }
};

struct Assessment {
  double violation = 0.0;
  double objective = 0.0;
};

/// Max violation; a non-finite x is infeasible (violation = +inf).
double violation(const Problem& p, const Vec& x);
Assessment assess(const Problem& p, const Vec& x);

/// Strict lexicographic order on (violation, objective).
bool better(const Assessment& a, const Assessment& b);
inline bool not_worse(const Assessment& a, const Assessment& b) { return !better(b, a); }

/// Variables (x, t): minimize t s.t. f0(x) - t <= 0 and the original constraints.
Problem to_epigraph(const Problem& p);
/// Variables (x, s) with s^2 = 1 appended; every form becomes a pure quadratic.
Problem to_homogeneous(const Problem& p);
/// x = z[0:n] / z[n]; throws std::domain_error when z[n] == 0.
Vec dehomogenize(const Vec& z);
/// [[P, q/2], [q'/2, r]]
Mat homogeneous_matrix(const QuadraticForm& f);

}  // namespace qcqp
