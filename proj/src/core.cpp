#include "qcqp/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcqp {

QuadraticForm::QuadraticForm(int n) : n_(n), q_(Vec::Zero(n)) {}

QuadraticForm::QuadraticForm(int n, std::vector<Triplet> P, Vec q, double r)
    : n_(n), P_(std::move(P)), q_(std::move(q)), r_(r) {
  if (n < 0) throw std::invalid_argument("negative dimension");
  if (q_.size() == 0) q_ = Vec::Zero(n);
  if (q_.size() != n) throw std::invalid_argument("q has wrong length");
  canonicalize();
}

QuadraticForm QuadraticForm::from_dense(const Mat& P, const Vec& q, double r) {
  const int n = static_cast<int>(P.rows());
  if (P.cols() != n) throw std::invalid_argument("P must be square");
  std::vector<Triplet> t;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      double v = i == j ? P(i, i) : 0.5 * (P(i, j) + P(j, i));
      if (v != 0.0) t.push_back({i, j, v});
    }
  return QuadraticForm(n, std::move(t), q.size() ? q : Vec(Vec::Zero(n)), r);
}

void QuadraticForm::canonicalize() {
  for (auto& t : P_) {
    if (t.row < 0 || t.col < 0 || t.row >= n_ || t.col >= n_)
      throw std::invalid_argument("triplet index out of range");
    if (!std::isfinite(t.value)) throw std::invalid_argument("non-finite triplet value");
    if (t.row > t.col) std::swap(t.row, t.col);
  }
  std::sort(P_.begin(), P_.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  std::vector<Triplet> merged;
  for (const auto& t : P_) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
      merged.back().value += t.value;
    else
      merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Triplet& t) { return t.value == 0.0; }),
               merged.end());
  P_ = std::move(merged);
  for (int i = 0; i < n_; ++i)
    if (!std::isfinite(q_[i])) throw std::invalid_argument("non-finite q entry");
  if (!std::isfinite(r_)) throw std::invalid_argument("non-finite r");
}

double QuadraticForm::quad(const Vec& x) const {
  double s = 0.0;
  for (const auto& t : P_) {
    if (t.row == t.col)
      s += t.value * x[t.row] * x[t.row];
    else
      s += 2.0 * t.value * x[t.row] * x[t.col];
  }
  return s;
}

double QuadraticForm::evaluate(const Vec& x) const {
  if (x.size() != n_) throw std::invalid_argument("point has wrong dimension");
  return quad(x) + q_.dot(x) + r_;
}

Vec QuadraticForm::apply(const Vec& x) const {
  Vec y = Vec::Zero(n_);
  for (const auto& t : P_) {
    y[t.row] += t.value * x[t.col];
    if (t.row != t.col) y[t.col] += t.value * x[t.row];
  }
  return y;
}

Vec QuadraticForm::gradient(const Vec& x) const { return 2.0 * apply(x) + q_; }

Mat QuadraticForm::dense_P() const {
  Mat P = Mat::Zero(n_, n_);
  for (const auto& t : P_) {
    P(t.row, t.col) = t.value;
    P(t.col, t.row) = t.value;
  }
  return P;
}

std::vector<int> QuadraticForm::support() const {
  std::vector<char> used(n_, 0);
  for (const auto& t : P_) used[t.row] = used[t.col] = 1;
  for (int i = 0; i < n_; ++i)
    if (q_[i] != 0.0) used[i] = 1;
  std::vector<int> s;
  for (int i = 0; i < n_; ++i)
    if (used[i]) s.push_back(i);
  return s;
}

QuadraticForm QuadraticForm::scaled(double s) const {
  auto P = P_;
  for (auto& t : P) t.value *= s;
  return QuadraticForm(n_, std::move(P), q_ * s, r_ * s);
}

QuadraticForm QuadraticForm::plus(const QuadraticForm& other, double weight) const {
  if (other.n_ != n_) throw std::invalid_argument("dimension mismatch");
  auto P = P_;
  for (auto t : other.P_) {
    t.value *= weight;
    P.push_back(t);
  }
  return QuadraticForm(n_, std::move(P), q_ + weight * other.q_, r_ + weight * other.r_);
}

QuadraticForm QuadraticForm::embedded(int n_new) const {
  if (n_new < n_) throw std::invalid_argument("cannot shrink a form");
  Vec q = Vec::Zero(n_new);
  q.head(n_) = q_;
  return QuadraticForm(n_new, P_, q, r_);
}

void Problem::validate() const {
  if (n < 0) throw std::invalid_argument("negative dimension");
  if (objective.dim() != n) throw std::invalid_argument("objective dimension mismatch");
  for (size_t i = 0; i < constraints.size(); ++i)
    if (constraints[i].f.dim() != n)
      throw std::invalid_argument("constraint " + std::to_string(i) + " dimension mismatch");
}

double violation(const Problem& p, const Vec& x) {
  if (!x.allFinite()) return std::numeric_limits<double>::infinity();
  double v = 0.0;
  for (const auto& c : p.constraints) {
    double f = c.f.evaluate(x);
    double vi = c.sense == Sense::EqZero ? std::abs(f) : std::max(f, 0.0);
    if (std::isnan(vi)) return std::numeric_limits<double>::infinity();
    v = std::max(v, vi);
  }
  return v;
}

Assessment assess(const Problem& p, const Vec& x) {
  if (x.size() != p.n) throw std::invalid_argument("point has wrong dimension");
  Assessment a;
  a.violation = violation(p, x);
  if (!std::isfinite(a.violation)) {
    a.objective = std::numeric_limits<double>::infinity();
    return a;
  }
  a.objective = p.objective.evaluate(x);
  if (std::isnan(a.objective)) {
    a.violation = a.objective = std::numeric_limits<double>::infinity();
  }
  return a;
}

bool better(const Assessment& a, const Assessment& b) {
  if (a.violation != b.violation) return a.violation < b.violation;
  return a.objective < b.objective;
}

Problem to_epigraph(const Problem& p) {
  Problem e;
  e.n = p.n + 1;
  e.maximize = p.maximize;
  Vec q = Vec::Zero(e.n);
  q[p.n] = 1.0;
  e.objective = QuadraticForm(e.n, {}, q, 0.0);
  QuadraticForm lifted = p.objective.embedded(e.n);
  Vec qt = lifted.q();
  qt[p.n] = -1.0;
  e.constraints.push_back({QuadraticForm(e.n, lifted.P(), qt, lifted.r()), Sense::LeqZero});
  for (const auto& c : p.constraints) e.constraints.push_back({c.f.embedded(e.n), c.sense});
  return e;
}

namespace {
QuadraticForm homogenize(const QuadraticForm& f) {
  const int n = f.dim();
  std::vector<Triplet> t = f.P();
  for (int i = 0; i < n; ++i)
    if (f.q()[i] != 0.0) t.push_back({i, n, 0.5 * f.q()[i]});
  if (f.r() != 0.0) t.push_back({n, n, f.r()});
  return QuadraticForm(n + 1, std::move(t), Vec::Zero(n + 1), 0.0);
}
}  // namespace

Problem to_homogeneous(const Problem& p) {
  Problem h;
  h.n = p.n + 1;
  h.maximize = p.maximize;
  h.objective = homogenize(p.objective);
  for (const auto& c : p.constraints) h.constraints.push_back({homogenize(c.f), c.sense});
  h.constraints.push_back({QuadraticForm(h.n, {{p.n, p.n, 1.0}}, Vec::Zero(h.n), -1.0), Sense::EqZero});
  return h;
}

Vec dehomogenize(const Vec& z) {
  if (z.size() < 2) throw std::invalid_argument("homogeneous point needs at least two entries");
  double s = z[z.size() - 1];
  if (s == 0.0) throw std::domain_error("last homogeneous coordinate is zero");
  return z.head(z.size() - 1) / s;
}

Mat homogeneous_matrix(const QuadraticForm& f) {
  const int n = f.dim();
  Mat M = Mat::Zero(n + 1, n + 1);
  M.topLeftCorner(n, n) = f.dense_P();
  M.block(0, n, n, 1) = 0.5 * f.q();
  M.block(n, 0, 1, n) = 0.5 * f.q().transpose();
  M(n, n) = f.r();
  return M;
}

}  // namespace qcqp
