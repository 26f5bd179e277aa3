#include "qcqp/generators.hpp"

#include "qcqp/rng.hpp"

#include <algorithm>
#include <cmath>

namespace qcqp {

namespace {

QuadraticForm square_minus(int n, int i, double a, double b, double r) {
  // a x_i^2 + b x_i + r
  Vec q = Vec::Zero(n);
  q[i] = b;
  return QuadraticForm(n, {{i, i, a}}, q, r);
}

void add_pm_one(Problem& p) {
  for (int i = 0; i < p.n; ++i) p.constraints.push_back({square_minus(p.n, i, 1.0, 0.0, -1.0), Sense::EqZero});
}

void add_zero_one(Problem& p) {
  for (int i = 0; i < p.n; ++i) p.constraints.push_back({square_minus(p.n, i, 1.0, -1.0, 0.0), Sense::EqZero});
}

void check_symmetric(const Mat& W) {
  if (W.rows() != W.cols()) throw std::invalid_argument("matrix must be square");
  if (W != W.transpose()) throw std::invalid_argument("matrix must be symmetric");
}

}  // namespace

Problem gen_boolean_ls(const Mat& A, const Vec& b) {
  if (A.rows() != b.size()) throw std::invalid_argument("A and b disagree");
  Problem p;
  p.n = static_cast<int>(A.cols());
  p.objective = QuadraticForm::from_dense(A.transpose() * A, -2.0 * A.transpose() * b, b.squaredNorm());
  add_pm_one(p);
  return p;
}

Problem gen_boolean_ls(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("dimensions must be positive");
  Rng rng(seed);
  Mat A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
  Vec b(m);
  for (int i = 0; i < m; ++i) b[i] = rng.normal();
  return gen_boolean_ls(A, b);
}

Problem gen_partitioning(const Mat& W) {
  check_symmetric(W);
  Problem p;
  p.n = static_cast<int>(W.rows());
  p.maximize = true;
  p.objective = QuadraticForm::from_dense(-W, Vec::Zero(p.n), 0.0);
  add_pm_one(p);
  return p;
}

Mat laplacian(const Mat& W) {
  check_symmetric(W);
  Mat L = -W;
  for (Eigen::Index i = 0; i < W.rows(); ++i) L(i, i) = W.row(i).sum() - W(i, i);
  return L;
}

Problem gen_maxcut(const Mat& W) {
  Problem p = gen_partitioning(0.25 * laplacian(W));
  return p;
}

Problem gen_maxbisection(const Mat& W) {
  Problem p = gen_maxcut(W);
  p.constraints.push_back({QuadraticForm(p.n, {}, Vec::Ones(p.n), 0.0), Sense::EqZero});
  return p;
}

Problem gen_maxclique(const Mat& adjacency) {
  check_symmetric(adjacency);
  Problem p;
  p.n = static_cast<int>(adjacency.rows());
  p.maximize = true;
  p.objective = QuadraticForm(p.n, {}, -Vec::Ones(p.n), 0.0);
  for (int j = 0; j < p.n; ++j)
    for (int i = 0; i < j; ++i)
      if (adjacency(i, j) == 0.0) p.constraints.push_back({QuadraticForm(p.n, {{i, j, 0.5}}, Vec::Zero(p.n), 0.0), Sense::EqZero});
  add_zero_one(p);
  return p;
}

Problem gen_3sat(int n, const std::vector<Clause>& clauses) {
  if (n < 1) throw std::invalid_argument("need at least one variable");
  Problem p;
  p.n = n;
  p.objective = QuadraticForm(n);
  for (size_t k = 0; k < clauses.size(); ++k) {
    Vec q = Vec::Zero(n);
    double negated = 0.0;
    std::vector<int> vars;
    for (int lit : clauses[k]) {
      int v = std::abs(lit) - 1;
      if (lit == 0 || v >= n) throw MalformedClause("clause " + std::to_string(k) + " has an invalid literal");
      if (std::find(vars.begin(), vars.end(), v) != vars.end())
        throw MalformedClause("clause " + std::to_string(k) + " repeats a variable");
      vars.push_back(v);
      q[v] = lit > 0 ? -1.0 : 1.0;
      if (lit < 0) negated += 1.0;
    }
    // 1 - (a'x + b) <= 0
    p.constraints.push_back({QuadraticForm(n, {}, q, 1.0 - negated), Sense::LeqZero});
  }
  add_zero_one(p);
  return p;
}

Problem gen_beamforming(int n, int m, int l, double tau, double eta, std::uint64_t seed) {
  if (n < 1 || m < 1 || l < 1) throw std::invalid_argument("dimensions must be positive");
  Rng rng(seed);
  const int N = 2 * n;
  Problem p;
  p.n = N;
  std::vector<Triplet> eye;
  for (int i = 0; i < N; ++i) eye.push_back({i, i, 1.0});
  p.objective = QuadraticForm(N, eye, Vec::Zero(N), 0.0);
  auto pair_matrix = [&]() {
    Vec re(n), im(n);
    for (int i = 0; i < n; ++i) re[i] = rng.normal();
    for (int i = 0; i < n; ++i) im[i] = rng.normal();
    Vec a(N), b(N);
    a << re, im;
    b << -im, re;
    return Mat(a * a.transpose() + b * b.transpose());
  };
  for (int i = 0; i < m; ++i)
    p.constraints.push_back({QuadraticForm::from_dense(-pair_matrix(), Vec::Zero(N), tau), Sense::LeqZero});
  for (int j = 0; j < l; ++j)
    p.constraints.push_back({QuadraticForm::from_dense(pair_matrix(), Vec::Zero(N), -eta), Sense::LeqZero});
  return p;
}

Mat random_weights(int n, double prob, bool gaussian, std::uint64_t seed) {
  Rng rng(seed);
  Mat W = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < prob) W(i, j) = W(j, i) = gaussian ? rng.normal() : 1.0;
  return W;
}

Mat random_psd_weights(int n, std::uint64_t seed) {
  Rng rng(seed);
  Mat G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  Mat W = G.transpose() * G;
  return 0.5 * (W + W.transpose());
}

Mat random_graph(int n, double prob, std::uint64_t seed) {
  Mat A = random_weights(n, prob, false, seed);
  A.diagonal().setOnes();
  return A;
}

std::vector<Clause> random_clauses(int n, int count, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("3-SAT needs at least three variables");
  Rng rng(seed);
  std::vector<Clause> out;
  for (int k = 0; k < count; ++k) {
    Clause c{};
    for (int t = 0; t < 3; ++t) {
      int v;
      do {
        v = static_cast<int>(rng.below(n)) + 1;
      } while (std::find(c.begin(), c.begin() + t, v) != c.begin() + t ||
               std::find(c.begin(), c.begin() + t, -v) != c.begin() + t);
      c[t] = rng.below(2) ? -v : v;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace qcqp
