#include "improve_common.hpp"

#include <algorithm>
#include <cmath>

namespace qcqp {

namespace {

/// One side of a split form: f(x) = x'(P+ - P-)x + q'x + r.
struct SplitForm {
  Mat Pplus, Pminus;
  Vec q;
  double r = 0.0;
  bool concave_free = true;

  SplitForm(const QuadraticForm& f, SplitMethod method) : q(f.q()), r(f.r()) {
    const int n = f.dim();
    if (f.is_affine()) {
      Pplus = Pminus = Mat::Zero(n, n);
      return;
    }
    // split on the rows P touches; the rest of both parts stays zero
    std::vector<int> idx;
    for (const auto& t : f.P()) {
      idx.push_back(t.row);
      idx.push_back(t.col);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    const int k = static_cast<int>(idx.size());
    Mat full = f.dense_P();
    Mat sub(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) sub(a, b) = full(idx[a], idx[b]);
    Splitting s = split(sub, method);
    Pplus = Pminus = Mat::Zero(n, n);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        Pplus(idx[a], idx[b]) = s.Pplus(a, b);
        Pminus(idx[a], idx[b]) = s.Pminus(a, b);
      }
    concave_free = Pminus.isZero(0.0);
  }

  /// Convex majorant tight at xk: the concave part replaced by its linearization.
  void convexified(const Vec& xk, Mat& P, Vec& lin, double& c) const {
    P = Pplus;
    if (concave_free) {
      lin = q;
      c = r;
      return;
    }
    Vec g = Pminus * xk;
    lin = q - 2.0 * g;
    c = r + xk.dot(g);
  }
  double majorant(const Vec& x, const Vec& xk) const {
    double v = x.dot(Pplus * x) + q.dot(x) + r;
    if (!concave_free) {
      Vec g = Pminus * xk;
      v += -2.0 * g.dot(x) + xk.dot(g);
    }
    return v;
  }
};

}  // namespace

ImproveReport improve_ccp(const Problem& p, const Vec& x0, const CcpOptions& opts) {
  p.validate();
  const int n = p.n;
  if (x0.size() != n) throw std::invalid_argument("x0 has wrong length");
  detail::Stopwatch clock;
  ImproveReport r;
  r.method = "ccp";
  detail::BestPoint best(p, x0);
  if (!x0.allFinite()) {
    r.x = r.last = x0;
    r.assessment = best.a;
    return r;
  }

  const SplitForm obj(p.objective, opts.split_method);
  std::vector<SplitForm> rows;
  for (const auto& c : p.constraints) {
    rows.emplace_back(c.f, opts.split_method);
    if (c.sense == Sense::EqZero) rows.emplace_back(c.f.negated(), opts.split_method);
  }
  const int R = static_cast<int>(rows.size());
  const int N = n + R;

  auto slacks = [&](const Vec& x, const Vec& xk) {
    Vec s(R);
    for (int i = 0; i < R; ++i) s[i] = std::max(0.0, rows[i].majorant(x, xk));
    return s;
  };

  Vec x = x0;
  double tau = opts.tau0;
  double prev_sum = std::numeric_limits<double>::infinity();
  detail::AdmmCopies warm;  // copies and duals carried from one subproblem to the next
  int k = 0;
  for (; k < opts.max_iter && clock.seconds() < opts.time_limit; ++k) {
    // subproblem over (x, s): minimize objective majorant + tau 1's  s.t.  row majorant_i(x) <= s_i, s >= 0
    Problem sub;
    sub.n = N;
    Mat P;
    Vec lin;
    double c;
    obj.convexified(x, P, lin, c);
    Mat Pn = Mat::Zero(N, N);
    Pn.topLeftCorner(n, n) = P;
    Vec qn = Vec::Zero(N);
    qn.head(n) = lin;
    qn.tail(R).setConstant(tau);
    sub.objective = QuadraticForm::from_dense(Pn, qn, c);
    for (int i = 0; i < R; ++i) {
      rows[i].convexified(x, P, lin, c);
      Pn.setZero();
      Pn.topLeftCorner(n, n) = P;
      qn.setZero();
      qn.head(n) = lin;
      qn[n + i] = -1.0;
      sub.constraints.push_back({QuadraticForm::from_dense(Pn, qn, c), Sense::LeqZero});
    }
    AdmmOptions so = opts.subsolver;
    Vec lo = Vec::Constant(N, -std::numeric_limits<double>::infinity());
    Vec hi = Vec::Constant(N, std::numeric_limits<double>::infinity());
    lo.tail(R).setZero();
    so.set = ConvexSet::box(lo, hi);
    Vec y0(N);
    y0.head(n) = x;
    y0.tail(R) = slacks(x, x);
    if (static_cast<int>(warm.x.size()) == R) {
      so.x_init = warm.x;
      so.u_init = warm.u;
    }
    ImproveReport sr = detail::solve_convex_keep(sub, y0, so, warm);
    Vec xn = sr.x.head(n);
    if (!xn.allFinite()) break;
    Vec s = slacks(xn, x);
    double sum = s.sum();
    double merit = obj.majorant(xn, x) + tau * sum;
    if (opts.observer) opts.observer(k, merit, tau);
    Assessment a;
    best.offer(xn, &a);
    r.phase_trace.emplace_back(a.violation, a.objective);
    x = xn;
    if (opts.stop_on_feasible && sum <= opts.slack_tol) {
      r.converged = true;
      ++k;
      break;
    }
    if (tau >= opts.tau_max && std::abs(prev_sum - sum) <= 1e-9 * (1.0 + sum)) {
      ++k;
      break;
    }
    prev_sum = sum;
    tau = std::min(opts.mu * tau, opts.tau_max);
  }
  r.iterations = k;
  r.last = x;
  r.x = best.x;
  r.assessment = best.a;
  return r;
}

}  // namespace qcqp
