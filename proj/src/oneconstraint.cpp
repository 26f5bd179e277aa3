#include "qcqp/oneconstraint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcqp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSingular = 1e-10;  // |1 + t lam_i| below this counts as a singular pencil
constexpr int kMaxBisect = 200;

struct Secular {
  const Vec& lam;
  const Vec& a;
  const Vec& b;
  double c;

  // w(t); indices in `limit` use the finite limit -b_i / (2 lam_i) of the singular pencil
  void w_at(double t, Vec& w, const std::vector<char>* limit = nullptr) const {
    const int n = static_cast<int>(lam.size());
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      if (limit && (*limit)[i])
        w[i] = -b[i] / (2.0 * lam[i]);
      else
        w[i] = -(a[i] + t * b[i]) / (2.0 * (1.0 + t * lam[i]));
    }
  }
  double g(const Vec& w) const {
    double s = c;
    for (int i = 0; i < w.size(); ++i) s += (lam[i] * w[i] + b[i]) * w[i];
    return s;
  }
  double phi(double t, Vec& w) const {
    w_at(t, w);
    return g(w);
  }
  double dphi(double t, const Vec& w) const {
    double s = 0.0;
    for (int i = 0; i < w.size(); ++i) {
      double u = 2.0 * lam[i] * w[i] + b[i];
      s -= u * u / (2.0 * (1.0 + t * lam[i]));
    }
    return s;
  }
};

}  // namespace

SecularSolution solve_secular(const SecularModel& m, double t_min, bool inequality) {
  const int n = static_cast<int>(m.lam.size());
  if (m.a.size() != n || m.b.size() != n) throw std::invalid_argument("secular model size mismatch");
  Vec lam = m.lam;
  double lmax = n ? lam.cwiseAbs().maxCoeff() : 0.0;
  for (int i = 0; i < n; ++i)
    if (std::abs(lam[i]) <= 1e-13 * lmax) lam[i] = 0.0;
  double bmax = n ? m.b.cwiseAbs().maxCoeff() : 0.0;

  bool has_pos = false, has_neg = false, affine = false;
  double min_g = m.c, max_g = m.c;  // extremes of g when the sign of lam is uniform
  double L = -kInf, U = kInf;
  int jL = -1, jU = -1;
  for (int i = 0; i < n; ++i) {
    if (lam[i] > 0.0) {
      has_pos = true;
      min_g -= m.b[i] * m.b[i] / (4.0 * lam[i]);
      double e = -1.0 / lam[i];
      if (e > L) { L = e; jL = i; }
    } else if (lam[i] < 0.0) {
      has_neg = true;
      max_g -= m.b[i] * m.b[i] / (4.0 * lam[i]);
      double e = -1.0 / lam[i];
      if (e < U) { U = e; jU = i; }
    } else if (std::abs(m.b[i]) > 1e-14 * (1.0 + bmax)) {
      affine = true;
    }
  }
  const double gtol = 1e-12 * (1.0 + std::abs(m.c) + bmax * bmax / std::max(lmax, 1e-300));
  bool nonempty;
  if (inequality)
    nonempty = has_neg || affine || min_g <= gtol;
  else
    nonempty = (has_pos && has_neg) || affine || (has_pos ? min_g <= gtol : (has_neg ? max_g >= -gtol : std::abs(m.c) <= gtol));
  if (!nonempty) throw EmptyConstraintSet("constraint set is empty");

  Secular s{lam, m.a, m.b, m.c};
  SecularSolution out;
  Vec w;

  if (!has_pos && !has_neg) {
    // affine: g(w(t)) = c - a'b/2 - t ||b||^2 / 2 is linear in t
    const double bb = m.b.squaredNorm();
    double t = (m.c - 0.5 * m.a.dot(m.b)) / (0.5 * bb);
    if (inequality) t = std::max(t, t_min);
    s.w_at(t, w);
    out.w = w;
    out.t = t;
    return out;
  }

  auto boundary_solution = [&](double tb) {
    std::vector<char> J(n, 0);
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (lam[i] != 0.0 && std::abs(1.0 + tb * lam[i]) < kSingular) {
        J[i] = 1;
        if (first < 0) first = i;
      }
    if (first < 0) first = tb == U ? jU : jL;
    J[first] = 1;
    s.w_at(tb, w, &J);
    double gb = s.g(w);
    double alpha2 = -gb / lam[first];
    w[first] += std::sqrt(std::max(0.0, alpha2));
    out.w = w;
    out.t = tb;
    out.boundary = true;
    return out;
  };

  double left = L;
  bool left_is_pencil = true;
  if (inequality && t_min > L) {
    left = t_min;
    left_is_pencil = false;
    if (t_min >= U) throw NumericalFailure("multiplier domain is empty");
    if (s.phi(t_min, w) <= 0.0) {
      out.w = w;
      out.t = t_min;
      return out;
    }
  }

  // lower bracket point: phi > 0
  double lo;
  if (!left_is_pencil) {
    lo = left;
  } else if (std::isfinite(left)) {
    lo = left + kSingular / lam[jL];
    if (lo >= U || s.phi(lo, w) <= 0.0) return boundary_solution(L);
  } else {
    double anchor = std::isfinite(U) ? std::min(0.0, U - 1.0) : 0.0;
    double step = 1.0;
    lo = anchor;
    int k = 0;
    while (s.phi(lo, w) <= 0.0) {
      lo = anchor - step;
      step *= 2.0;
      if (++k > 2100) throw NumericalFailure("cannot bracket the multiplier from below");
    }
  }
  // upper bracket point: phi < 0
  double hi;
  if (std::isfinite(U)) {
    hi = U + kSingular / lam[jU];  // lam[jU] < 0 so this is U - 1e-10 / |lam|
    if (hi <= lo || s.phi(hi, w) >= 0.0) return boundary_solution(U);
  } else {
    double step = 1.0;
    hi = std::max(lo, 0.0) + step;
    int k = 0;
    while (s.phi(hi, w) >= 0.0) {
      step *= 2.0;
      hi = std::max(lo, 0.0) + step;
      if (++k > 2100) throw NumericalFailure("cannot bracket the multiplier from above");
    }
  }

  int it = 0;
  while (it < kMaxBisect && hi - lo > 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)})) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (s.phi(mid, w) > 0.0)
      lo = mid;
    else
      hi = mid;
    ++it;
  }
  // Newton polish inside the final bracket
  double wl, wh;
  {
    Vec tmp;
    wl = s.phi(lo, tmp);
    wh = s.phi(hi, tmp);
  }
  double t = std::abs(wl) < std::abs(wh) ? lo : hi;
  double ft = s.phi(t, w);
  for (int k = 0; k < 8 && ft != 0.0; ++k) {
    double d = s.dphi(t, w);
    if (!(d < 0.0)) break;
    double tn = t - ft / d;
    if (!(tn >= std::min(lo, hi) - 1e-12 * std::max(1.0, std::abs(t)) && tn <= std::max(lo, hi) + 1e-12 * std::max(1.0, std::abs(t))))
      break;
    Vec wn;
    double fn = s.phi(tn, wn);
    if (!(std::abs(fn) < std::abs(ft))) break;
    t = tn;
    ft = fn;
    w = wn;
    ++it;
  }
  s.w_at(t, w);
  out.w = w;
  out.t = t;
  out.iterations = it;
  return out;
}

Projector::Projector(const QuadraticForm& f) : f_(f) {
  const int n = f.dim();
  std::vector<char> inP(n, 0);
  for (const auto& t : f.P()) inP[t.row] = inP[t.col] = 1;
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i)
    if (inP[i]) {
      pos[i] = static_cast<int>(rot_.size());
      rot_.push_back(i);
    } else if (f.q()[i] != 0.0) {
      free_.push_back(i);
    }
  const int k = static_cast<int>(rot_.size());
  Mat Pk = Mat::Zero(k, k);
  for (const auto& t : f.P()) {
    Pk(pos[t.row], pos[t.col]) = t.value;
    Pk(pos[t.col], pos[t.row]) = t.value;
  }
  SymEigen e = sym_eigen(Pk);
  lam_ = e.values;
  Q_ = e.vectors;
}

Vec Projector::project_eq_shifted(const Vec& z, double shift, double* multiplier) const {
  const int n = f_.dim();
  if (z.size() != n) throw std::invalid_argument("point has wrong dimension");
  const int k = static_cast<int>(rot_.size());
  const int nf = static_cast<int>(free_.size());
  SecularModel m;
  m.lam = Vec::Zero(k + nf);
  m.a.resize(k + nf);
  m.b.resize(k + nf);
  m.c = f_.r() + shift;
  Vec zs(k), qs(k);
  for (int i = 0; i < k; ++i) {
    zs[i] = z[rot_[i]];
    qs[i] = f_.q()[rot_[i]];
  }
  if (k) {
    m.lam.head(k) = lam_;
    m.a.head(k) = -2.0 * (Q_.transpose() * zs);
    m.b.head(k) = Q_.transpose() * qs;
  }
  for (int i = 0; i < nf; ++i) {
    m.a[k + i] = -2.0 * z[free_[i]];
    m.b[k + i] = f_.q()[free_[i]];
  }
  if (k + nf == 0) {
    if (m.c == 0.0) return z;
    throw EmptyConstraintSet("constant nonzero constraint");
  }
  SecularSolution sol = solve_secular(m, -kInf, false);
  Vec x = z;
  if (k) {
    Vec xs = Q_ * sol.w.head(k);
    for (int i = 0; i < k; ++i) x[rot_[i]] = xs[i];
  }
  for (int i = 0; i < nf; ++i) x[free_[i]] = sol.w[k + i];
  if (multiplier) *multiplier = sol.t;
  return x;
}

Vec Projector::project_eq(const Vec& z, double* multiplier) const { return project_eq_shifted(z, 0.0, multiplier); }

Vec Projector::project_ineq(const Vec& z, double* multiplier) const {
  if (f_.evaluate(z) <= 0.0) {
    if (multiplier) *multiplier = 0.0;
    return z;
  }
  return project_eq(z, multiplier);
}

Vec project_eq(const QuadraticForm& f, const Vec& z) { return Projector(f).project_eq(z); }
Vec project_ineq(const QuadraticForm& f, const Vec& z) { return Projector(f).project_ineq(z); }

Vec solve_interval(const QuadraticForm& f, double l, double u, const Vec& z) {
  if (l > u) throw EmptyConstraintSet("interval has l > u");
  double fz = f.evaluate(z);
  if (fz >= l && fz <= u) return z;
  Projector pr(f);
  // the <= u and >= l pieces; the violated side determines the nearest feasible point
  std::optional<Vec> best;
  double best_d = kInf;
  auto consider = [&](double shift) {
    try {
      Vec x = pr.project_eq_shifted(z, shift);
      double d = (x - z).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = x;
      }
    } catch (const EmptyConstraintSet&) {
    }
  };
  if (std::isfinite(u) && fz > u) consider(-u);
  if (std::isfinite(l) && fz < l) consider(-l);
  if (!best) throw EmptyConstraintSet("interval constraint set is empty");
  return *best;
}

double kkt_residual(const QuadraticForm& f, const Vec& z, const Vec& x, double nu, Sense sense) {
  double stat = (2.0 * (x - z) + nu * f.gradient(x)).norm();
  double fx = f.evaluate(x);
  double cons = sense == Sense::EqZero ? std::abs(fx) : std::max(0.0, fx);
  if (sense == Sense::LeqZero) cons = std::max({cons, std::max(0.0, -nu), std::abs(nu * fx)});
  return std::max(stat, cons);
}

ProjectionResult project(const QuadraticForm& f, const Vec& z, Sense sense) {
  Projector pr(f);
  ProjectionResult r;
  r.x = sense == Sense::EqZero ? pr.project_eq(z, &r.nu) : pr.project_ineq(z, &r.nu);
  r.kkt_residual = kkt_residual(f, z, r.x, r.nu, sense);
  return r;
}

namespace {

double min_eig(const Mat& A) { return sym_eigen(A).values[0]; }

// Find eta in the multiplier domain with P0 + eta P1 positive definite and
// reasonably conditioned. Returns NaN if none exists.
double interior_multiplier(const Mat& P0, const Mat& P1, bool nonneg) {
  const double s0 = P0.norm(), s1 = P1.norm();
  auto h = [&](double eta) { return min_eig(P0 + eta * P1); };
  auto good = [&](double eta, double hv) { return hv > 1e-3 * (s0 + std::abs(eta) * s1); };
  auto ok = [&](double eta, double hv) { return hv > 1e-10 * (s0 + std::abs(eta) * s1) && hv > 0.0; };
  double h0 = h(0.0);
  if (good(0.0, h0) || (s1 == 0.0 && ok(0.0, h0))) return 0.0;
  if (s1 == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double step = std::max(s0, 1e-300) / s1;
  // concave h: walk in the increasing direction until it turns down or becomes comfortably positive
  double dir = 1.0;
  double before = 0.0;
  if (!nonneg) {
    double hm = h(-step), hp = h(step);
    if (hm > hp) dir = -1.0;
    if (hm < h0 && hp < h0) before = -step;  // maximum lies in [-step, step]
  }
  double prev_eta = 0.0, prev_h = h0, eta = dir * step, hv = h(eta);
  if (before != 0.0) hv = -kInf;  // skip the walk
  int k = 0;
  while (hv >= prev_h && !good(eta, hv)) {
    before = prev_eta;
    prev_eta = eta;
    prev_h = hv;
    eta *= 2.0;
    hv = h(eta);
    if (++k > 200) break;
  }
  if (before == -step) eta = step;
  else if (good(eta, hv)) return eta;
  // maximize on [before, eta] by golden section
  double a = std::min(before, eta), b = std::max(before, eta);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = h(x1), f2 = h(x2);
  for (int i = 0; i < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a) + std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = h(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = h(x1);
    }
  }
  double best = f1 > f2 ? x1 : x2;
  double hb = std::max(f1, f2);
  if (nonneg && best < 0.0) best = 0.0, hb = h0;
  if (ok(best, hb)) return best;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

OneConstraintResult solve_one_constraint(const QuadraticForm& f0, const QuadraticForm& f1, Sense sense) {
  const int n = f0.dim();
  if (f1.dim() != n) throw std::invalid_argument("dimension mismatch");
  OneConstraintResult res;
  const bool ineq = sense == Sense::LeqZero;
  Mat P0 = f0.dense_P(), P1 = f1.dense_P();
  double eta_hat = interior_multiplier(P0, P1, ineq);
  if (std::isnan(eta_hat)) {
    res.status = OneConstraintStatus::DualUnbounded;
    res.value = res.dual_value = -kInf;
    return res;
  }
  Mat Ps = P0 + eta_hat * P1;
  Vec qs = f0.q() + eta_hat * f1.q();
  double rs = f0.r() + eta_hat * f1.r();
  Eigen::LLT<Mat> llt(Ps);
  if (llt.info() != Eigen::Success) {
    res.status = OneConstraintStatus::DualUnbounded;
    res.value = res.dual_value = -kInf;
    return res;
  }
  // whiten: x = L^{-T} Q w
  Mat Linv = llt.matrixL().solve(Mat::Identity(n, n));
  Mat M = Linv * P1 * Linv.transpose();
  M = 0.5 * (M + M.transpose()).eval();
  SymEigen e = sym_eigen(M);
  Mat T = Linv.transpose() * e.vectors;  // x = T w
  SecularModel m;
  m.lam = e.values;
  m.a = T.transpose() * qs;
  m.b = T.transpose() * f1.q();
  m.c = f1.r();
  SecularSolution sol;
  try {
    sol = solve_secular(m, ineq ? -eta_hat : -kInf, ineq);
  } catch (const EmptyConstraintSet&) {
    res.status = OneConstraintStatus::Infeasible;
    res.value = res.dual_value = kInf;
    return res;
  }
  res.x = T * sol.w;
  res.multiplier = eta_hat + sol.t;
  res.boundary = sol.boundary;
  res.value = f0.evaluate(res.x);
  // Lagrangian at the recovered point equals the dual value at the multiplier
  double lag = rs + sol.t * m.c;
  for (int i = 0; i < n; ++i)
    lag += (1.0 + sol.t * m.lam[i]) * sol.w[i] * sol.w[i] + (m.a[i] + sol.t * m.b[i]) * sol.w[i];
  res.dual_value = lag;
  return res;
}

OneConstraintResult solve_interval(const QuadraticForm& f0, const QuadraticForm& f1, double l, double u) {
  if (l > u) throw EmptyConstraintSet("interval has l > u");
  const int n = f0.dim();
  const QuadraticForm upper = f1.plus(QuadraticForm(n, {}, Vec::Zero(n), -u));       // f1 - u
  const QuadraticForm lower = f1.negated().plus(QuadraticForm(n, {}, Vec::Zero(n), l));  // l - f1
  auto inside = [&](const Vec& x) {
    double v = f1.evaluate(x);
    double tol = 1e-9 * (1.0 + std::abs(l) + std::abs(u));
    return v >= l - tol && v <= u + tol;
  };
  std::optional<OneConstraintResult> best;
  auto consider = [&](const OneConstraintResult& r) {
    if (r.status != OneConstraintStatus::Optimal || !inside(r.x)) return;
    if (!best || r.value < best->value) best = r;
  };
  if (std::isfinite(u)) consider(solve_one_constraint(f0, upper, Sense::LeqZero));
  if (std::isfinite(l)) consider(solve_one_constraint(f0, lower, Sense::LeqZero));
  if (!std::isfinite(l) && !std::isfinite(u)) {
    consider(solve_one_constraint(f0, QuadraticForm(n), Sense::LeqZero));
  }
  if (!best) {
    if (std::isfinite(u)) consider(solve_one_constraint(f0, upper, Sense::EqZero));
    if (std::isfinite(l)) consider(solve_one_constraint(f0, lower, Sense::EqZero));
  }
  if (!best) {
    OneConstraintResult r;
    r.status = OneConstraintStatus::Infeasible;
    r.value = r.dual_value = kInf;
    return r;
  }
  return *best;
}

}  // namespace qcqp
