#include "qcqp/relax.hpp"

#include "qcqp/linalg.hpp"
#include "qcqp/rng.hpp"

#include <chrono>
#include <cmath>
#include <unordered_map>

namespace qcqp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SpectralBound spectral_bound(const Problem& p, const Vec& lambda_in) {
  p.validate();
  const int m = p.m();
  Vec lambda = lambda_in.size() ? lambda_in : Vec(Vec::Ones(m));
  if (lambda.size() != m) throw std::invalid_argument("lambda has wrong length");
  QuadraticForm agg(p.n);
  bool all_eq = true;
  for (int i = 0; i < m; ++i) {
    if (!std::isfinite(lambda[i])) throw std::invalid_argument("non-finite multiplier");
    if (lambda[i] == 0.0) continue;
    if (p.constraints[i].sense == Sense::LeqZero) {
      if (lambda[i] < 0.0) throw std::invalid_argument("negative multiplier on an inequality");
      all_eq = false;
    }
    agg = agg.plus(p.constraints[i].f, lambda[i]);
  }
  SpectralBound out;
  out.lambda = lambda;
  OneConstraintResult r = solve_one_constraint(p.objective, agg, all_eq ? Sense::EqZero : Sense::LeqZero);
  out.status = r.status;
  switch (r.status) {
    case OneConstraintStatus::Optimal:
      out.bound = r.dual_value;
      out.x = r.x;
      out.eta = r.multiplier;
      break;
    case OneConstraintStatus::Infeasible: out.bound = kInf; break;
    case OneConstraintStatus::DualUnbounded: out.bound = -kInf; break;
  }
  return out;
}

namespace {

// Packed column-wise upper triangle of X followed by x.
struct LiftIndex {
  int n;
  int nx;
  explicit LiftIndex(int n_) : n(n_), nx(n_ * (n_ + 1) / 2) {}
  int X(int i, int j) const {
    if (i > j) std::swap(i, j);
    return j * (j + 1) / 2 + i;
  }
  int x(int i) const { return nx + i; }
  int size() const { return nx + n; }
};

// Row of the linear functional F(X, x) = <P, X> + q'x (constant r kept apart).
Vec lifted_row(const QuadraticForm& f, const LiftIndex& ix) {
  Vec a = Vec::Zero(ix.size());
  for (const auto& t : f.P()) a[ix.X(t.row, t.col)] += t.row == t.col ? t.value : 2.0 * t.value;
  for (int i = 0; i < ix.n; ++i) a[ix.x(i)] += f.q()[i];
  return a;
}

// -a'Za <= a_n^2 as a row over (X, x), scaled to unit max coefficient.
void cut_row(const Vec& a, const LiftIndex& ix, Vec& row, double& rhs) {
  const int n = ix.n;
  row.setZero(ix.size());
  for (int j = 0; j < n; ++j) {
    row[ix.X(j, j)] -= a[j] * a[j];
    for (int i = 0; i < j; ++i) row[ix.X(i, j)] -= 2.0 * a[i] * a[j];
    row[ix.x(j)] -= 2.0 * a[n] * a[j];
  }
  rhs = a[n] * a[n];
  double s = row.cwiseAbs().maxCoeff();
  if (s > 0.0) {
    row /= s;
    rhs /= s;
  }
}

Mat lifted_matrix(const Vec& y, const LiftIndex& ix) {
  const int n = ix.n;
  Mat Z(n + 1, n + 1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= j; ++i) Z(i, j) = Z(j, i) = y[ix.X(i, j)];
    Z(j, n) = Z(n, j) = y[ix.x(j)];
  }
  Z(n, n) = 1.0;
  return Z;
}

}  // namespace

CuttingPlaneResult sdr_bound_cutting_plane(const Problem& p, const CuttingPlaneOptions& opts) {
  p.validate();
  const auto start = std::chrono::steady_clock::now();
  const int n = p.n;
  const LiftIndex ix(n);
  const int N = ix.size();
  CuttingPlaneResult res;

  double qmax = 0.0;
  for (const auto& c : p.constraints) qmax = std::max(qmax, c.f.q().size() ? c.f.q().cwiseAbs().maxCoeff() : 0.0);
  const double B = opts.box > 0.0 ? opts.box : 10.0 * (1.0 + p.objective.q().cwiseAbs().maxCoeff() + qmax);
  const double B2 = B * B;
  res.box = B;
  const int max_cuts = opts.max_cuts > 0 ? opts.max_cuts : 50 * n;

  Vec c = lifted_row(p.objective, ix);

  // Rows a X_ii + b x_i + r <= 0 (or = 0) with a > 0 bound the i-th block of any PSD Z:
  // X_ii >= x_i^2 confines x_i to the roots of a t^2 + b t + r, then X_ii <= (-r - b x_i)/a
  // and |X_ij| <= sqrt(X_ii X_jj). These bounds hold on the whole relaxation, unlike the box.
  Vec xlo = Vec::Constant(n, -kInf), xhi = Vec::Constant(n, kInf), dhi = Vec::Constant(n, kInf);
  for (const auto& con : p.constraints) {
    const QuadraticForm& f = con.f;
    if (f.P().size() != 1 || f.P()[0].row != f.P()[0].col || f.P()[0].value <= 0.0) continue;
    const int i = f.P()[0].row;
    bool other = false;
    for (int j = 0; j < n; ++j)
      if (j != i && f.q()[j] != 0.0) other = true;
    if (other) continue;
    const double a = f.P()[0].value, b = f.q()[i], r0 = f.r();
    const double disc = b * b - 4.0 * a * r0;
    if (!(disc >= 0.0)) continue;  // the LP reports the infeasibility
    const double sq = std::sqrt(disc);
    const double t1 = (-b - sq) / (2.0 * a), t2 = (-b + sq) / (2.0 * a);
    xlo[i] = std::max(xlo[i], t1);
    xhi[i] = std::min(xhi[i], t2);
    dhi[i] = std::min(dhi[i], std::max((-r0 - b * t1) / a, (-r0 - b * t2) / a));
  }
  // implied bounds are widened slightly so rounding never cuts off a relaxation point
  auto widen = [](double v) { return v + 1e-9 * (1.0 + std::abs(v)); };
  std::vector<bool> artificial(N, false);
  auto make_bounds = [&](bool boxed, Vec& lo, Vec& hi) {
    lo.resize(N);
    hi.resize(N);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i <= j; ++i) {
        const int k = ix.X(i, j);
        double implied = i == j ? dhi[i] : std::sqrt(dhi[i] * dhi[j]);
        implied = std::isfinite(implied) ? widen(implied) : kInf;
        const bool use_box = boxed && B2 < implied;
        const double h = use_box ? B2 : implied;
        lo[k] = i == j ? 0.0 : -h;
        hi[k] = h;
        artificial[k] = use_box;
      }
      const int k = ix.x(j);
      double l = std::isfinite(xlo[j]) ? -widen(-xlo[j]) : -kInf;
      double h = std::isfinite(xhi[j]) ? widen(xhi[j]) : kInf;
      artificial[k] = false;
      if (boxed && -B > l) {
        l = -B;
        artificial[k] = true;
      }
      if (boxed && B < h) {
        h = B;
        artificial[k] = true;
      }
      lo[k] = l;
      hi[k] = std::max(l, h);
    }
  };
  Vec lo, hi;
  make_bounds(true, lo, hi);
  SimplexLp lp(c, lo, hi);

  std::vector<std::pair<Vec, double>> cut_data;  // every cut ever added, for the unboxed feasibility retry
  std::vector<std::tuple<Vec, RowSense, double>> base_rows;
  for (const auto& con : p.constraints) {
    Vec a = lifted_row(con.f, ix);
    double b = -con.f.r();
    double s = a.cwiseAbs().maxCoeff();
    if (s == 0.0) {
      bool ok = con.sense == Sense::EqZero ? b == 0.0 : b >= 0.0;
      if (!ok) {
        res.infeasible = true;
        res.valid = true;
        res.bound = kInf;
        res.lp_status = LpStatus::Infeasible;
        return res;
      }
      continue;
    }
    a /= s;
    b /= s;
    RowSense sense = con.sense == Sense::EqZero ? RowSense::Eq : RowSense::Leq;
    lp.add_row(a, sense, b);
    base_rows.emplace_back(a, sense, b);
  }
  std::unordered_map<int, int> age;  // cut row id -> consecutive solves with slack
  auto add_cut = [&](const Vec& a) {
    Vec row;
    double rhs;
    cut_row(a, ix, row, rhs);
    int id = lp.add_row(row, RowSense::Leq, rhs);
    age[id] = 0;
    cut_data.emplace_back(row, rhs);
  };

  if (opts.seed_spectral && p.m() > 0) {
    try {
      SpectralBound sb = spectral_bound(p);
      if (sb.status == OneConstraintStatus::Optimal && std::isfinite(sb.bound)) {
        QuadraticForm agg(n);
        for (const auto& con : p.constraints) agg = agg.plus(con.f);
        Mat S = homogeneous_matrix(p.objective.plus(agg, sb.eta));
        S(n, n) -= sb.bound;
        SymEigen e = sym_eigen(S);
        const double top = std::max(e.values.cwiseAbs().maxCoeff(), 1e-300);
        for (int k = 0; k <= n; ++k)
          if (e.values[k] > 1e-12 * top) add_cut(e.vectors.col(k));
      }
    } catch (const std::exception&) {
      // no seed cuts; the loop still runs from the plain LP
    }
  }

  Vec y;
  bool have_point = false;
  while (true) {
    LpStatus st = lp.solve();
    res.lp_status = st;
    ++res.iterations;
    if (st == LpStatus::Infeasible) {
      // retry without the safeguard box: infeasible there too is a certificate
      make_bounds(false, lo, hi);
      SimplexLp free_lp(c, lo, hi);
      for (const auto& [a, s, b] : base_rows) free_lp.add_row(a, s, b);
      for (const auto& [a, b] : cut_data) free_lp.add_row(a, RowSense::Leq, b);
      LpStatus fs = free_lp.solve();
      if (fs == LpStatus::Infeasible) {
        res.infeasible = true;
        res.valid = true;
        res.bound = kInf;
        res.trace.push_back(kInf);
      } else {
        res.valid = false;
      }
      return res;
    }
    if (st != LpStatus::Optimal) break;
    y = lp.solution();
    have_point = true;
    double value = lp.objective() + p.objective.r();
    res.bound = std::max(res.bound, value);
    res.trace.push_back(res.bound);

    Mat Z = lifted_matrix(y, ix);
    SymEigen e = sym_eigen(Z);
    res.min_eig = e.values[0];
    if (res.min_eig >= -opts.psd_tol) {
      res.converged = true;
      break;
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.cuts >= max_cuts || elapsed > opts.time_limit) break;

    // age bookkeeping and removal of long-inactive cuts
    if (opts.inactive_age > 0) {
      for (int id : lp.row_ids()) {
        auto it = age.find(id);
        if (it == age.end()) continue;
        it->second = lp.row_slack(id) > 1e-9 ? it->second + 1 : 0;
      }
      lp.drop_slack_rows(1e-9, [&](int id) {
        auto it = age.find(id);
        if (it == age.end() || it->second < opts.inactive_age) return true;
        age.erase(it);
        return false;
      });
    }

    int added = 0;
    for (int k = 0; k <= n && res.cuts < max_cuts; ++k) {
      if (e.values[k] >= -opts.psd_tol) break;
      add_cut(e.vectors.col(k));
      ++res.cuts;
      ++added;
      if (opts.cut_rule == CutRule::MinEigenvector) break;
    }
  }

  if (have_point) {
    res.X.resize(n, n);
    res.x.resize(n);
    Vec blo, bhi;
    make_bounds(true, blo, bhi);
    bool active = false;
    for (int k = 0; k < N; ++k) {
      if (!artificial[k]) continue;
      const double tol = 1e-9 * std::max(1.0, std::abs(bhi[k]));
      if (y[k] >= bhi[k] - tol || y[k] <= blo[k] + tol) active = true;
    }
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i <= j; ++i) res.X(i, j) = res.X(j, i) = y[ix.X(i, j)];
      res.x[j] = y[ix.x(j)];
    }
    res.valid = !active && res.lp_status == LpStatus::Optimal;
  }
  return res;
}

std::vector<Vec> sample_from_lifted(const Mat& X, const Vec& x, int count, std::uint64_t seed, double psd_tol,
                                    double* repair) {
  const int n = static_cast<int>(x.size());
  Mat S = X - x * x.transpose();
  S = 0.5 * (S + S.transpose()).eval();
  SymEigen e = sym_eigen(S);
  if (repair) *repair = n ? std::max(0.0, -e.values[0]) : 0.0;
  Vec sd = e.values.cwiseMax(0.0).cwiseSqrt();
  std::vector<Vec> out;
  out.reserve(count);
  const bool rank_one = n == 0 || e.values.maxCoeff() <= psd_tol;
  for (int k = 0; k < count; ++k) {
    if (rank_one) {
      out.push_back(x);
      continue;
    }
    Rng rng(seed + static_cast<std::uint64_t>(k));
    Vec xi(n);
    for (int i = 0; i < n; ++i) xi[i] = rng.normal();
    out.push_back(x + e.vectors * sd.cwiseProduct(xi));
  }
  return out;
}

Problem tighten(const Problem& p, int pair_budget) {
  Problem t = p;
  std::vector<int> aff;
  for (int i = 0; i < p.m(); ++i)
    if (p.constraints[i].sense == Sense::LeqZero && p.constraints[i].f.is_affine()) aff.push_back(i);
  int used = 0;
  for (size_t a = 0; a < aff.size() && used < pair_budget; ++a) {
    for (size_t b = a + 1; b < aff.size() && used < pair_budget; ++b) {
      const QuadraticForm& fi = p.constraints[aff[a]].f;
      const QuadraticForm& fj = p.constraints[aff[b]].f;
      // (qi'x + ri)(qj'x + rj) >= 0 since both factors are <= 0
      Mat P = 0.5 * (fi.q() * fj.q().transpose() + fj.q() * fi.q().transpose());
      Vec q = fj.r() * fi.q() + fi.r() * fj.q();
      double r = fi.r() * fj.r();
      t.constraints.push_back({QuadraticForm::from_dense(-P, -q, -r), Sense::LeqZero});
      ++used;
    }
  }
  return t;
}

}  // namespace qcqp
