#include "improve_common.hpp"

#include "qcqp/linalg.hpp"
#include "qcqp/oneconstraint.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace qcqp {

namespace {

enum class Selection { BestEver, Final };

/// z-update of the second phase: minimize f0(z) + rho * sum_i ||z - w_i||^2 over C,
/// with S = sum_i w_i.
class ZSolver {
 public:
  ZSolver(const Problem& p, const ConvexSet& set, double rho, int m) : p_(p), set_(set), rho_(rho), m_(m) {
    const int n = p.n;
    H_ = p.objective.dense_P();
    H_.diagonal().array() += m * rho;
    if (set.kind == ConvexSet::Kind::Box) {
      bounded_.assign(n, false);
      for (int j = 0; j < n; ++j) bounded_[j] = std::isfinite(set.lo[j]) || std::isfinite(set.hi[j]);
      decoupled_ = true;
      for (const auto& t : p.objective.P())
        if (t.row != t.col && (bounded_[t.row] || bounded_[t.col])) decoupled_ = false;
      if (decoupled_) {
        for (int j = 0; j < n; ++j)
          if (!bounded_[j]) free_.push_back(j);
        Mat Hf(free_.size(), free_.size());
        for (size_t a = 0; a < free_.size(); ++a)
          for (size_t b = 0; b < free_.size(); ++b) Hf(a, b) = H_(free_[a], free_[b]);
        if (!free_.empty()) factor_ = SpdFactor(Hf);
      }
    } else if (set.kind == ConvexSet::Kind::FullSpace) {
      factor_ = SpdFactor(H_);
    }
  }

  /// rhs of H z = -q0/2 + rho S
  Vec solve(const Vec& S, const Vec& z_prev) const {
    const int n = p_.n;
    Vec g = rho_ * S - 0.5 * p_.objective.q();
    switch (set_.kind) {
      case ConvexSet::Kind::FullSpace: return factor_->solve(g);
      case ConvexSet::Kind::Box: {
        if (decoupled_) {
          Vec z(n);
          if (!free_.empty()) {
            Vec gf(free_.size());
            for (size_t a = 0; a < free_.size(); ++a) gf[a] = g[free_[a]];
            Vec zf = factor_->solve(gf);
            for (size_t a = 0; a < free_.size(); ++a) z[free_[a]] = zf[a];
          }
          for (int j = 0; j < n; ++j)
            if (bounded_[j]) z[j] = std::clamp(g[j] / H_(j, j), set_.lo[j], set_.hi[j]);
          return z;
        }
        // projected Gauss-Seidel on z'Hz - 2 g'z
        Vec z = z_prev.cwiseMax(set_.lo).cwiseMin(set_.hi);
        for (int sweep = 0; sweep < 2000; ++sweep) {
          double change = 0.0;
          for (int j = 0; j < n; ++j) {
            double rest = g[j] - H_.row(j).dot(z) + H_(j, j) * z[j];
            double v = std::clamp(rest / H_(j, j), set_.lo[j], set_.hi[j]);
            change = std::max(change, std::abs(v - z[j]));
            z[j] = v;
          }
          if (change <= 1e-13 * (1.0 + z.lpNorm<Eigen::Infinity>())) break;
        }
        return z;
      }
      case ConvexSet::Kind::SingleQuadratic: {
        Mat P = p_.objective.dense_P();
        P.diagonal().array() += m_ * rho_;
        QuadraticForm obj = QuadraticForm::from_dense(P, p_.objective.q() - 2.0 * rho_ * S, 0.0);
        OneConstraintResult r = solve_one_constraint(obj, set_.form, Sense::LeqZero);
        if (r.status == OneConstraintStatus::Optimal) return r.x;
        return z_prev;
      }
    }
    return z_prev;
  }

 private:
  const Problem& p_;
  const ConvexSet& set_;
  double rho_;
  int m_;
  Mat H_;
  std::vector<bool> bounded_;
  std::vector<int> free_;
  bool decoupled_ = false;
  std::optional<SpdFactor> factor_;
};

Vec project_set(const ConvexSet& set, const Projector* pr, const Vec& w) {
  switch (set.kind) {
    case ConvexSet::Kind::FullSpace: return w;
    case ConvexSet::Kind::Box: return w.cwiseMax(set.lo).cwiseMin(set.hi);
    case ConvexSet::Kind::SingleQuadratic:
      try {
        return pr->project_ineq(w);
      } catch (const EmptyConstraintSet&) {
        return w;
      }
  }
  return w;
}

double default_rho(const Problem& p) {
  if (p.m() == 0) return 1.0;
  double lmin = form_min_eig(p.objective);
  return std::max(1.0, -lmin / p.m() * 1.1);
}

ImproveReport admm_core(const Problem& p, const Vec& x0, const AdmmOptions& opts, Selection selection,
                        detail::AdmmCopies* keep = nullptr) {
  p.validate();
  const int n = p.n, m = p.m();
  if (x0.size() != n) throw std::invalid_argument("x0 has wrong length");
  const ConvexSet& set = opts.set;
  if (set.kind == ConvexSet::Kind::Box && (set.lo.size() != n || set.hi.size() != n))
    throw std::invalid_argument("box bounds have wrong length");
  detail::Stopwatch clock;
  ImproveReport r;
  r.method = "admm";

  double rho = opts.rho > 0.0 ? opts.rho : default_rho(p);
  std::optional<ZSolver> zs;
  if (set.kind == ConvexSet::Kind::SingleQuadratic) {
    zs.emplace(p, set, rho, m);
  } else {
    // a user rho that leaves the z-update nonconvex is raised to the smallest safe value
    for (int attempt = 0; attempt < 60 && !zs; ++attempt) {
      try {
        zs.emplace(p, set, rho, m);
      } catch (const NotSPD&) {
        double lmin = form_min_eig(p.objective);
        rho = std::max(2.0 * rho, m > 0 ? -lmin / m * 1.1 : 1.0);
      }
    }
    if (!zs) throw NumericalFailure("z-update is not strictly convex");
  }
  std::optional<Projector> set_proj;
  if (set.kind == ConvexSet::Kind::SingleQuadratic) set_proj.emplace(set.form);

  std::vector<Projector> proj;
  proj.reserve(m);
  for (const auto& c : p.constraints) proj.emplace_back(c.f);

  Vec z = x0;
  std::vector<Vec> x(m), u(m);
  for (int i = 0; i < m; ++i) {
    x[i] = i < static_cast<int>(opts.x_init.size()) ? opts.x_init[i] : x0;
    u[i] = i < static_cast<int>(opts.u_init.size()) ? opts.u_init[i] : Vec(Vec::Zero(n));
  }

  detail::BestPoint best(p, x0);
  Vec final_z = x0;
  Assessment final_a = best.a;
  int phase = opts.two_phase && final_a.violation > opts.eps_feas ? 1 : 2;
  int k = 0;
  for (; k < opts.max_iter; ++k) {
    if (clock.seconds() > opts.time_limit) break;
    Vec z_prev = z;
    Vec S = Vec::Zero(n);
    for (int i = 0; i < m; ++i) S += x[i] - u[i];
    if (phase == 1)
      z = project_set(set, set_proj ? &*set_proj : nullptr, m > 0 ? Vec(S / m) : z);
    else
      z = zs->solve(S, z_prev);
    double primal = 0.0;
    for (int i = 0; i < m; ++i) {
      Vec w = z + u[i];
      try {
        x[i] = p.constraints[i].sense == Sense::EqZero ? proj[i].project_eq(w) : proj[i].project_ineq(w);
      } catch (const EmptyConstraintSet&) {
        x[i] = w;
      }
      u[i] += z - x[i];
      primal = std::max(primal, (z - x[i]).norm());
    }
    Assessment a;
    best.offer(z, &a);
    final_z = z;
    final_a = a;
    r.phase_trace.emplace_back(a.violation, a.objective);
    if (opts.observer) opts.observer(AdmmState{k, phase, &z, &x, &u});
    if (phase == 1) {
      if (a.violation <= opts.eps_feas) phase = 2;
      continue;
    }
    double dual = rho * std::sqrt(static_cast<double>(std::max(m, 1))) * (z - z_prev).norm();
    double scale = opts.tol * (1.0 + z.norm());
    if (m == 0 || (primal <= scale && dual <= scale)) {
      r.converged = true;
      ++k;
      break;
    }
  }
  r.iterations = k;
  r.last = final_z;
  if (keep) {
    keep->x = std::move(x);
    keep->u = std::move(u);
  }
  if (selection == Selection::BestEver && final_a.violation > 0.0 && final_a.violation <= opts.eps_feas &&
      best.a.violation == 0.0 && best.x != final_z) {
    // The last iterate is feasible only up to rounding; step toward the best feasible
    // point just far enough to be feasible exactly.
    const Vec toward = best.x - final_z;
    for (int e = 50; e >= 1; --e) {
      Assessment a;
      best.offer(final_z + std::ldexp(1.0, -e) * toward, &a);
      if (a.violation == 0.0) break;
    }
  }
  if (selection == Selection::BestEver) {
    r.x = best.x;
    r.assessment = best.a;
  } else {
    r.x = final_z;
    r.assessment = final_a;
  }
  return r;
}

}  // namespace

ImproveReport improve_admm(const Problem& p, const Vec& x0, const AdmmOptions& opts) {
  if (!x0.allFinite()) {
    ImproveReport r;
    r.method = "admm";
    r.x = r.last = x0;
    r.assessment = assess(p, x0);
    return r;
  }
  try {
    return admm_core(p, x0, opts, Selection::BestEver);
  } catch (const NumericalFailure&) {
    // no strictly convex z-update exists (m = 0 with a nonconvex objective)
    ImproveReport r;
    r.method = "admm";
    r.x = r.last = x0;
    r.assessment = assess(p, x0);
    return r;
  }
}

bool is_convex(const Problem& p, double tol) {
  auto psd = [&](const QuadraticForm& f) { return f.is_affine() || form_min_eig(f) >= -tol; };
  if (!psd(p.objective)) return false;
  for (const auto& c : p.constraints) {
    if (c.sense == Sense::EqZero ? !c.f.is_affine() : !psd(c.f)) return false;
  }
  return true;
}

namespace {

ImproveReport convex_run(const Problem& p, const Vec& x0, const AdmmOptions& opts, detail::AdmmCopies* keep) {
  if (!is_convex(p)) throw NotConvex("objective or a constraint is not convex");
  AdmmOptions o = opts;
  o.two_phase = false;
  ImproveReport r = admm_core(p, x0.allFinite() ? x0 : Vec(Vec::Zero(p.n)), o, Selection::Final, keep);
  r.method = "convex";
  return r;
}

}  // namespace

ImproveReport solve_convex(const Problem& p, const Vec& x0, const AdmmOptions& opts) {
  return convex_run(p, x0, opts, nullptr);
}

ImproveReport detail::solve_convex_keep(const Problem& p, const Vec& x0, const AdmmOptions& opts,
                                        detail::AdmmCopies& copies) {
  return convex_run(p, x0, opts, &copies);
}

}  // namespace qcqp
