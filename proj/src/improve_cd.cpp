#include "improve_common.hpp"

#include "qcqp/onevar.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace qcqp {

namespace {

/// A form with column access to P and a cached P x.
struct ColumnForm {
  const QuadraticForm* f = nullptr;
  std::vector<std::vector<std::pair<int, double>>> col;  // col[j] = (i, P_ij) over the full symmetric P
  Vec Px;
  double value = 0.0;

  ColumnForm(const QuadraticForm& form, int n) : f(&form), col(n) {
    for (const auto& t : form.P()) {
      col[t.col].emplace_back(t.row, t.value);
      if (t.row != t.col) col[t.row].emplace_back(t.col, t.value);
    }
  }
  bool touches(int j) const { return !col[j].empty() || f->q()[j] != 0.0; }
  double diag(int j) const {
    for (const auto& [i, v] : col[j])
      if (i == j) return v;
    return 0.0;
  }
  /// f(x + d e_j) - f(x) = d * lin(j) + d^2 * diag(j)
  double lin(int j) const { return 2.0 * Px[j] + f->q()[j]; }
  OneVarQuad restrict(int j) const { return {diag(j), lin(j), value}; }
  void shift(int j, double d) {
    for (const auto& [i, v] : col[j]) Px[i] += d * v;
  }
  void sync(const Vec& x) {
    Px = f->apply(x);
    value = f->evaluate(x);
  }
};

double viol_of(Sense s, double v) { return s == Sense::EqZero ? std::abs(v) : std::max(v, 0.0); }

class CoordinateDescent {
 public:
  CoordinateDescent(const Problem& p, const Vec& x0, const CdOptions& opts)
      : p_(p), opts_(opts), x_(x0), obj_(p.objective, p.n) {
    cons_.reserve(p.m());
    for (const auto& c : p.constraints) cons_.emplace_back(c.f, p.n);
    dep_.resize(p.n);
    for (int i = 0; i < p.m(); ++i)
      for (int j = 0; j < p.n; ++j)
        if (cons_[i].touches(j)) dep_[j].push_back(i);
    viol_.resize(p.m());
    sync();
  }

  ImproveReport run(const Vec& x0) {
    detail::Stopwatch clock;
    detail::BestPoint best(p_, x0);
    ImproveReport r;
    r.method = "cd";
    bool phase_two = max_viol() <= opts_.eq_tol;
    int sweeps = 0;
    while (sweeps < opts_.max_sweeps && clock.seconds() < opts_.time_limit) {
      ++sweeps;
      double v_before = max_viol();
      int moves = 0;
      for (int j = 0; j < p_.n; ++j) {
        if (!phase_two) {
          moves += phase_one_step(j);
          if (max_viol() <= opts_.eq_tol) phase_two = true;
        } else {
          moves += phase_two_step(j);
        }
      }
      sync();
      Assessment a;
      best.offer(x_, &a);
      r.phase_trace.emplace_back(a.violation, a.objective);
      if (!phase_two) {
        if (max_viol() <= opts_.eq_tol) {
          phase_two = true;
        } else if (v_before - max_viol() < opts_.stall_tol) {
          break;  // Phase I stalled
        }
      } else if (moves == 0) {
        r.converged = true;
        break;
      }
    }
    r.iterations = sweeps;
    r.last = x_;
    r.x = best.x;
    r.assessment = best.a;
    return r;
  }

 private:
  void sync() {
    obj_.sync(x_);
    for (int i = 0; i < p_.m(); ++i) {
      cons_[i].sync(x_);
      viol_[i] = viol_of(p_.constraints[i].sense, cons_[i].value);
    }
  }
  double max_viol() const { return viol_.size() ? viol_.maxCoeff() : 0.0; }

  /// {d : every constraint touching j stays within s} (equalities as |f| <= s).
  IntervalSet level_set(int j, double s) const {
    IntervalSet set = IntervalSet::everything();
    for (int i : dep_[j]) {
      OneVarQuad c = cons_[i].restrict(j);
      set = intersect(set, constraint_solution_set(c.p, c.q, c.r - s));
      if (p_.constraints[i].sense == Sense::EqZero) set = intersect(set, constraint_solution_set(-c.p, -c.q, -c.r - s));
      if (set.empty()) break;
    }
    return set;
  }

  /// Largest violation over the constraints touching j after x_j += d, evaluated exactly.
  double trial(int j, double d, std::vector<double>& values) {
    const double old = x_[j];
    x_[j] = old + d;
    values.resize(dep_[j].size());
    double worst = 0.0;
    for (size_t k = 0; k < dep_[j].size(); ++k) {
      int i = dep_[j][k];
      values[k] = p_.constraints[i].f.evaluate(x_);
      worst = std::max(worst, viol_of(p_.constraints[i].sense, values[k]));
    }
    x_[j] = old;
    return worst;
  }

  void commit(int j, double d, const std::vector<double>& values) {
    const double step = (x_[j] + d) - x_[j];
    obj_.value += step * (obj_.lin(j) + step * obj_.diag(j));
    obj_.shift(j, step);
    for (int i : dep_[j]) cons_[i].shift(j, step);
    x_[j] += d;
    for (size_t k = 0; k < dep_[j].size(); ++k) {
      int i = dep_[j][k];
      cons_[i].value = values[k];
      viol_[i] = viol_of(p_.constraints[i].sense, values[k]);
    }
  }

  /// Exact violation after x_j += d, after moving x_j + d by up to a few ulps
  /// when that lowers it. Rounding in the step otherwise leaves residuals of
  /// order eps on constraints such as x_j^2 = 1.
  double polish(int j, double& d, std::vector<double>& values) {
    double w = trial(j, d, values);
    if (w == 0.0) return w;
    const double y = x_[j] + d;
    double best_d = d;
    std::vector<double> scratch;
    for (double dir : {-1.0, 1.0}) {
      double yy = y;
      for (int k = 0; k < 4; ++k) {
        yy = std::nextafter(yy, dir * std::numeric_limits<double>::infinity());
        const double dd = yy - x_[j];
        if (x_[j] + dd != yy) continue;
        const double ww = trial(j, dd, scratch);
        if (ww < w) {
          w = ww;
          best_d = dd;
          values = scratch;
        }
      }
    }
    d = best_d;
    return w;
  }

  /// Tries d, then points moved toward the interior of the piece of `set` holding d,
  /// until the exact violation over the constraints touching j is at most `limit`
  /// (strictly below it when `strict`). Returns the accepted step, if any.
  std::optional<double> place(int j, double d, const IntervalSet& set, double limit, bool strict,
                              std::vector<double>& values) {
    auto fits = [&](double& dd) {
      double w = polish(j, dd, values);
      return strict ? w < limit : w <= limit;
    };
    if (fits(d)) return d;
    Interval piece{d, d};
    for (const auto& iv : set.parts())
      if (iv.lo <= d && d <= iv.hi) piece = iv;
    double target;
    if (std::isfinite(piece.lo) && std::isfinite(piece.hi))
      target = 0.5 * (piece.lo + piece.hi);
    else if (std::isfinite(piece.lo))
      target = d == piece.lo ? d + 1.0 : piece.lo;
    else if (std::isfinite(piece.hi))
      target = d == piece.hi ? d - 1.0 : piece.hi;
    else
      return std::nullopt;
    if (target == d) return std::nullopt;
    const double room = std::abs(target - d);
    const double unit = 4.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(d), std::abs(x_[j]), 1.0});
    for (int k = 0; k < 60; ++k) {
      double step = std::min(unit * std::ldexp(1.0, k), room);
      double dd = d + (target > d ? step : -step);
      if (fits(dd)) return dd;
      if (step == room) break;
    }
    return std::nullopt;
  }

  int phase_one_step(int j) {
    if (dep_[j].empty()) return 0;
    double cur = 0.0;
    for (int i : dep_[j]) cur = std::max(cur, viol_[i]);
    if (cur == 0.0) return 0;
    IntervalSet set = level_set(j, 0.0);
    if (set.empty()) {
      double lo = 0.0, hi = cur;
      set = level_set(j, hi);
      if (set.empty()) return 0;
      for (int it = 0; it < 200 && hi - lo > opts_.bisection_tol; ++it) {
        double mid = 0.5 * (lo + hi);
        IntervalSet m = level_set(j, mid);
        if (m.empty()) {
          lo = mid;
        } else {
          hi = mid;
          set = std::move(m);
        }
      }
    }
    double d = set.nearest(0.0);
    if (d == 0.0) return 0;
    std::vector<double> values;
    auto step = place(j, d, set, cur, true, values);
    if (!step) return 0;
    commit(j, *step, values);
    return 1;
  }

  int phase_two_step(int j) {
    const double vcur = max_viol();
    IntervalSet set = level_set(j, vcur);
    if (set.empty()) return 0;
    OneVarQuad o{obj_.diag(j), obj_.lin(j), 0.0};
    OneVarResult res = solve_onevar(o, set);
    if (res.status != OneVarStatus::Optimal || res.x == 0.0) return 0;
    const double gain_floor = 1e-14 * (1.0 + std::abs(obj_.value));
    if (!(res.value < -gain_floor)) return 0;
    std::vector<double> values;
    auto step = place(j, res.x, set, vcur, false, values);
    if (!step || !(o(*step) < -gain_floor)) return 0;
    commit(j, *step, values);
    return 1;
  }

  const Problem& p_;
  CdOptions opts_;
  Vec x_;
  ColumnForm obj_;
  std::vector<ColumnForm> cons_;
  std::vector<std::vector<int>> dep_;
  Vec viol_;
};

}  // namespace

ImproveReport improve_coordinate_descent(const Problem& p, const Vec& x0, const CdOptions& opts) {
  p.validate();
  if (x0.size() != p.n) throw std::invalid_argument("x0 has wrong length");
  if (!x0.allFinite()) {
    ImproveReport r;
    r.method = "cd";
    r.x = r.last = x0;
    r.assessment = assess(p, x0);
    return r;
  }
  CoordinateDescent cd(p, x0, opts);
  return cd.run(x0);
}

}  // namespace qcqp
