#include "qcqp/lp.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace qcqp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivTol = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr int kDegenerateLimit = 50;

inline double tol_at(double bound) { return kFeasTol * std::max(1.0, std::abs(bound)); }
}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

SimplexLp::SimplexLp(Vec c, Vec lower, Vec upper) : n_(static_cast<int>(c.size())), c_(std::move(c)) {
  if (lower.size() != n_ || upper.size() != n_) throw std::invalid_argument("bound vectors have wrong length");
  for (int j = 0; j < n_; ++j) {
    if (lower[j] > upper[j]) throw std::invalid_argument("lower bound exceeds upper bound");
    cols_.push_back({Kind::Structural, -1, lower[j], upper[j], c_[j], 1.0});
    stat_.push_back(Stat::Lower);
    x_.push_back(0.0);
    set_nonbasic_at_bound(j);
  }
}

void SimplexLp::set_nonbasic_at_bound(int j) {
  const Column& c = cols_[j];
  if (c.lo == c.hi) {
    stat_[j] = Stat::Fixed;
    x_[j] = c.lo;
  } else if (std::isfinite(c.lo)) {
    stat_[j] = Stat::Lower;
    x_[j] = c.lo;
  } else if (std::isfinite(c.hi)) {
    stat_[j] = Stat::Upper;
    x_[j] = c.hi;
  } else {
    stat_[j] = Stat::Free;
    x_[j] = 0.0;
  }
}

void SimplexLp::add_column(Kind kind, int row_id, double lo, double hi, double cost, double sign) {
  cols_.push_back({kind, row_id, lo, hi, cost, sign});
  stat_.push_back(Stat::Lower);
  x_.push_back(0.0);
  d_.push_back(0.0);
  for (auto& row : T_) row.push_back(0.0);
}

double SimplexLp::row_activity(const RowData& r) const {
  double s = 0.0;
  for (int j = 0; j < n_; ++j) s += r.a[j] * x_[j];
  return s;
}

int SimplexLp::add_row(const Vec& a, RowSense sense, double b) {
  if (a.size() != n_) throw std::invalid_argument("row has wrong length");
  if (!a.allFinite() || !std::isfinite(b)) throw std::invalid_argument("non-finite row data");
  const int id = next_row_id_++;
  rows_.push_back({id, a, sense, b});
  if (!solved_) return id;

  // Extend the tableau: the new slack is basic in a new row, expressed in the
  // current nonbasic variables by eliminating the basic structurals.
  add_column(Kind::Slack, id, 0.0, sense == RowSense::Eq ? 0.0 : kInf, 0.0, 1.0);
  const int s = static_cast<int>(cols_.size()) - 1;
  std::vector<double> row(cols_.size(), 0.0);
  for (int j = 0; j < n_; ++j) row[j] = a[j];
  row[s] = 1.0;
  for (size_t i = 0; i < basis_.size(); ++i) {
    int bj = basis_[i];
    if (bj >= n_) continue;
    double f = row[bj];
    if (f == 0.0) continue;
    const auto& Ti = T_[i];
    for (size_t j = 0; j < row.size(); ++j) row[j] -= f * Ti[j];
    row[bj] = 0.0;
  }
  T_.push_back(std::move(row));
  basis_.push_back(s);
  stat_[s] = Stat::Basic;
  x_[s] = b - row_activity(rows_.back());
  d_[s] = 0.0;
  return id;
}

std::vector<double> SimplexLp::phase_cost(bool phase1) const {
  std::vector<double> cost(cols_.size(), 0.0);
  for (size_t j = 0; j < cols_.size(); ++j) {
    if (phase1)
      cost[j] = cols_[j].kind == Kind::Artificial ? 1.0 : 0.0;
    else
      cost[j] = cols_[j].kind == Kind::Structural ? cols_[j].cost : 0.0;
  }
  return cost;
}

void SimplexLp::compute_reduced_costs(const std::vector<double>& cost) {
  cost_ = cost;
  d_ = cost;
  for (size_t i = 0; i < basis_.size(); ++i) {
    double cb = cost[basis_[i]];
    if (cb == 0.0) continue;
    const auto& Ti = T_[i];
    for (size_t j = 0; j < d_.size(); ++j) d_[j] -= cb * Ti[j];
  }
  for (int b : basis_) d_[b] = 0.0;
}

void SimplexLp::pivot(int r, int q) {
  auto& Tr = T_[r];
  const double p = Tr[q];
  const size_t C = Tr.size();
  for (size_t j = 0; j < C; ++j) Tr[j] /= p;
  Tr[q] = 1.0;
  for (size_t i = 0; i < T_.size(); ++i) {
    if (static_cast<int>(i) == r) continue;
    auto& Ti = T_[i];
    const double f = Ti[q];
    if (f == 0.0) continue;
    for (size_t j = 0; j < C; ++j) Ti[j] -= f * Tr[j];
    Ti[q] = 0.0;
  }
  const double f = d_[q];
  if (f != 0.0)
    for (size_t j = 0; j < C; ++j) d_[j] -= f * Tr[j];
  d_[q] = 0.0;
  basis_[r] = q;
  stat_[q] = Stat::Basic;
  ++total_pivots_;
  ++solve_pivots_;
  ++pivots_since_refactor_;
}

double SimplexLp::infeas(int i) const {
  const int b = basis_[i];
  const Column& c = cols_[b];
  if (x_[b] < c.lo - tol_at(c.lo)) return c.lo - x_[b];
  if (x_[b] > c.hi + tol_at(c.hi)) return x_[b] - c.hi;
  return 0.0;
}

bool SimplexLp::refactor() {
  const int R = static_cast<int>(basis_.size());
  const int C = static_cast<int>(cols_.size());
  pivots_since_refactor_ = 0;
  if (R == 0) {
    compute_reduced_costs(cost_.size() == cols_.size() ? cost_ : phase_cost(false));
    return true;
  }
  std::unordered_map<int, int> row_index;
  for (int k = 0; k < R; ++k) row_index[rows_[k].id] = k;
  Mat M = Mat::Zero(R, C);
  for (int k = 0; k < R; ++k) M.row(k).head(n_) = rows_[k].a.transpose();
  for (int j = n_; j < C; ++j) {
    const Column& c = cols_[j];
    if (c.kind == Kind::Dead) continue;
    auto it = row_index.find(c.row_id);
    if (it == row_index.end()) continue;
    M(it->second, j) = c.kind == Kind::Artificial ? c.sign : 1.0;
  }
  Mat B(R, R);
  for (int i = 0; i < R; ++i) B.col(i) = M.col(basis_[i]);
  Eigen::PartialPivLU<Mat> lu(B);
  const auto& U = lu.matrixLU();
  double umax = 0.0, umin = kInf;
  for (int i = 0; i < R; ++i) {
    umax = std::max(umax, std::abs(U(i, i)));
    umin = std::min(umin, std::abs(U(i, i)));
  }
  if (!(umin > 1e-13 * std::max(1.0, umax))) return false;
  Mat Tm = lu.solve(M);
  Vec rhs(R);
  for (int k = 0; k < R; ++k) rhs[k] = rows_[k].b;
  for (int j = 0; j < C; ++j)
    if (stat_[j] != Stat::Basic && x_[j] != 0.0) rhs -= M.col(j) * x_[j];
  Vec xb = lu.solve(rhs);
  for (int i = 0; i < R; ++i) {
    auto& Ti = T_[i];
    for (int j = 0; j < C; ++j) Ti[j] = Tm(i, j);
    for (int k = 0; k < R; ++k) Ti[basis_[k]] = k == i ? 1.0 : 0.0;
    x_[basis_[i]] = xb[i];
  }
  compute_reduced_costs(cost_.size() == cols_.size() ? cost_ : phase_cost(false));
  return true;
}

LpStatus SimplexLp::primal(bool phase1) {
  compute_reduced_costs(phase_cost(phase1));
  bool bland = false;
  bool cleaned = false;
  const int R = static_cast<int>(basis_.size());
  while (true) {
    if (solve_pivots_ > budget_) return LpStatus::NumericalFailure;
    const int C = static_cast<int>(cols_.size());
    // pricing
    int q = -1;
    double best = 0.0;
    for (int j = 0; j < C; ++j) {
      Stat s = stat_[j];
      if (s == Stat::Basic || s == Stat::Fixed) continue;
      if (cols_[j].kind == Kind::Dead) continue;
      double dj = d_[j];
      double score = 0.0;
      if (s == Stat::Lower && dj < -kDualTol) score = -dj;
      else if (s == Stat::Upper && dj > kDualTol) score = dj;
      else if (s == Stat::Free && std::abs(dj) > kDualTol) score = std::abs(dj);
      if (score > 0.0) {
        if (bland) { q = j; break; }
        if (score > best) { best = score; q = j; }
      }
    }
    if (q < 0) {
      if (!cleaned && pivots_since_refactor_ > 0) {
        cleaned = true;
        if (!refactor()) return LpStatus::NumericalFailure;
        continue;
      }
      return LpStatus::Optimal;
    }
    cleaned = false;
    const double dir = d_[q] < 0.0 ? 1.0 : -1.0;

    // Harris two-pass ratio test
    double theta_max = kInf;
    for (int i = 0; i < R; ++i) {
      double a = dir * T_[i][q];
      if (std::abs(a) <= kPivTol) continue;
      const Column& c = cols_[basis_[i]];
      double xb = x_[basis_[i]];
      if (a > 0.0 && std::isfinite(c.lo)) theta_max = std::min(theta_max, (xb - c.lo + tol_at(c.lo)) / a);
      if (a < 0.0 && std::isfinite(c.hi)) theta_max = std::min(theta_max, (c.hi - xb + tol_at(c.hi)) / (-a));
    }
    int r = -1;
    double rbest = 0.0, theta = kInf;
    for (int i = 0; i < R; ++i) {
      double a = dir * T_[i][q];
      if (std::abs(a) <= kPivTol) continue;
      const Column& c = cols_[basis_[i]];
      double xb = x_[basis_[i]];
      double ratio;
      if (a > 0.0 && std::isfinite(c.lo)) ratio = (xb - c.lo) / a;
      else if (a < 0.0 && std::isfinite(c.hi)) ratio = (c.hi - xb) / (-a);
      else continue;
      if (ratio > theta_max) continue;
      if (bland ? (r < 0 || basis_[i] < basis_[r]) : std::abs(a) > rbest) {
        rbest = std::abs(a);
        r = i;
        theta = std::max(ratio, 0.0);
      }
    }
    const Column& cq = cols_[q];
    double range = cq.hi - cq.lo;  // inf when either side is open
    if (r < 0 && !std::isfinite(range)) return phase1 ? LpStatus::NumericalFailure : LpStatus::Unbounded;

    if (std::isfinite(range) && (r < 0 || range <= theta)) {
      for (int i = 0; i < R; ++i) x_[basis_[i]] -= dir * T_[i][q] * range;
      if (stat_[q] == Stat::Lower) {
        stat_[q] = Stat::Upper;
        x_[q] = cq.hi;
      } else {
        stat_[q] = Stat::Lower;
        x_[q] = cq.lo;
      }
      degenerate_run_ = 0;
      bland = false;
      ++solve_pivots_;
      continue;
    }

    for (int i = 0; i < R; ++i) x_[basis_[i]] -= dir * T_[i][q] * theta;
    x_[q] += dir * theta;
    const int leaving = basis_[r];
    const Column& cl = cols_[leaving];
    double a = dir * T_[r][q];
    if (a > 0.0) {
      stat_[leaving] = cl.lo == cl.hi ? Stat::Fixed : Stat::Lower;
      x_[leaving] = cl.lo;
    } else {
      stat_[leaving] = cl.lo == cl.hi ? Stat::Fixed : Stat::Upper;
      x_[leaving] = cl.hi;
    }
    pivot(r, q);
    if (theta <= 1e-12) {
      if (++degenerate_run_ > kDegenerateLimit) bland = true;
    } else {
      degenerate_run_ = 0;
      bland = false;
    }
    if (pivots_since_refactor_ > std::max(200, R)) {
      if (!refactor()) return LpStatus::NumericalFailure;
    }
  }
}

LpStatus SimplexLp::dual() {
  compute_reduced_costs(phase_cost(false));
  const int R = static_cast<int>(basis_.size());
  while (true) {
    if (solve_pivots_ > budget_) return LpStatus::NumericalFailure;
    int r = -1;
    double worst = 0.0;
    for (int i = 0; i < R; ++i) {
      double v = infeas(i);
      if (v > 0.0) {
        const Column& c = cols_[basis_[i]];
        double scale = std::max(1.0, std::abs(x_[basis_[i]] < c.lo ? c.lo : c.hi));
        v /= scale;
        if (v > worst) { worst = v; r = i; }
      }
    }
    if (r < 0) return LpStatus::Optimal;
    const int leaving = basis_[r];
    const Column& cl = cols_[leaving];
    const bool below = x_[leaving] < cl.lo;
    const double target = below ? cl.lo : cl.hi;
    const int C = static_cast<int>(cols_.size());
    const auto& Tr = T_[r];
    // Entering j moves by delta_j with basic change -Tr[j]*delta_j in the needed direction.
    auto eligible = [&](int j) -> bool {
      Stat s = stat_[j];
      if (s == Stat::Basic || s == Stat::Fixed || cols_[j].kind == Kind::Dead) return false;
      double t = Tr[j];
      if (std::abs(t) <= kPivTol) return false;
      double want = below ? -t : t;  // basic change per unit increase of x_j, signed toward target
      if (s == Stat::Lower) return want > 0.0;
      if (s == Stat::Upper) return want < 0.0;
      return true;
    };
    double theta_max = kInf;
    for (int j = 0; j < C; ++j) {
      if (!eligible(j)) continue;
      theta_max = std::min(theta_max, (std::abs(d_[j]) + kDualTol) / std::abs(Tr[j]));
    }
    if (!std::isfinite(theta_max)) return LpStatus::Infeasible;
    int q = -1;
    double best = 0.0;
    for (int j = 0; j < C; ++j) {
      if (!eligible(j)) continue;
      if (std::abs(d_[j]) / std::abs(Tr[j]) > theta_max) continue;
      if (std::abs(Tr[j]) > best) { best = std::abs(Tr[j]); q = j; }
    }
    const double delta = (target - x_[leaving]) / (-Tr[q]);
    for (int i = 0; i < R; ++i) x_[basis_[i]] -= T_[i][q] * delta;
    x_[q] += delta;
    x_[leaving] = target;
    stat_[leaving] = cl.lo == cl.hi ? Stat::Fixed : (below ? Stat::Lower : Stat::Upper);
    pivot(r, q);
    if (pivots_since_refactor_ > std::max(200, R)) {
      if (!refactor()) return LpStatus::NumericalFailure;
    }
  }
}

void SimplexLp::drive_out_artificials() {
  const int R = static_cast<int>(basis_.size());
  for (int i = 0; i < R; ++i) {
    if (cols_[basis_[i]].kind != Kind::Artificial) continue;
    int q = -1;
    double best = 1e-7;
    for (size_t j = 0; j < cols_.size(); ++j) {
      if (stat_[j] == Stat::Basic || cols_[j].kind == Kind::Artificial || cols_[j].kind == Kind::Dead) continue;
      if (stat_[j] == Stat::Fixed && cols_[j].kind != Kind::Slack) continue;
      if (std::abs(T_[i][j]) > best) { best = std::abs(T_[i][j]); q = static_cast<int>(j); }
    }
    if (q < 0) continue;  // redundant row, artificial stays basic at zero
    const int leaving = basis_[i];
    // degenerate pivot: artificial sits at ~0, entering keeps its value
    const double delta = -x_[leaving] / (-T_[i][q]);
    for (int k = 0; k < R; ++k) x_[basis_[k]] -= T_[k][q] * delta;
    x_[q] += delta;
    x_[leaving] = 0.0;
    stat_[leaving] = Stat::Fixed;
    pivot(i, q);
  }
  for (size_t j = 0; j < cols_.size(); ++j) {
    if (cols_[j].kind != Kind::Artificial) continue;
    cols_[j].lo = cols_[j].hi = 0.0;
    if (stat_[j] != Stat::Basic) {
      stat_[j] = Stat::Fixed;
      x_[j] = 0.0;
    }
  }
}

bool SimplexLp::dual_feasible(double tol) const {
  for (size_t j = 0; j < cols_.size(); ++j) {
    double dj = d_[j];
    switch (stat_[j]) {
      case Stat::Lower: if (dj < -tol) return false; break;
      case Stat::Upper: if (dj > tol) return false; break;
      case Stat::Free: if (std::abs(dj) > tol) return false; break;
      default: break;
    }
  }
  return true;
}

bool SimplexLp::primal_feasible(double tol) const {
  for (size_t i = 0; i < basis_.size(); ++i) {
    const Column& c = cols_[basis_[i]];
    double v = x_[basis_[i]];
    if (v < c.lo - tol * std::max(1.0, std::abs(c.lo)) || v > c.hi + tol * std::max(1.0, std::abs(c.hi))) return false;
  }
  return true;
}

LpStatus SimplexLp::solve_from_scratch() {
  // reset to structurals + one slack per row
  std::vector<Column> keep(cols_.begin(), cols_.begin() + n_);
  cols_ = keep;
  stat_.assign(n_, Stat::Lower);
  x_.assign(n_, 0.0);
  d_.assign(n_, 0.0);
  T_.clear();
  basis_.clear();
  dead_ = 0;
  for (int j = 0; j < n_; ++j) set_nonbasic_at_bound(j);
  const int R = static_cast<int>(rows_.size());
  std::vector<int> slack(R);
  for (int k = 0; k < R; ++k) {
    cols_.push_back({Kind::Slack, rows_[k].id, 0.0, rows_[k].sense == RowSense::Eq ? 0.0 : kInf, 0.0, 1.0});
    stat_.push_back(Stat::Lower);
    x_.push_back(0.0);
    d_.push_back(0.0);
    slack[k] = static_cast<int>(cols_.size()) - 1;
  }
  bool need_phase1 = false;
  std::vector<std::pair<int, double>> arts;  // row, sign
  for (int k = 0; k < R; ++k) {
    double s = rows_[k].b - row_activity(rows_[k]);
    const Column& sc = cols_[slack[k]];
    if (s >= sc.lo - tol_at(sc.lo) && s <= sc.hi + tol_at(sc.hi)) {
      basis_.push_back(slack[k]);
      stat_[slack[k]] = Stat::Basic;
      x_[slack[k]] = s;
    } else {
      set_nonbasic_at_bound(slack[k]);
      double resid = s - x_[slack[k]];
      arts.push_back({k, resid > 0.0 ? 1.0 : -1.0});
      basis_.push_back(-1);
      need_phase1 = true;
    }
  }
  for (auto [k, sign] : arts) {
    cols_.push_back({Kind::Artificial, rows_[k].id, 0.0, kInf, 0.0, sign});
    stat_.push_back(Stat::Basic);
    double resid = rows_[k].b - row_activity(rows_[k]) - x_[slack[k]];
    x_.push_back(resid / sign);
    d_.push_back(0.0);
    basis_[k] = static_cast<int>(cols_.size()) - 1;
  }
  const int C = static_cast<int>(cols_.size());
  T_.assign(R, std::vector<double>(C, 0.0));
  for (int k = 0; k < R; ++k) {
    auto& row = T_[k];
    const int b = basis_[k];
    const double scale = cols_[b].kind == Kind::Artificial ? 1.0 / cols_[b].sign : 1.0;
    for (int j = 0; j < n_; ++j) row[j] = rows_[k].a[j] * scale;
    row[slack[k]] = scale;
    row[b] = 1.0;
  }
  solved_ = true;
  optimal_ = false;
  cost_.clear();
  if (need_phase1) {
    LpStatus st = primal(true);
    if (st != LpStatus::Optimal) return LpStatus::NumericalFailure;
    double infeasibility = 0.0;
    for (int j = 0; j < C; ++j)
      if (cols_[j].kind == Kind::Artificial) infeasibility = std::max(infeasibility, x_[j]);
    double bscale = 1.0;
    for (const auto& r : rows_) bscale = std::max(bscale, std::abs(r.b));
    if (infeasibility > 1e-8 * bscale) return LpStatus::Infeasible;
    drive_out_artificials();
  }
  return primal(false);
}

LpStatus SimplexLp::finish() {
  // certify: fresh factorization, then primal and dual feasibility
  for (int attempt = 0; attempt < 5; ++attempt) {
    cost_ = phase_cost(false);
    if (!refactor()) return LpStatus::NumericalFailure;
    double cscale = std::max(1.0, c_.size() ? c_.cwiseAbs().maxCoeff() : 0.0);
    bool pf = primal_feasible(1e-7);
    bool df = dual_feasible(1e-7 * cscale);
    if (pf && df) return LpStatus::Optimal;
    LpStatus st = pf ? primal(false) : (df ? dual() : LpStatus::NumericalFailure);
    if (st != LpStatus::Optimal) return st;
  }
  return LpStatus::NumericalFailure;
}

LpStatus SimplexLp::solve() {
  budget_ = max_pivots >= 0 ? max_pivots : 50 * (static_cast<int>(rows_.size()) + n_ + 1);
  solve_pivots_ = 0;
  LpStatus st;
  if (solved_ && optimal_) {
    st = dual();
    if (st == LpStatus::Optimal) st = primal(false);
    if (st == LpStatus::NumericalFailure) {
      solve_pivots_ = 0;
      st = solve_from_scratch();
    }
  } else {
    st = solve_from_scratch();
  }
  if (st == LpStatus::Optimal) st = finish();
  optimal_ = st == LpStatus::Optimal;
  if (dead_ > 64) compact();
  return st;
}

Vec SimplexLp::solution() const {
  Vec y(n_);
  for (int j = 0; j < n_; ++j) y[j] = x_[j];
  return y;
}

double SimplexLp::objective() const {
  double v = 0.0;
  for (int j = 0; j < n_; ++j) v += c_[j] * x_[j];
  return v;
}

std::vector<int> SimplexLp::row_ids() const {
  std::vector<int> ids;
  for (const auto& r : rows_) ids.push_back(r.id);
  return ids;
}

double SimplexLp::row_slack(int id) const {
  for (const auto& r : rows_)
    if (r.id == id) return r.b - row_activity(r);
  throw std::out_of_range("unknown row id");
}

void SimplexLp::remove_tableau_row(int i) {
  const int s = basis_[i];
  const int id = cols_[s].row_id;
  T_.erase(T_.begin() + i);
  basis_.erase(basis_.begin() + i);
  cols_[s].kind = Kind::Dead;
  cols_[s].lo = cols_[s].hi = 0.0;
  stat_[s] = Stat::Fixed;
  x_[s] = 0.0;
  d_[s] = 0.0;
  ++dead_;
  rows_.erase(std::find_if(rows_.begin(), rows_.end(), [&](const RowData& r) { return r.id == id; }));
}

void SimplexLp::compact() {
  const int C = static_cast<int>(cols_.size());
  std::vector<int> remap(C, -1);
  int k = 0;
  for (int j = 0; j < C; ++j)
    if (cols_[j].kind != Kind::Dead) remap[j] = k++;
  auto squeeze = [&](auto& v) {
    for (int j = 0; j < C; ++j)
      if (remap[j] >= 0) v[remap[j]] = v[j];
    v.resize(k);
  };
  squeeze(cols_);
  squeeze(stat_);
  squeeze(x_);
  squeeze(d_);
  if (cost_.size() == static_cast<size_t>(C)) squeeze(cost_);
  for (auto& row : T_) squeeze(row);
  for (auto& b : basis_) b = remap[b];
  dead_ = 0;
}

LpResult solve_lp(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.c.size());
  const int m = static_cast<int>(lp.A.rows());
  if (lp.A.cols() != n && m > 0) throw std::invalid_argument("A has wrong column count");
  if (lp.b.size() != m) throw std::invalid_argument("b has wrong length");
  if (!lp.sense.empty() && static_cast<int>(lp.sense.size()) != m) throw std::invalid_argument("sense has wrong length");
  Vec lo = lp.lower.size() ? lp.lower : Vec(Vec::Constant(n, -kInf));
  Vec hi = lp.upper.size() ? lp.upper : Vec(Vec::Constant(n, kInf));
  SimplexLp s(lp.c, lo, hi);
  for (int i = 0; i < m; ++i)
    s.add_row(lp.A.row(i).transpose(), lp.sense.empty() ? RowSense::Leq : lp.sense[i], lp.b[i]);
  LpResult out;
  out.status = s.solve();
  out.pivots = s.pivots();
  if (out.status == LpStatus::Optimal) {
    out.y = s.solution();
    out.value = s.objective();
  }
  return out;
}

}  // namespace qcqp
