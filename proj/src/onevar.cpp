#include "qcqp/onevar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcqp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAffineTol = 1e-12;
}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  for (const auto& p : parts)
    if (std::isnan(p.lo) || std::isnan(p.hi)) throw std::invalid_argument("NaN interval endpoint");
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const Interval& p) { return p.lo > p.hi; }), parts.end());
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& p : parts) {
    if (!parts_.empty() && p.lo <= parts_.back().hi)
      parts_.back().hi = std::max(parts_.back().hi, p.hi);
    else
      parts_.push_back(p);
  }
}

IntervalSet IntervalSet::everything() { return IntervalSet({{-kInf, kInf}}); }

bool IntervalSet::contains(double t, double tol) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), t, [](double v, const Interval& p) { return v < p.lo; });
  if (it != parts_.end() && it->lo - tol <= t) return true;
  if (it == parts_.begin()) return false;
  --it;
  return t <= it->hi + tol;
}

double IntervalSet::nearest(double t) const {
  if (parts_.empty()) throw std::logic_error("nearest point of an empty set");
  double best = 0.0, dist = kInf;
  for (const auto& p : parts_) {
    double c = std::clamp(t, p.lo, p.hi);
    double d = std::abs(c - t);
    if (d < dist || (d == dist && c > best)) {
      dist = d;
      best = c;
    }
  }
  return best;
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  const auto& A = a.parts();
  const auto& B = b.parts();
  size_t i = 0, j = 0;
  while (i < A.size() && j < B.size()) {
    double lo = std::max(A[i].lo, B[j].lo);
    double hi = std::min(A[i].hi, B[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (A[i].hi < B[j].hi)
      ++i;
    else
      ++j;
  }
  return IntervalSet(std::move(out));
}

IntervalSet constraint_solution_set(double p, double q, double r) {
  if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(r)) throw std::invalid_argument("non-finite coefficient");
  if (std::abs(p) < kAffineTol) {
    if (q == 0.0) return r <= 0.0 ? IntervalSet::everything() : IntervalSet();
    double root = -r / q;
    return q > 0.0 ? IntervalSet({{-kInf, root}}) : IntervalSet({{root, kInf}});
  }
  double disc = q * q - 4.0 * p * r;
  if (disc < 0.0) return p > 0.0 ? IntervalSet() : IntervalSet::everything();
  // stable pair of roots: t = -(q + sign(q) sqrt(disc)) / 2, roots t/p and r/t
  double sq = std::sqrt(disc);
  double t = -0.5 * (q + (q >= 0.0 ? sq : -sq));
  double r1 = t / p;
  double r2 = t != 0.0 ? r / t : r1;
  double lo = std::min(r1, r2), hi = std::max(r1, r2);
  if (p > 0.0) return IntervalSet({{lo, hi}});
  return IntervalSet({{-kInf, lo}, {hi, kInf}});
}

OneVarResult solve_onevar(const OneVarQuad& obj, const IntervalSet& feasible) {
  OneVarResult res;
  if (feasible.empty()) return res;
  const bool flat = std::abs(obj.p) < kAffineTol;
  const double p = flat ? 0.0 : obj.p;
  auto f = [&](double x) { return (p * x + obj.q) * x + obj.r; };
  for (const auto& iv : feasible.parts()) {
    bool down = !std::isfinite(iv.lo), up = !std::isfinite(iv.hi);
    if (p < 0.0 && (down || up)) {
      res.status = OneVarStatus::Unbounded;
      return res;
    }
    if (p == 0.0 && ((down && obj.q > 0.0) || (up && obj.q < 0.0))) {
      res.status = OneVarStatus::Unbounded;
      return res;
    }
  }
  std::vector<double> cand;
  for (const auto& iv : feasible.parts()) {
    if (std::isfinite(iv.lo)) cand.push_back(iv.lo);
    if (std::isfinite(iv.hi)) cand.push_back(iv.hi);
  }
  if (p > 0.0) {
    double v = -obj.q / (2.0 * p);
    if (feasible.contains(v)) cand.push_back(v);
  }
  if (cand.empty()) cand.push_back(feasible.nearest(0.0));  // constant objective on an open set
  res.status = OneVarStatus::Optimal;
  res.x = cand[0];
  res.value = f(cand[0]);
  for (double c : cand) {
    double v = f(c);
    if (v < res.value) {
      res.value = v;
      res.x = c;
    }
  }
  res.value = obj(res.x);
  return res;
}

OneVarResult solve_onevar(const OneVarQuad& obj, const std::vector<OneVarQuad>& constraints) {
  IntervalSet s = IntervalSet::everything();
  for (const auto& c : constraints) {
    s = intersect(s, constraint_solution_set(c.p, c.q, c.r));
    if (s.empty()) break;
  }
  return solve_onevar(obj, s);
}

}  // namespace qcqp
