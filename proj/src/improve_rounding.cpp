#include "improve_common.hpp"

#include "qcqp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcqp {

using detail::settle;

Vec round_sign(const Vec& x) {
  Vec z(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) z[i] = x[i] < 0.0 ? -1.0 : 1.0;
  return z;
}

namespace {

std::vector<int> descending_order(const Vec& x) {
  std::vector<int> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return x[a] > x[b]; });
  return idx;
}

}  // namespace

Vec round_balanced_sign(const Vec& x) {
  const auto n = x.size();
  if (n % 2 != 0) throw std::invalid_argument("balanced rounding needs an even dimension");
  std::vector<int> idx = descending_order(x);
  Vec z = -Vec::Ones(n);
  for (Eigen::Index k = 0; k < n / 2; ++k) z[idx[k]] = 1.0;
  return z;
}

Vec scale_to_cover(const Vec& x, const std::vector<Mat>& P) {
  if (P.empty()) throw std::invalid_argument("no forms to cover");
  double t = std::numeric_limits<double>::infinity();
  for (const Mat& Pi : P) t = std::min(t, x.dot(Pi * x));
  if (!(t > 0.0)) throw NotScalable("x lies in a direction some form does not cover");
  return x / std::sqrt(t);
}

Vec greedy_clique(const Vec& x, const Mat& adjacency) {
  const auto n = x.size();
  if (adjacency.rows() != n || adjacency.cols() != n) throw std::invalid_argument("adjacency has wrong size");
  std::vector<int> clique;
  Vec z = Vec::Zero(n);
  for (int k : descending_order(x)) {
    bool joins = std::all_of(clique.begin(), clique.end(), [&](int c) { return adjacency(k, c) != 0.0; });
    if (joins) {
      clique.push_back(k);
      z[k] = 1.0;
    }
  }
  return z;
}

ImproveReport improve_sign(const Problem& p, const Vec& x0) {
  ImproveReport r;
  r.method = "sign";
  r.iterations = 1;
  r.converged = true;
  r.last = round_sign(x0);
  settle(p, x0, r.last, r);
  return r;
}

ImproveReport improve_balanced_sign(const Problem& p, const Vec& x0) {
  ImproveReport r;
  r.method = "balanced";
  r.iterations = 1;
  r.converged = true;
  r.last = p.n % 2 == 0 ? round_balanced_sign(x0) : x0;
  settle(p, x0, r.last, r);
  return r;
}

ImproveReport improve_scale(const Problem& p, const Vec& x0) {
  ImproveReport r;
  r.method = "scale";
  r.iterations = 1;
  std::vector<Mat> forms;
  for (const auto& c : p.constraints) {
    const QuadraticForm& f = c.f;
    if (c.sense != Sense::LeqZero || f.r() <= 0.0 || f.is_affine() || !f.q().isZero(0.0)) continue;
    if (form_min_eig(f.negated()) < -1e-9 * f.r()) continue;
    forms.push_back(-f.dense_P() / f.r());
  }
  r.last = x0;
  if (!forms.empty()) {
    try {
      r.last = scale_to_cover(x0, forms);
      r.converged = true;
    } catch (const NotScalable&) {
    }
  }
  settle(p, x0, r.last, r);
  return r;
}

ImproveReport improve_clique(const Problem& p, const Vec& x0) {
  ImproveReport r;
  r.method = "clique";
  r.iterations = 1;
  r.converged = true;
  Mat A = Mat::Ones(p.n, p.n);
  for (const auto& c : p.constraints) {
    const QuadraticForm& f = c.f;
    if (c.sense != Sense::EqZero || f.P().size() != 1 || f.r() != 0.0 || !f.q().isZero(0.0)) continue;
    const Triplet& t = f.P().front();
    if (t.row == t.col) continue;
    A(t.row, t.col) = A(t.col, t.row) = 0.0;
  }
  r.last = greedy_clique(x0, A);
  settle(p, x0, r.last, r);
  return r;
}

const char* to_string(ImproveKind k) {
  switch (k) {
    case ImproveKind::Sign: return "sign";
    case ImproveKind::BalancedSign: return "balanced";
    case ImproveKind::Scale: return "scale";
    case ImproveKind::Clique: return "clique";
    case ImproveKind::CoordinateDescent: return "cd";
    case ImproveKind::Admm: return "admm";
    case ImproveKind::Ccp: return "ccp";
  }
  return "?";
}

ImproveKind parse_improve_kind(const std::string& name) {
  for (ImproveKind k : {ImproveKind::Sign, ImproveKind::BalancedSign, ImproveKind::Scale, ImproveKind::Clique,
                        ImproveKind::CoordinateDescent, ImproveKind::Admm, ImproveKind::Ccp})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown improve method: " + name);
}

ImproveReport improve(const Problem& p, const Vec& x0, ImproveKind kind, const ImproveOptions& opts) {
  switch (kind) {
    case ImproveKind::Sign: return improve_sign(p, x0);
    case ImproveKind::BalancedSign: return improve_balanced_sign(p, x0);
    case ImproveKind::Scale: return improve_scale(p, x0);
    case ImproveKind::Clique: return improve_clique(p, x0);
    case ImproveKind::CoordinateDescent: return improve_coordinate_descent(p, x0, opts.cd);
    case ImproveKind::Admm: return improve_admm(p, x0, opts.admm);
    case ImproveKind::Ccp: return improve_ccp(p, x0, opts.ccp);
  }
  throw std::invalid_argument("unknown improve method");
}

ImproveReport improve_sequence(const Problem& p, const Vec& x0, const std::vector<ImproveKind>& methods,
                               const ImproveOptions& opts) {
  ImproveReport out;
  out.x = x0;
  out.assessment = assess(p, x0);
  out.last = x0;
  out.converged = true;
  for (ImproveKind k : methods) {
    ImproveReport step = improve(p, out.x, k, opts);
    if (!out.method.empty()) out.method += ",";
    out.method += step.method;
    out.iterations += step.iterations;
    out.phase_trace.insert(out.phase_trace.end(), step.phase_trace.begin(), step.phase_trace.end());
    out.converged = out.converged && step.converged;
    out.last = step.last;
    if (not_worse(step.assessment, out.assessment)) {
      out.x = step.x;
      out.assessment = step.assessment;
    }
  }
  return out;
}

}  // namespace qcqp
