#pragma once

#include "qcqp/core.hpp"
#include "qcqp/split.hpp"

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace qcqp {

struct ImproveReport {
  Vec x;
  Assessment assessment;  // recomputed from x
  int iterations = 0;
  std::vector<std::pair<double, double>> phase_trace;  // (violation, objective) per iteration
  bool converged = false;
  std::string method;
  Vec last;  // raw final iterate before best-point selection (iterative methods)
};

struct NotScalable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotConvex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Elementwise sign with sign(0) = +1.
Vec round_sign(const Vec& x);
/// +1 on the n/2 largest entries (ties to the lower index), -1 elsewhere. n must be even.
Vec round_balanced_sign(const Vec& x);
/// x / sqrt(t) with t = min_i x'P_i x, so that min_i z'P_i z = 1.
Vec scale_to_cover(const Vec& x, const std::vector<Mat>& P);
/// Greedy clique in descending order of x (ties to the lower index). Returns a 0/1 indicator.
Vec greedy_clique(const Vec& x, const Mat& adjacency);

struct CdOptions {
  int max_sweeps = 100;
  double bisection_tol = 1e-9;
  double stall_tol = 1e-9;
  /// Phase II starts once v(x) is at most this; equality rows rarely reach exactly 0.
  double eq_tol = 1e-8;
  double time_limit = std::numeric_limits<double>::infinity();
};

struct ConvexSet {
  enum class Kind { FullSpace, Box, SingleQuadratic };
  Kind kind = Kind::FullSpace;
  Vec lo, hi;          // Box
  QuadraticForm form;  // SingleQuadratic: form(z) <= 0

  static ConvexSet full_space() { return {}; }
  static ConvexSet box(Vec lo, Vec hi) { return {Kind::Box, std::move(lo), std::move(hi), {}}; }
  static ConvexSet single_quadratic(QuadraticForm f) { return {Kind::SingleQuadratic, {}, {}, std::move(f)}; }
};

/// Snapshot handed to AdmmOptions::observer after every iteration.
struct AdmmState {
  int iteration = 0;
  int phase = 1;
  const Vec* z = nullptr;
  const std::vector<Vec>* x = nullptr;
  const std::vector<Vec>* u = nullptr;
};

struct AdmmOptions {
  double rho = -1.0;  // <= 0: max(1, -lambda_min(P0) / m * 1.1)
  int max_iter = 1000;
  double eps_feas = 1e-6;
  double tol = 1e-7;  // Phase II stops when primal and dual residuals are below this (relative)
  bool two_phase = true;
  ConvexSet set;
  double time_limit = std::numeric_limits<double>::infinity();
  /// Optional starting copies and scaled duals; defaults are x_i = x0, u_i = 0.
  std::vector<Vec> x_init, u_init;
  std::function<void(const AdmmState&)> observer;
};

struct CcpOptions {
  double tau0 = 1.0;
  double tau_max = 1e4;
  double mu = 2.0;
  int max_iter = 50;
  SplitMethod split_method = SplitMethod::Eigen;
  bool stop_on_feasible = true;
  double slack_tol = 1e-6;
  AdmmOptions subsolver{1.0, 3000, 1e-6, 1e-9, false, {}, std::numeric_limits<double>::infinity(), {}, {}, {}};
  double time_limit = std::numeric_limits<double>::infinity();
  /// Called after every outer iteration with the subproblem objective at the new point and tau.
  std::function<void(int, double, double)> observer;
};

ImproveReport improve_sign(const Problem& p, const Vec& x0);
ImproveReport improve_balanced_sign(const Problem& p, const Vec& x0);
/// Uses the constraints of the form c - x'Px <= 0 with c > 0 and no linear term.
ImproveReport improve_scale(const Problem& p, const Vec& x0);
/// Reads the graph from constraints x_i x_j = 0 and rounds with greedy_clique.
ImproveReport improve_clique(const Problem& p, const Vec& x0);

ImproveReport improve_coordinate_descent(const Problem& p, const Vec& x0, const CdOptions& opts = {});
ImproveReport improve_admm(const Problem& p, const Vec& x0, const AdmmOptions& opts = {});
ImproveReport improve_ccp(const Problem& p, const Vec& x0, const CcpOptions& opts = {});

/// Convex QCQP by consensus ADMM. Returns the final iterate (not a best-point
/// selection), so it is a subsolver rather than an Improve method.
ImproveReport solve_convex(const Problem& p, const Vec& x0, const AdmmOptions& opts = {});
bool is_convex(const Problem& p, double tol = 1e-9);

enum class ImproveKind { Sign, BalancedSign, Scale, Clique, CoordinateDescent, Admm, Ccp };

const char* to_string(ImproveKind k);
/// "sign", "balanced", "scale", "clique", "cd", "admm", "ccp".
ImproveKind parse_improve_kind(const std::string& name);

struct ImproveOptions {
  CdOptions cd;
  AdmmOptions admm;
  CcpOptions ccp;
};

ImproveReport improve(const Problem& p, const Vec& x0, ImproveKind kind, const ImproveOptions& opts = {});
/// Threads the point through each method; the result is never worse than any intermediate.
ImproveReport improve_sequence(const Problem& p, const Vec& x0, const std::vector<ImproveKind>& methods,
                               const ImproveOptions& opts = {});

}  // namespace qcqp
