// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Oracles here are independent of the library: Eigen's self-adjoint solver, dense
// grids, ray casting and exhaustive enumeration.
#include "qcqp/generators.hpp"
#include "qcqp/improve.hpp"
#include "qcqp/onevar.hpp"
#include "qcqp/oneconstraint.hpp"
#include "qcqp/pipeline.hpp"
#include "qcqp/problem_io.hpp"
#include "qcqp/relax.hpp"
#include "qcqp/rng.hpp"
#include "qcqp/split.hpp"
#include "qcqp/suggest.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace qcqp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// criterion tolerances and budgets
constexpr double kOnevarTol = 1e-6;
constexpr double kOnevarSeconds = 5.0;
constexpr double kKktTol = 1e-7;
constexpr double kProjGridTol = 1e-4;
constexpr double kProjSeconds = 10.0;
constexpr double kSpectralRelTol = 1e-8;
constexpr double kSpectralVecTol = 1e-8;
constexpr double kSandwichRel = 1e-3;
constexpr double kSandwichSpectral = 1e-6;
constexpr double kPsdTol = 1e-6;
constexpr double kSandwichSeconds = 60.0;
constexpr double kDualTol = 1e-4;
constexpr double kCycleTol = 1e-12;
constexpr double kSplitRecon = 1e-10;
constexpr double kSplitPsd = -1e-9;
constexpr double kSplitSeconds = 30.0;
constexpr double kFeasibleTol = 1e-6;  // "v = 0" for iterative methods
constexpr double kBooleanSeconds = 600.0;
constexpr double kBeamViolation = 1e-5;
constexpr double kCoverTol = 1e-10;
constexpr double kBeamSeconds = 300.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Vec normal_vec(Rng& rng, int n, double scale = 1.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

double lambda_min(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// 1. one-variable problems against a grid plus analytic candidates

Outcome criterion1() {
  Outcome out;
  Rng rng(101);
  int bad = 0, optimal = 0, infeasible = 0, unbounded = 0;
  double solver_seconds = 0.0;
  Timer total;
  std::vector<double> grid;
  for (int k = 0; k <= 200000; ++k) grid.push_back(-10.0 + 1e-4 * k);
  for (int inst = 0; inst < 1000; ++inst) {
    const int m = static_cast<int>(rng.below(11));
    OneVarQuad obj{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    std::vector<OneVarQuad> cons;
    for (int i = 0; i < m; ++i) cons.push_back({rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)});

    Timer t;
    OneVarResult res = solve_onevar(obj, cons);
    solver_seconds += t.seconds();

    auto feasible = [&](double x, double tol) {
      for (const auto& c : cons) {
        double scale = std::abs(c.p) * x * x + std::abs(c.q * x) + std::abs(c.r);
        if (c(x) > tol * (1.0 + scale)) return false;
      }
      return true;
    };
    std::vector<double> cand;
    for (const auto& c : cons) {
      long double p = c.p, q = c.q, r = c.r;
      long double disc = q * q - 4 * p * r;
      if (disc >= 0) {
        long double s = std::sqrt(disc);
        cand.push_back(static_cast<double>((-q - s) / (2 * p)));
        cand.push_back(static_cast<double>((-q + s) / (2 * p)));
      }
    }
    if (obj.p > 0) cand.push_back(-obj.q / (2 * obj.p));
    double best = kInf;
    bool any = false;
    for (double x : cand)
      if (feasible(x, 1e-9)) {
        any = true;
        best = std::min(best, obj(x));
      }
    for (double x : grid)
      if (feasible(x, 0.0)) {
        any = true;
        best = std::min(best, obj(x));
      }
    // far points expose unbounded objectives
    bool runaway = false;
    for (double s : {-1.0, 1.0}) {
      double a = s * 1e6, b = s * 1e7;
      if (feasible(a, 0.0) && feasible(b, 0.0)) {
        any = true;
        if (obj(b) < obj(a) && obj(a) < best) runaway = true;
      }
    }

    bool ok;
    switch (res.status) {
      case OneVarStatus::Infeasible:
        ++infeasible;
        ok = !any;
        break;
      case OneVarStatus::Unbounded:
        ++unbounded;
        ok = runaway;
        break;
      default:
        ++optimal;
        ok = any && !runaway && feasible(res.x, 1e-9) && std::abs(res.value - best) <= kOnevarTol &&
             std::abs(res.value - obj(res.x)) <= 1e-9 * (1.0 + std::abs(res.value));
    }
    if (!ok) ++bad;
  }
  const double secs = total.seconds();
  out.pass = bad == 0 && secs < kOnevarSeconds;
  out.detail = fmt("1000 instances (%d optimal, %d infeasible, %d unbounded), %d mismatches, solver %.2fs, total %.2fs",
                   optimal, infeasible, unbounded, bad, solver_seconds, secs);
  return out;
}

// ---------------------------------------------------------------------------
// 2. projections onto one quadratic constraint

Mat random_orthogonal(Rng& rng, int n) {
  Mat G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(G);
  return qr.householderQ() * Mat::Identity(n, n);
}

// Squared distance from z to {x : f(x) = 0} in the plane, by casting lines through z.
double ray_cast_distance2(const Mat& P, const Vec& q, double r, const Vec& z) {
  const double fz = z.dot(P * z) + q.dot(z) + r;
  auto dist = [&](double th) {
    Vec d(2);
    d << std::cos(th), std::sin(th);
    double a = d.dot(P * d), b = 2.0 * z.dot(P * d) + q.dot(d), c = fz;
    if (std::abs(a) < 1e-14) return std::abs(b) > 0 ? std::abs(c / b) : kInf;
    double disc = b * b - 4 * a * c;
    if (disc < 0) return kInf;
    double s = std::sqrt(disc);
    return std::min(std::abs((-b - s) / (2 * a)), std::abs((-b + s) / (2 * a)));
  };
  const int K = 20000;
  double best = kInf, best_th = 0;
  for (int k = 0; k < K; ++k) {
    double th = std::numbers::pi * k / K;
    double d = dist(th);
    if (d < best) {
      best = d;
      best_th = th;
    }
  }
  // refine on a finer local grid twice
  double h = std::numbers::pi / K;
  for (int pass = 0; pass < 2; ++pass) {
    double c = best_th;
    for (int k = -200; k <= 200; ++k) {
      double th = c + h * k / 100.0;
      double d = dist(th);
      if (d < best) {
        best = d;
        best_th = th;
      }
    }
    h /= 100.0;
  }
  return best * best;
}

Outcome criterion2() {
  Outcome out;
  Rng rng(202);
  Timer timer;
  int bad_kkt = 0, bad_grid = 0, planar = 0;
  double worst = 0.0;
  for (int inst = 0; inst < 500; ++inst) {
    const int n = inst % 5 == 0 ? 2 : 2 + static_cast<int>(rng.below(19));
    Vec lam(n);
    for (int i = 0; i < n; ++i) lam[i] = rng.uniform(-3, 3);
    lam[0] = rng.uniform(0.2, 3);
    lam[1] = -rng.uniform(0.2, 3);
    Mat Q = random_orthogonal(rng, n);
    Mat P = Q * lam.asDiagonal() * Q.transpose();
    P = 0.5 * (P + P.transpose()).eval();
    Vec q = normal_vec(rng, n);
    double r = rng.uniform(-2, 2);
    Vec z = normal_vec(rng, n, 2.0);
    Sense sense = inst % 2 ? Sense::EqZero : Sense::LeqZero;
    QuadraticForm f = QuadraticForm::from_dense(P, q, r);
    ProjectionResult pr = project(f, z, sense);
    // KKT residual computed from the dense data
    const Vec& x = pr.x;
    double fx = x.dot(P * x) + q.dot(x) + r;
    double stat = (2.0 * (x - z) + pr.nu * (2.0 * P * x + q)).norm();
    double cons = sense == Sense::EqZero ? std::abs(fx) : std::max(0.0, fx);
    if (sense == Sense::LeqZero) cons = std::max({cons, std::max(0.0, -pr.nu), std::abs(pr.nu * fx)});
    double res = std::max(stat, cons) / (1.0 + z.norm());
    worst = std::max(worst, res);
    if (!(res <= kKktTol)) ++bad_kkt;
    if (n == 2) {
      ++planar;
      double fz = z.dot(P * z) + q.dot(z) + r;
      double oracle = sense == Sense::LeqZero && fz <= 0 ? 0.0 : ray_cast_distance2(P, q, r, z);
      double got = (x - z).squaredNorm();
      if (!(std::abs(got - oracle) <= kProjGridTol)) ++bad_grid;
    }
  }
  const double secs = timer.seconds();
  out.pass = bad_kkt == 0 && bad_grid == 0 && secs < kProjSeconds;
  out.detail = fmt("500 projections, worst scaled KKT residual %.2e, %d over tolerance; %d planar cases, %d off the "
                   "ray-cast oracle; %.2fs",
                   worst, bad_kkt, planar, bad_grid, secs);
  return out;
}

// ---------------------------------------------------------------------------
// 3. spectral bound of two-way partitioning equals n lambda_max(W)

Outcome criterion3() {
  Outcome out;
  int bad = 0;
  double worst_val = 0.0, worst_vec = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const int n = 2 + inst % 29;
    Mat W = random_weights(n, 1.0, true, 300 + inst);
    Problem p = gen_partitioning(W);
    SpectralBound sb = spectral_bound(p);
    Eigen::SelfAdjointEigenSolver<Mat> es(W);
    const double lmax = es.eigenvalues()[n - 1];
    const Vec v = es.eigenvectors().col(n - 1);
    const double expect = n * lmax;
    const double got = p.reported_objective(sb.bound);
    double rel = std::abs(got - expect) / std::max(1.0, std::abs(expect));
    double dv = sb.x.size() == n ? std::min((sb.x - std::sqrt(n) * v).lpNorm<Eigen::Infinity>(),
                                            (sb.x + std::sqrt(n) * v).lpNorm<Eigen::Infinity>())
                                 : kInf;
    worst_val = std::max(worst_val, rel);
    worst_vec = std::max(worst_vec, dv);
    if (!(rel <= kSpectralRelTol && dv <= kSpectralVecTol)) ++bad;
  }
  out.pass = bad == 0;
  out.detail = fmt("50 instances, worst relative bound error %.2e, worst candidate error %.2e, %d failures", worst_val,
                   worst_vec, bad);
  return out;
}

// ---------------------------------------------------------------------------
// 4. spectral >= cutting plane >= optimum >= (2/pi) cutting plane, and sign rounding

CuttingPlaneOptions converged_cp() {
  CuttingPlaneOptions o;
  o.psd_tol = kPsdTol;
  o.cut_rule = CutRule::AllNegative;
  o.max_cuts = 1000000;
  return o;
}

Outcome criterion4() {
  Outcome out;
  Timer timer;
  int sandwich_bad = 0, rounding_ok = 0, unconverged = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const int n = 6 + inst % 7;
    Mat W = random_psd_weights(n, 400 + inst);
    Problem p = gen_partitioning(W);
    double fstar = p.reported_objective(brute_force(p).value);
    CuttingPlaneResult cp = sdr_bound_cutting_plane(p, converged_cp());
    if (!cp.converged || !cp.valid) ++unconverged;
    double fcp = p.reported_objective(cp.bound);
    double fsp = p.reported_objective(spectral_bound(p).bound);
    bool ok = (2.0 / std::numbers::pi) * fcp - kSandwichRel * std::abs(fcp) <= fstar && fstar <= fcp &&
              fcp <= fsp + kSandwichSpectral;
    if (!ok || !cp.converged || !cp.valid) ++sandwich_bad;
    double best = -kInf;
    for (const Vec& s : sample_from_lifted(cp.X, cp.x, 100, 500 + inst, kPsdTol)) {
      Vec z = round_sign(s);
      best = std::max(best, z.dot(W * z));
    }
    if (best >= (2.0 / std::numbers::pi) * fcp) ++rounding_ok;
  }
  const double secs = timer.seconds();
  out.pass = sandwich_bad == 0 && rounding_ok >= 19 && secs < kSandwichSeconds;
  out.detail = fmt("20 instances, %d sandwich failures (%d unconverged or invalid), sign rounding reached (2/pi) bound on "
                   "%d/20, %.1fs",
                   sandwich_bad, unconverged, rounding_ok, secs);
  return out;
}

// ---------------------------------------------------------------------------
// 5. every weighted spectral bound is below the converged relaxation

Outcome criterion5() {
  Outcome out;
  Rng rng(505);
  int bad = 0, unconverged = 0;
  double worst = -kInf;
  for (int inst = 0; inst < 10; ++inst) {
    Problem p;
    switch (inst % 3) {
      case 0: p = gen_boolean_ls(9, 6, 600 + inst); break;
      case 1: p = gen_partitioning(random_weights(7, 0.7, true, 600 + inst)); break;
      default: p = gen_maxcut(random_weights(7, 0.6, false, 600 + inst)); break;
    }
    CuttingPlaneResult cp = sdr_bound_cutting_plane(p, converged_cp());
    if (!cp.converged || !cp.valid) {
      ++unconverged;
      ++bad;
      continue;
    }
    for (int k = 0; k < 20; ++k) {
      Vec lam(p.m());
      for (int i = 0; i < p.m(); ++i) lam[i] = rng.uniform(0.0, 2.0);
      double d = spectral_bound(p, lam).bound;
      double gap = d - cp.bound;
      worst = std::max(worst, gap / (1.0 + std::abs(cp.bound)));
      if (!(d <= cp.bound + kDualTol * (1.0 + std::abs(cp.bound)))) ++bad;
    }
  }
  out.pass = bad == 0;
  out.detail = fmt("10 instances x 20 weightings, %d violations (%d relaxations unconverged), largest scaled excess %.2e",
                   bad, unconverged, worst);
  return out;
}

// ---------------------------------------------------------------------------
// 6. period-2 cycle of phase-one consensus ADMM

Outcome criterion6() {
  Outcome out;
  Mat W = Mat::Ones(3, 3) - Mat::Identity(3, 3);
  Problem p = gen_partitioning(W);
  const double t = 1.0 / 3.0;
  Vec z0 = Vec::Constant(3, t);
  AdmmOptions o;
  o.max_iter = 10;
  o.x_init = {Vec{{-1, t, t}}, Vec{{t, -1, t}}, Vec{{t, t, -1}}};
  o.u_init = {Vec{{2 * t, 0, 0}}, Vec{{0, 2 * t, 0}}, Vec{{0, 0, 2 * t}}};
  Vec zp = z0;
  std::vector<Vec> xp = o.x_init, up = o.u_init;
  double worst = 0.0;
  int phase2 = 0;
  o.observer = [&](const AdmmState& s) {
    if (s.phase != 1) ++phase2;
    worst = std::max(worst, (*s.z + zp).lpNorm<Eigen::Infinity>());
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst, ((*s.x)[i] + xp[i]).lpNorm<Eigen::Infinity>());
      worst = std::max(worst, ((*s.u)[i] + up[i]).lpNorm<Eigen::Infinity>());
    }
    zp = *s.z;
    xp = *s.x;
    up = *s.u;
  };
  ImproveReport r = improve_admm(p, z0, o);
  bool contract = not_worse(assess(p, r.x), assess(p, z0));
  out.pass = worst <= kCycleTol && phase2 == 0 && r.iterations == 10 && contract;
  out.detail = fmt("10 phase-one iterations, largest |w^{k+1} + w^k| = %.2e, best-ever point not worse than start: %s",
                   worst, contract ? "yes" : "no");
  return out;
}

// ---------------------------------------------------------------------------
// 7. difference-of-convex splittings

Outcome criterion7() {
  Outcome out;
  Rng rng(707);
  Timer timer;
  int bad_recon = 0, bad_psd = 0, bad_div = 0, bad_curv = 0;
  auto check = [&](const Mat& P, const Splitting& s) {
    double scale = 1.0 + P.norm();
    if (!((s.Pplus - s.Pminus - P).norm() <= kSplitRecon * scale)) ++bad_recon;
    if (!(lambda_min(s.Pplus) >= kSplitPsd && lambda_min(s.Pminus) >= kSplitPsd)) ++bad_psd;
  };
  for (int inst = 0; inst < 200; ++inst) {
    const int n = 1 + static_cast<int>(rng.below(100));
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    Mat P = 0.5 * (G + G.transpose());
    Splitting sh = split_shift(P);
    Splitting ei = split_eigen(P);
    check(P, sh);
    check(P, ei);
    for (CholeskyChoice c : {CholeskyChoice::V1Zero, CholeskyChoice::V2Zero}) {
      CholeskySplitting cs = split_cholesky_diff(P, -1.0, c);
      check(P, cs.split);
      const double delta = 1e-8 * (1.0 + P.diagonal().cwiseAbs().maxCoeff());
      if (!(cs.min_divisor >= std::sqrt(delta) * (1.0 - 1e-12))) ++bad_div;
    }
    // nuclear-norm comparison of the two parts, and the reported curvature
    double tr_e = ei.Pplus.trace() + ei.Pminus.trace();
    double tr_s = sh.Pplus.trace() + sh.Pminus.trace();
    if (!(tr_e <= tr_s + 1e-9 * (1.0 + tr_s)) || !(ei.curvature <= sh.curvature + 1e-12)) ++bad_curv;
  }
  const double secs = timer.seconds();
  out.pass = bad_recon == 0 && bad_psd == 0 && bad_div == 0 && bad_curv == 0 && secs < kSplitSeconds;
  out.detail = fmt("200 matrices, failures: reconstruction %d, PSD %d, divisor floor %d, curvature order %d; %.1fs",
                   bad_recon, bad_psd, bad_div, bad_curv, secs);
  return out;
}

// ---------------------------------------------------------------------------
// 8. Boolean least squares workflow

Outcome criterion8() {
  Outcome out;
  Timer timer;
  int ordering_ok = 0;
  bool feasible_ok = true, bounds_ok = true;
  std::ostringstream notes;
  CuttingPlaneOptions cp = converged_cp();
  cp.max_cuts = 400;  // budget; any valid LP value is a bound
  for (std::uint64_t seed : {11, 12, 13}) {
    Problem p = gen_boolean_ls(80, 50, seed);
    SuggestOutcome sdr = suggest_sdr(p, 20, seed, cp);
    SuggestOutcome rnd = suggest_random(p, 20, 1.0, seed);
    double spectral = spectral_bound(p).bound;
    double bound = sdr.bound ? sdr.bound->value : -kInf;
    bool valid = sdr.bound && sdr.bound->valid;
    double best_cd = kInf, best_sign = kInf, best_rand = kInf, best_ccp = kInf, worst_v = 0.0;
    double lowest_feasible = kInf;
    auto track = [&](const ImproveReport& r, double& best, double vmax) {
      worst_v = std::max(worst_v, r.assessment.violation);
      if (r.assessment.violation > vmax) feasible_ok = false;
      if (r.assessment.violation <= kFeasibleTol) {
        best = std::min(best, r.assessment.objective);
        lowest_feasible = std::min(lowest_feasible, r.assessment.objective);
      }
    };
    for (const Vec& c : sdr.candidates) {
      track(improve_sign(p, c), best_sign, 0.0);
      track(improve_coordinate_descent(p, c), best_cd, 0.0);
      track(improve_ccp(p, c), best_ccp, kFeasibleTol);
    }
    for (const Vec& c : rnd.candidates) track(improve_sign(p, c), best_rand, 0.0);
    if (best_cd <= best_sign && best_sign <= best_rand) ++ordering_ok;
    if (!(valid && spectral <= bound + 1e-9 * (1.0 + std::abs(bound)) && bound <= lowest_feasible)) bounds_ok = false;
    notes << fmt(" [seed %llu: spectral %.1f <= sdr %.1f (valid %d) | cd %.1f, sign-sdr %.1f, sign-rand %.1f, ccp %.1f, "
                 "max v %.1e]",
                 static_cast<unsigned long long>(seed), spectral, bound, valid ? 1 : 0, best_cd, best_sign, best_rand,
                 best_ccp, worst_v);
  }
  // reduced instance: every reported bound against enumeration
  Problem small = gen_boolean_ls(26, 16, 21);
  double fstar = brute_force(small).value;
  CuttingPlaneResult scp = sdr_bound_cutting_plane(small, converged_cp());
  PipelineConfig cfg;
  cfg.candidates = 4;
  cfg.seed = 21;
  cfg.improve = {ImproveKind::CoordinateDescent};
  cfg.cutting_plane = converged_cp();
  std::vector<double> reported = {spectral_bound(small).bound, scp.valid ? scp.bound : kInf};
  for (SuggestMethod m : {SuggestMethod::Spectral, SuggestMethod::Sdr}) {
    cfg.suggest = m;
    RunReport rep = run_pipeline(small, cfg);
    reported.push_back(rep.bound && rep.bound->valid ? rep.bound->value : kInf);
    if (rep.assessment.violation == 0.0 && rep.assessment.objective < fstar) bounds_ok = false;
  }
  bool small_ok = scp.valid;
  for (double b : reported) small_ok = small_ok && b <= fstar + 1e-9 * (1.0 + std::abs(fstar));
  const double secs = timer.seconds();
  out.pass = feasible_ok && ordering_ok >= 2 && bounds_ok && small_ok && secs < kBooleanSeconds;
  out.detail = fmt("ordering held on %d/3 seeds, feasibility %s, bounds %s, n=16 bounds below f*=%.3f: %s, %.0fs;",
                   ordering_ok, feasible_ok ? "ok" : "FAILED", bounds_ok ? "ok" : "FAILED", fstar,
                   small_ok ? "ok" : "FAILED", secs) +
               notes.str();
  return out;
}

// ---------------------------------------------------------------------------
// 9. beamforming workflow

Outcome criterion9() {
  Outcome out;
  Timer timer;
  const int n = 10, m = 8, l = 3;
  const double tau = 20.0, eta = 2.0;
  Problem p = gen_beamforming(n, m, l, tau, eta, 909);
  CuttingPlaneOptions cp = converged_cp();
  cp.max_cuts = 2000;
  SuggestOutcome sdr = suggest_sdr(p, 10, 909, cp);
  AdmmOptions ao;
  ao.rho = std::sqrt(static_cast<double>(m + l));
  ImproveOptions io;
  io.admm = ao;
  double admm_v = kInf, ccp_v = kInf, admm_f = kInf, ccp_f = kInf;
  int composed_worse = 0;
  for (const Vec& c : sdr.candidates) {
    ImproveReport a = improve_admm(p, c, ao);
    ImproveReport ac = improve_sequence(p, c, {ImproveKind::Admm, ImproveKind::CoordinateDescent}, io);
    ImproveReport cc = improve_ccp(p, c);
    if (better(a.assessment, ac.assessment)) ++composed_worse;
    if (better(a.assessment, {admm_v, admm_f})) {
      admm_v = a.assessment.violation;
      admm_f = a.assessment.objective;
    }
    if (better(cc.assessment, {ccp_v, ccp_f})) {
      ccp_v = cc.assessment.violation;
      ccp_f = cc.assessment.objective;
    }
  }
  // scale_to_cover on the lower-level constraints tau - x'(aa' + bb')x <= 0
  std::vector<Mat> cover;
  for (int i = 0; i < m; ++i) cover.push_back(-p.constraints[i].f.dense_P() / tau);
  Rng rng(910);
  double worst_cover = 0.0;
  for (int k = 0; k < 100; ++k) {
    Vec z = scale_to_cover(normal_vec(rng, 2 * n), cover);
    double t = kInf;
    for (const Mat& Pi : cover) t = std::min(t, z.dot(Pi * z));
    worst_cover = std::max(worst_cover, std::abs(t - 1.0));
  }
  const double secs = timer.seconds();
  out.pass = admm_v <= kBeamViolation && ccp_v <= kBeamViolation && composed_worse == 0 &&
             worst_cover <= kCoverTol && secs < kBeamSeconds;
  out.detail = fmt("ADMM best v %.1e (f %.3f), CCP best v %.1e (f %.3f), ADMM+CD worse than ADMM on %d/10, "
                   "cover error %.1e, %.1fs",
                   admm_v, admm_f, ccp_v, ccp_f, composed_worse, worst_cover, secs);
  return out;
}

// ---------------------------------------------------------------------------
// 10. Improve contract over methods, families and starting points

Problem family_instance(int family, Rng& rng, std::uint64_t seed) {
  const int n = 3 + static_cast<int>(rng.below(5));
  switch (family) {
    case 0: return gen_boolean_ls(n + 2, n, seed);
    case 1: return gen_partitioning(random_weights(n, 0.6, true, seed));
    case 2: return gen_maxcut(random_weights(n, 0.6, false, seed));
    case 3: return gen_maxbisection(random_weights(n + n % 2, 0.6, false, seed));
    case 4: return gen_maxclique(random_graph(n, 0.5, seed));
    case 5: return gen_3sat(n, random_clauses(n, 2 * n, seed));
    default: return gen_beamforming(2, 2, 1, 2.0, 1.0, seed);
  }
}

Outcome criterion10() {
  Outcome out;
  Rng rng(1010);
  const std::vector<ImproveKind> kinds = {ImproveKind::Sign,  ImproveKind::BalancedSign,      ImproveKind::Scale,
                                          ImproveKind::Clique, ImproveKind::CoordinateDescent, ImproveKind::Admm,
                                          ImproveKind::Ccp};
  ImproveOptions io;
  io.admm.max_iter = 300;
  io.ccp.max_iter = 15;
  int bad = 0, thrown = 0, mismatch = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int family = trial % 7;
    const ImproveKind kind = kinds[(trial / 7) % 7];
    Problem p = family_instance(family, rng, 2000 + trial);
    Vec x0 = normal_vec(rng, p.n, rng.uniform(0.1, 3.0));
    try {
      ImproveReport r = improve(p, x0, kind, io);
      Assessment a = assess(p, r.x);
      if (a.violation != r.assessment.violation || a.objective != r.assessment.objective) ++mismatch;
      if (!not_worse(a, assess(p, x0))) ++bad;
    } catch (const std::exception&) {
      ++thrown;
    }
  }
  out.pass = bad == 0 && thrown == 0 && mismatch == 0;
  out.detail = fmt("500 trials over 7 methods x 7 families: %d worse than input, %d exceptions, %d stale assessments",
                   bad, thrown, mismatch);
  return out;
}

// ---------------------------------------------------------------------------
// 11. greedy clique is maximal

Outcome criterion11() {
  Outcome out;
  Rng rng(1111);
  int bad = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const int n = 1 + static_cast<int>(rng.below(40));
    Mat A = random_graph(n, rng.uniform(0.1, 0.9), 1200 + inst);
    Vec x = normal_vec(rng, n);
    Vec z = greedy_clique(x, A);
    std::vector<int> C;
    for (int i = 0; i < n; ++i)
      if (z[i] == 1.0) C.push_back(i);
    bool ok = !C.empty();
    for (int i : C)
      for (int j : C)
        if (A(i, j) != 1.0) ok = false;
    for (int v = 0; v < n && ok; ++v) {
      if (z[v] == 1.0) continue;
      bool joins_all = true;
      for (int i : C) joins_all = joins_all && A(v, i) == 1.0;
      if (joins_all) ok = false;
    }
    if (!ok) ++bad;
  }
  out.pass = bad == 0;
  out.detail = fmt("100 graphs, %d outputs not a maximal clique", bad);
  return out;
}

// ---------------------------------------------------------------------------
// 12. determinism of the pipeline report

Outcome criterion12() {
  Outcome out;
  std::string problem_text = dump_problem(gen_boolean_ls(20, 12, 1212));
  struct Setup {
    SuggestMethod suggest;
    std::vector<ImproveKind> improve;
  };
  const std::vector<Setup> setups = {{SuggestMethod::Random, {ImproveKind::Sign, ImproveKind::CoordinateDescent}},
                                     {SuggestMethod::Sdr, {ImproveKind::Admm, ImproveKind::CoordinateDescent}},
                                     {SuggestMethod::Random, {ImproveKind::Ccp}}};
  int byte_diff = 0, point_diff = 0;
  for (const auto& s : setups) {
    PipelineConfig cfg;
    cfg.suggest = s.suggest;
    cfg.improve = s.improve;
    cfg.candidates = 8;
    cfg.seed = 1213;
    cfg.improve_options.admm.max_iter = 300;
    std::string config_text = config_json(cfg);
    auto run = [&](int parallel) {
      Problem p = parse_problem(problem_text);
      PipelineConfig c = parse_config(config_text);
      c.parallel = parallel;
      RunReport r = run_pipeline(p, c);
      return std::make_pair(report_json(r, c), r.x);
    };
    auto [a, xa] = run(1);
    auto [b, xb] = run(1);
    if (a != b) ++byte_diff;
    for (int par : {2, 4, 8}) {
      auto [c, xc] = run(par);
      if (xc.size() != xa.size() || xc != xa) ++point_diff;
    }
  }
  out.pass = byte_diff == 0 && point_diff == 0;
  out.detail = fmt("3 configurations: %d report differences at parallelism 1, %d best-point differences at 2/4/8 workers",
                   byte_diff, point_diff);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"one-variable oracle equivalence", criterion1},
      {"projection KKT suite", criterion2},
      {"spectral identity for partitioning", criterion3},
      {"bound sandwich and 2/pi rounding", criterion4},
      {"weighted spectral bounds below the relaxation", criterion5},
      {"ADMM period-2 cycle", criterion6},
      {"splitting suite", criterion7},
      {"Boolean least squares workflow", criterion8},
      {"beamforming workflow", criterion9},
      {"Improve contract", criterion10},
      {"maximal clique", criterion11},
      {"determinism", criterion12},
  };
  // optional list of criterion numbers to run
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2d %-48s %s  %s\n", id, criteria[k].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
