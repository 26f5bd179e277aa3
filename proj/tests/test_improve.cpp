#include "helpers.hpp"

#include "qcqp/generators.hpp"
#include "qcqp/improve.hpp"
#include "qcqp/onevar.hpp"

using namespace qcqp;
using namespace test;

namespace {

// Every vector of {-1, 1}^n, or of balanced sign vectors when balanced is set.
std::vector<Vec> sign_vectors(int n, bool balanced = false) {
  std::vector<Vec> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec z(n);
    for (int i = 0; i < n; ++i) z[i] = (mask >> i) & 1 ? 1.0 : -1.0;
    if (!balanced || z.sum() == 0.0) out.push_back(z);
  }
  return out;
}

Problem ball_problem() {
  // minimize ||x||^2 s.t. ||x - (2,0)||^2 <= 1
  return problem(2, form(Mat::Identity(2, 2), vec({0, 0}), 0),
                 {{form(Mat::Identity(2, 2), vec({-4, 0}), 3), Sense::LeqZero}});
}

}  // namespace

TEST_CASE("round_sign") {
  CHECK(round_sign(vec({0.3, -0.2})) == vec({1, -1}));
  CHECK(round_sign(vec({0, 0})) == vec({1, 1}));
  Rng rng(50);
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + static_cast<int>(rng.below(4));
    Vec x = normal_vec(rng, n);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& z : sign_vectors(n)) best = std::min(best, (z - x).norm());
    CHECK((round_sign(x) - x).norm() == doctest::Approx(best));
  }
}

TEST_CASE("round_balanced_sign") {
  CHECK(round_balanced_sign(vec({0.9, 0.5, -0.1, -0.7})) == vec({1, 1, -1, -1}));
  CHECK(round_balanced_sign(vec({2, 2, 2, 2})) == vec({1, 1, -1, -1}));
  CHECK_THROWS_AS(round_balanced_sign(vec({1, 2, 3})), std::invalid_argument);
  Rng rng(51);
  for (int k = 0; k < 50; ++k) {
    const int n = 2 * (1 + static_cast<int>(rng.below(3)));
    Vec x = normal_vec(rng, n);
    Vec z = round_balanced_sign(x);
    CHECK(z.sum() == 0.0);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& y : sign_vectors(n, true)) best = std::min(best, (y - x).norm());
    CHECK((z - x).norm() == doctest::Approx(best));
  }
}

TEST_CASE("scale_to_cover") {
  std::vector<Mat> P = {mat({{1, 0}, {0, 0}}), mat({{0, 0}, {0, 1}})};
  CHECK(scale_to_cover(vec({2, 3}), P) == vec({1, 1.5}));
  CHECK(scale_to_cover(vec({1, 2}), P) == vec({1, 2}));
  CHECK_THROWS_AS(scale_to_cover(vec({0, 3}), P), NotScalable);
  Rng rng(52);
  for (int k = 0; k < 100; ++k) {
    std::vector<Mat> forms;
    for (int i = 0; i < 4; ++i) {
      Vec a = normal_vec(rng, 5), b = normal_vec(rng, 5);
      forms.push_back(a * a.transpose() + b * b.transpose());
    }
    Vec z = scale_to_cover(normal_vec(rng, 5), forms);
    double t = std::numeric_limits<double>::infinity();
    for (const Mat& F : forms) t = std::min(t, z.dot(F * z));
    CHECK(std::abs(t - 1.0) <= 1e-10);
  }
}

TEST_CASE("greedy_clique examples") {
  Mat complete = Mat::Ones(4, 4);
  CHECK(greedy_clique(vec({0.1, -2, 3, 0}), complete) == Vec::Ones(4));
  Mat path = mat({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}});
  CHECK(greedy_clique(vec({0.9, 0.1, 0.8}), path) == vec({1, 1, 0}));
  Mat empty = Mat::Identity(4, 4);
  CHECK(greedy_clique(vec({0.1, 0.7, 0.3, 0.2}), empty) == vec({0, 1, 0, 0}));
}

TEST_CASE("improve_sign and improve_clique produce feasible points") {
  Rng rng(53);
  Problem p = gen_boolean_ls(6, 4, 3);
  ImproveReport r = improve_sign(p, normal_vec(rng, 4));
  CHECK(r.assessment.violation == 0.0);
  Mat A = random_graph(8, 0.5, 4);
  Problem c = gen_maxclique(A);
  ImproveReport rc = improve_clique(c, normal_vec(rng, 8));
  CHECK(rc.assessment.violation == 0.0);
}

TEST_CASE("improve_scale on beamforming") {
  Problem p = gen_beamforming(3, 3, 1, 2.0, 1e6, 5);  // loose upper level
  Rng rng(54);
  ImproveReport r = improve_scale(p, normal_vec(rng, 6));
  CHECK(r.assessment.violation <= 1e-12);
}

TEST_CASE("coordinate descent: Phase II on Boolean LS is 1-opt local search") {
  Rng rng(55);
  for (int seed = 0; seed < 10; ++seed) {
    Problem p = gen_boolean_ls(12, 8, 100 + seed);
    Vec x0 = round_sign(normal_vec(rng, 8));
    ImproveReport r = improve_coordinate_descent(p, x0);
    REQUIRE(r.assessment.violation == 0.0);
    CHECK(r.assessment.objective <= p.objective.evaluate(x0));
    for (int i = 0; i < 8; ++i) {
      Vec y = r.x;
      y[i] = -y[i];
      CHECK(p.objective.evaluate(y) >= r.assessment.objective - 1e-9);
    }
  }
}

TEST_CASE("coordinate descent: feasible start skips Phase I") {
  Problem p = gen_boolean_ls(5, 3, 7);
  Vec x0 = vec({1, -1, 1});
  ImproveReport r = improve_coordinate_descent(p, x0);
  CHECK(r.assessment.violation == 0.0);
  for (const auto& [v, f] : r.phase_trace) CHECK(v == 0.0);
}

TEST_CASE("coordinate descent: n = 1 equals solve_onevar") {
  Rng rng(56);
  for (int k = 0; k < 100; ++k) {
    OneVarQuad obj{rng.uniform(0.1, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    std::vector<OneVarQuad> cons;
    std::vector<Constraint> rows;
    for (int i = 0; i < 2; ++i) {
      OneVarQuad c{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
      cons.push_back(c);
      rows.push_back({form(mat({{c.p}}), vec({c.q}), c.r), Sense::LeqZero});
    }
    OneVarResult o = solve_onevar(obj, cons);
    if (o.status != OneVarStatus::Optimal) continue;
    Problem p = problem(1, form(mat({{obj.p}}), vec({obj.q}), obj.r), rows);
    ImproveReport r = improve_coordinate_descent(p, vec({o.x + 0.37}));
    if (r.assessment.violation > 0.0) continue;  // Phase I may stop in a different interval
    // once feasible, the one-variable restriction is solved exactly
    CHECK(r.assessment.objective == doctest::Approx(o.value).epsilon(1e-9));
  }
}

TEST_CASE("coordinate descent Phase II decreases the objective strictly and keeps feasibility") {
  Rng rng(57);
  for (int seed = 0; seed < 10; ++seed) {
    Problem p = gen_partitioning(random_weights(10, 0.5, true, 200 + seed));
    ImproveReport r = improve_coordinate_descent(p, normal_vec(rng, 10));
    bool phase2 = false;
    double prev = 0;
    for (const auto& [v, f] : r.phase_trace) {
      if (phase2) {
        CHECK(v == 0.0);
        CHECK(f <= prev);
      }
      if (v == 0.0) phase2 = true;
      prev = f;
    }
  }
}

TEST_CASE("solve_convex examples") {
  ImproveReport r = solve_convex(ball_problem(), vec({5, 5}));
  CHECK((r.x - vec({1, 0})).norm() < 1e-4);
  CHECK(r.assessment.violation <= 1e-6);
  Rng rng(58);
  Mat P = random_spd(rng, 4);
  Vec q = normal_vec(rng, 4);
  Problem qp = problem(4, form(P, q, 0));
  CHECK((solve_convex(qp, Vec::Zero(4)).x - solve_spd(2.0 * P, -q)).norm() < 1e-8);
  Problem nc = problem(1, form(mat({{-1}}), vec({0}), 0));
  CHECK_THROWS_AS(solve_convex(nc, vec({0})), NotConvex);
}

TEST_CASE("solve_convex matches an LP") {
  // minimize -x - y s.t. x + 2y <= 4, 3x + y <= 6 and a far ball keeping it bounded
  Problem p = problem(2, form(Mat::Zero(2, 2), vec({-1, -1}), 0),
                      {{form(Mat::Zero(2, 2), vec({1, 2}), -4), Sense::LeqZero},
                       {form(Mat::Zero(2, 2), vec({3, 1}), -6), Sense::LeqZero},
                       {form(Mat::Identity(2, 2), vec({0, 0}), -100), Sense::LeqZero}});
  ImproveReport r = solve_convex(p, Vec::Zero(2));
  CHECK(r.assessment.violation <= 1e-6);
  CHECK(r.assessment.objective == doctest::Approx(-2.8).epsilon(1e-4));  // vertex (1.6, 1.2)
}

TEST_CASE("CCP examples") {
  // convex: one outer iteration reaches the optimum
  ImproveReport a = improve_ccp(ball_problem(), vec({3, 1}));
  CHECK(a.converged);
  CHECK(a.iterations == 1);
  CHECK((a.x - vec({1, 0})).norm() < 1e-4);
  // minimize x s.t. x^2 = 1 from 0.3
  Problem p = problem(1, form(mat({{0}}), vec({1}), 0), {{form(mat({{1}}), vec({0}), -1), Sense::EqZero}});
  ImproveReport b = improve_ccp(p, vec({0.3}));
  CHECK(b.assessment.violation <= 1e-6);
  CHECK(std::abs(std::abs(b.x[0]) - 1.0) <= 1e-6);
  // feasible Boolean start stays feasible and no worse
  Problem bl = gen_boolean_ls(8, 5, 9);
  Vec x0 = vec({1, -1, -1, 1, 1});
  ImproveReport c = improve_ccp(bl, x0);
  CHECK(c.assessment.violation <= 1e-6);
  CHECK(c.assessment.objective <= bl.objective.evaluate(x0) + 1e-9);
}

TEST_CASE("CCP merit is nonincreasing at fixed tau") {
  Rng rng(59);
  for (int seed = 0; seed < 5; ++seed) {
    Problem p = gen_boolean_ls(8, 5, 300 + seed);
    CcpOptions o;
    o.mu = 1.0;
    o.max_iter = 15;
    o.stop_on_feasible = false;
    std::vector<double> merit;
    o.observer = [&](int, double m, double) { merit.push_back(m); };
    improve_ccp(p, normal_vec(rng, 5), o);
    for (size_t k = 1; k < merit.size(); ++k) CHECK(merit[k] <= merit[k - 1] + 1e-5 * (1 + std::abs(merit[k - 1])));
  }
}

TEST_CASE("ADMM examples") {
  ImproveReport r = improve_admm(ball_problem(), vec({-3, 4}));
  CHECK((r.x - vec({1, 0})).norm() < 1e-4);
  Rng rng(60);
  Mat P = random_spd(rng, 3);
  Vec q = normal_vec(rng, 3);
  ImproveReport u = improve_admm(problem(3, form(P, q, 0)), normal_vec(rng, 3));
  CHECK(u.iterations <= 2);
  CHECK((u.x - solve_spd(2.0 * P, -q)).norm() < 1e-9);
}

TEST_CASE("ADMM converges on random convex instances") {
  Rng rng(61);
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + static_cast<int>(rng.below(29));
    std::vector<Constraint> cons;
    for (int i = 0; i < 3; ++i)
      cons.push_back({form(random_spd(rng, n, 0.1) / n, normal_vec(rng, n), -rng.uniform(1, 3)), Sense::LeqZero});
    Problem p = problem(n, form(random_spd(rng, n, 0.5) / n, normal_vec(rng, n), 0), cons);
    AdmmOptions o;
    o.max_iter = 2000;
    double residual = 0;
    o.observer = [&](const AdmmState& s) {
      residual = 0;
      for (const Vec& x : *s.x) residual = std::max(residual, (*s.z - x).norm());
    };
    improve_admm(p, normal_vec(rng, n), o);
    CHECK(residual <= 1e-5);
  }
}

TEST_CASE("ADMM z-update over a box and a single quadratic set") {
  Problem p = problem(2, form(Mat::Identity(2, 2), vec({-6, 0}), 0),
                      {{form(Mat::Zero(2, 2), vec({0, 1}), -5), Sense::LeqZero}});
  AdmmOptions o;
  o.set = ConvexSet::box(vec({-1, -1}), vec({1, 1}));
  ImproveReport r = improve_admm(p, vec({0, 0}), o);
  CHECK((r.x - vec({1, 0})).norm() < 1e-4);
  o.set = ConvexSet::single_quadratic(form(Mat::Identity(2, 2), vec({0, 0}), -4));
  ImproveReport s = improve_admm(p, vec({0, 0}), o);
  CHECK((s.x - vec({2, 0})).norm() < 1e-4);
}

TEST_CASE("improve_sequence composes") {
  Problem p = gen_boolean_ls(10, 6, 11);
  Rng rng(62);
  Vec x0 = normal_vec(rng, 6);
  ImproveReport id = improve_sequence(p, x0, {});
  CHECK(id.x == x0);
  ImproveReport one = improve_sequence(p, x0, {ImproveKind::CoordinateDescent});
  ImproveReport two = improve_sequence(p, x0, {ImproveKind::CoordinateDescent, ImproveKind::CoordinateDescent});
  CHECK(two.assessment.objective == one.assessment.objective);
  CHECK(two.x == one.x);
  Problem beam = gen_beamforming(3, 3, 1, 5.0, 2.0, 12);
  Vec b0 = normal_vec(rng, 6);
  ImproveReport admm = improve_admm(beam, b0);
  ImproveReport both = improve_sequence(beam, b0, {ImproveKind::Admm, ImproveKind::CoordinateDescent});
  CHECK(not_worse(both.assessment, admm.assessment));
}

TEST_CASE("Improve contract across methods, families and starts") {
  const std::vector<ImproveKind> kinds = {ImproveKind::Sign,  ImproveKind::BalancedSign,      ImproveKind::Scale,
                                          ImproveKind::Clique, ImproveKind::CoordinateDescent, ImproveKind::Admm,
                                          ImproveKind::Ccp};
  ImproveOptions io;
  io.admm.max_iter = 200;
  io.ccp.max_iter = 10;
  Rng rng(63);
  for (int t = 0; t < 70; ++t) {
    Problem p;
    switch (t % 5) {
      case 0: p = gen_boolean_ls(5, 4, t); break;
      case 1: p = gen_maxbisection(random_weights(4, 0.7, false, t)); break;
      case 2: p = gen_maxclique(random_graph(5, 0.5, t)); break;
      case 3: p = gen_3sat(4, random_clauses(4, 8, t)); break;
      default: p = gen_beamforming(2, 2, 1, 3.0, 1.0, t); break;
    }
    Vec x0 = normal_vec(rng, p.n, rng.uniform(0.1, 3));
    ImproveReport r = improve(p, x0, kinds[(t / 5) % 7], io);
    Assessment a = assess(p, r.x);
    CHECK(a.violation == r.assessment.violation);
    CHECK(a.objective == r.assessment.objective);
    CHECK(not_worse(a, assess(p, x0)));
  }
}

TEST_CASE("improve kind names round trip") {
  for (ImproveKind k : {ImproveKind::Sign, ImproveKind::BalancedSign, ImproveKind::Scale, ImproveKind::Clique,
                        ImproveKind::CoordinateDescent, ImproveKind::Admm, ImproveKind::Ccp})
    CHECK(parse_improve_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_improve_kind("newton"), std::invalid_argument);
}
