#include "qcqp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace qcqp {

namespace {

constexpr double kFeasTol = 1e-9;

/// Per-variable two-point domains read from x_i^2 = 1 or x_i^2 - x_i = 0 rows.
std::vector<std::array<double, 2>> boolean_domains(const Problem& p) {
  std::vector<std::array<double, 2>> dom(p.n, {std::nan(""), std::nan("")});
  for (const auto& c : p.constraints) {
    const QuadraticForm& f = c.f;
    if (c.sense != Sense::EqZero || f.P().size() != 1) continue;
    const Triplet& t = f.P().front();
    if (t.row != t.col || t.value == 0.0) continue;
    const int i = t.row;
    Vec q = f.q();
    double qi = q[i];
    q[i] = 0.0;
    if (!q.isZero(0.0)) continue;
    if (qi == 0.0 && f.r() == -t.value) dom[i] = {-1.0, 1.0};
    else if (f.r() == 0.0 && qi == -t.value) dom[i] = {0.0, 1.0};
  }
  for (int i = 0; i < p.n; ++i)
    if (std::isnan(dom[i][0]))
      throw std::invalid_argument("Boolean mode needs x_i^2 = 1 or x_i^2 - x_i = 0 for every variable");
  return dom;
}

struct Chunk {
  double value = std::numeric_limits<double>::infinity();
  unsigned long long code = 0;
  bool found = false;
};

/// Gray-code walk over codes [begin, end): neighbouring codes differ in one variable,
/// so objective and constraint values update in O(column) per step.
Chunk walk(const Problem& p, const std::vector<std::array<double, 2>>& dom, unsigned long long begin,
           unsigned long long end) {
  const int n = p.n, m = p.m();
  std::vector<std::vector<std::pair<int, double>>> ocol(n);
  for (const auto& t : p.objective.P()) {
    ocol[t.col].emplace_back(t.row, t.value);
    if (t.row != t.col) ocol[t.row].emplace_back(t.col, t.value);
  }
  std::vector<std::vector<std::pair<int, double>>> touch(n);  // (constraint, unused)
  for (int i = 0; i < m; ++i) {
    std::vector<int> sup = p.constraints[i].f.support();
    for (int j : sup) touch[j].emplace_back(i, 0.0);
  }
  auto point = [&](unsigned long long code) {
    unsigned long long g = code ^ (code >> 1);
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = dom[i][(g >> i) & 1ULL];
    return x;
  };
  Chunk best;
  if (begin >= end) return best;
  Vec x = point(begin);
  Vec Px = p.objective.apply(x);
  double f = p.objective.evaluate(x);
  Vec vals(m);
  for (int i = 0; i < m; ++i) vals[i] = p.constraints[i].f.evaluate(x);
  auto feasible = [&]() {
    for (int i = 0; i < m; ++i) {
      double v = p.constraints[i].sense == Sense::EqZero ? std::abs(vals[i]) : vals[i];
      if (v > kFeasTol) return false;
    }
    return true;
  };
  for (unsigned long long code = begin;; ++code) {
    if (feasible() && f < best.value) {
      best.value = f;
      best.code = code;
      best.found = true;
    }
    if (code + 1 >= end) break;
    // the bit that changes between gray(code) and gray(code + 1)
    const int j = __builtin_ctzll(code + 1);
    const double d = x[j] == dom[j][0] ? dom[j][1] - dom[j][0] : dom[j][0] - dom[j][1];
    double diag = 0.0;
    for (const auto& [i, v] : ocol[j])
      if (i == j) diag = v;
    f += d * (2.0 * Px[j] + p.objective.q()[j]) + d * d * diag;
    for (const auto& [i, v] : ocol[j]) Px[i] += d * v;
    x[j] += d;
    for (const auto& [i, unused] : touch[j]) vals[i] = p.constraints[i].f.evaluate(x);
    if (((code + 1) & 0xFFFULL) == 0) {
      Px = p.objective.apply(x);
      f = p.objective.evaluate(x);
    }
  }
  return best;
}

}  // namespace

BruteResult brute_force(const Problem& p, const BruteOptions& opts) {
  p.validate();
  BruteResult res;
  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (opts.mode == BruteMode::Boolean) {
    if (p.n > 24) throw TooLarge("Boolean enumeration is limited to n <= 24");
    auto dom = boolean_domains(p);
    const unsigned long long total = 1ULL << p.n;
    threads = static_cast<int>(std::min<unsigned long long>(threads, std::max(1ULL, total >> 12)));
    std::vector<Chunk> chunks(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      unsigned long long b = total * t / threads, e = total * (t + 1) / threads;
      pool.emplace_back([&, t, b, e] { chunks[t] = walk(p, dom, b, e); });
    }
    for (auto& th : pool) th.join();
    res.points = static_cast<long long>(total);
    const Chunk* win = nullptr;
    for (const auto& c : chunks)
      if (c.found && (!win || c.value < win->value)) win = &c;
    if (win) {
      unsigned long long g = win->code ^ (win->code >> 1);
      res.x.resize(p.n);
      for (int i = 0; i < p.n; ++i) res.x[i] = dom[i][(g >> i) & 1ULL];
      res.assessment = assess(p, res.x);
      res.value = res.assessment.objective;
      res.feasible = true;
    }
    return res;
  }
  if (opts.steps < 2 || !(opts.lo < opts.hi)) throw std::invalid_argument("grid needs steps >= 2 and lo < hi");
  const double count = std::pow(static_cast<double>(opts.steps), p.n);
  if (count > 5e7) throw TooLarge("grid has too many points");
  const long long total = static_cast<long long>(std::llround(count));
  const double h = (opts.hi - opts.lo) / (opts.steps - 1);
  auto point = [&](long long k) {
    Vec x(p.n);
    for (int i = 0; i < p.n; ++i) {
      x[i] = opts.lo + h * static_cast<double>(k % opts.steps);
      k /= opts.steps;
    }
    return x;
  };
  threads = static_cast<int>(std::min<long long>(threads, std::max(1LL, total >> 10)));
  std::vector<std::pair<long long, Assessment>> best(threads, {-1, Assessment{}});
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    long long b = total * t / threads, e = total * (t + 1) / threads;
    pool.emplace_back([&, t, b, e] {
      for (long long k = b; k < e; ++k) {
        Assessment a = assess(p, point(k));
        if (best[t].first < 0 || better(a, best[t].second)) best[t] = {k, a};
      }
    });
  }
  for (auto& th : pool) th.join();
  long long win = -1;
  Assessment wa;
  for (const auto& [k, a] : best)
    if (k >= 0 && (win < 0 || better(a, wa))) win = k, wa = a;
  res.points = total;
  res.x = point(win);
  res.assessment = wa;
  res.value = wa.objective;
  res.feasible = wa.violation <= kFeasTol;
  return res;
}

}  // namespace qcqp
