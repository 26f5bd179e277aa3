#pragma once

#include "qcqp/improve.hpp"

#include <chrono>

namespace qcqp::detail {

/// Fills x and assessment with the better of the candidate and the input point.
inline void settle(const Problem& p, const Vec& x0, const Vec& candidate, ImproveReport& r) {
  Assessment a0 = assess(p, x0);
  Assessment a1 = assess(p, candidate);
  if (better(a0, a1)) {
    r.x = x0;
    r.assessment = a0;
  } else {
    r.x = candidate;
    r.assessment = a1;
  }
}

/// Keeps the lexicographically best point seen so far.
struct BestPoint {
  const Problem* p;
  Vec x;
  Assessment a;

  BestPoint(const Problem& prob, const Vec& x0) : p(&prob), x(x0), a(assess(prob, x0)) {}
  const Assessment& offer(const Vec& y, Assessment* out = nullptr) {
    Assessment ay = assess(*p, y);
    if (out) *out = ay;
    if (better(ay, a)) {
      x = y;
      a = ay;
    }
    return a;
  }
};

/// Copies and scaled duals of a consensus ADMM run, for warm starts.
struct AdmmCopies {
  std::vector<Vec> x, u;
};

/// solve_convex that also returns its final copies and duals in `copies`.
ImproveReport solve_convex_keep(const Problem& p, const Vec& x0, const AdmmOptions& opts, AdmmCopies& copies);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace qcqp::detail
