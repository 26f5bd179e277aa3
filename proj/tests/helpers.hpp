#pragma once

#include "qcqp/core.hpp"
#include "qcqp/rng.hpp"

#include <doctest.h>

#include <initializer_list>

namespace test {

using qcqp::Mat;
using qcqp::Vec;

inline Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline Mat mat(std::initializer_list<std::initializer_list<double>> rows) {
  Mat out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double x : r) out(i, j++) = x;
    ++i;
  }
  return out;
}

inline qcqp::QuadraticForm form(const Mat& P, const Vec& q, double r) { return qcqp::QuadraticForm::from_dense(P, q, r); }

inline Vec normal_vec(qcqp::Rng& rng, int n, double scale = 1.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

inline Mat random_symmetric(qcqp::Rng& rng, int n) {
  Mat G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  return 0.5 * (G + G.transpose());
}

inline Mat random_spd(qcqp::Rng& rng, int n, double shift = 1.0) {
  Mat G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  return G.transpose() * G + shift * Mat::Identity(n, n);
}

inline qcqp::Problem problem(int n, qcqp::QuadraticForm obj, std::vector<qcqp::Constraint> cons = {},
                             bool maximize = false) {
  qcqp::Problem p;
  p.n = n;
  p.objective = std::move(obj);
  p.constraints = std::move(cons);
  p.maximize = maximize;
  return p;
}

}  // namespace test
