#pragma once

#include "qcqp/core.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qcqp {

/// minimize ||Ax - b||^2 s.t. x_i^2 = 1, with A (m x n, row-major draws) then b from N(0, 1).
Problem gen_boolean_ls(int m, int n, std::uint64_t seed);
Problem gen_boolean_ls(const Mat& A, const Vec& b);

/// maximize x'Wx s.t. x_i^2 = 1.
Problem gen_partitioning(const Mat& W);
/// maximize (1/4) x'Lx s.t. x_i^2 = 1, L the Laplacian of W.
Problem gen_maxcut(const Mat& W);
/// gen_maxcut plus 1'x = 0.
Problem gen_maxbisection(const Mat& W);
Mat laplacian(const Mat& W);

/// maximize 1'x s.t. x_i x_j = 0 for non-adjacent pairs and x_i (x_i - 1) = 0.
Problem gen_maxclique(const Mat& adjacency);

/// A literal is +k for x_k and -k for its negation, k 1-based.
using Clause = std::array<int, 3>;
struct MalformedClause : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
/// Feasibility problem (objective 0): 1 - (Ax + b)_k <= 0 per clause and x_i (x_i - 1) = 0.
Problem gen_3sat(int n, const std::vector<Clause>& clauses);

/// Real form of the secondary-user multicast problem over 2n variables:
/// minimize ||x||^2 s.t. tau - (a_i'x)^2 - (b_i'x)^2 <= 0 (m rows) and
/// (c_j'x)^2 + (d_j'x)^2 - eta <= 0 (l rows). Re h_i, Im h_i, then Re g_j, Im g_j are drawn from N(0, 1).
Problem gen_beamforming(int n, int m, int l, double tau, double eta, std::uint64_t seed);

/// Symmetric weights with zero diagonal. Each pair is an edge with probability p and
/// gets weight 1 (or a N(0, 1) draw when gaussian).
Mat random_weights(int n, double p, bool gaussian, std::uint64_t seed);
/// W = G'G with G (n x n) from N(0, 1): a PSD weight matrix.
Mat random_psd_weights(int n, std::uint64_t seed);
/// 0/1 symmetric adjacency with unit diagonal, edge probability p.
Mat random_graph(int n, double p, std::uint64_t seed);
/// Clauses over three distinct variables with random signs.
std::vector<Clause> random_clauses(int n, int count, std::uint64_t seed);

struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BruteMode { Boolean, Grid };

struct BruteOptions {
  BruteMode mode = BruteMode::Boolean;
  double lo = -1.0, hi = 1.0;  // Grid range
  int steps = 101;             // Grid points per coordinate
  int threads = 0;             // <= 0: hardware concurrency
};

struct BruteResult {
  Vec x;
  double value = std::numeric_limits<double>::infinity();  // internal minimization sense
  Assessment assessment;
  long long points = 0;
  bool feasible = false;
};

/// Exhaustive search. Boolean mode enumerates {-1, 1}^n or {0, 1}^n, taken from the
/// x_i^2 = 1 or x_i^2 - x_i = 0 rows, keeping points with zero violation (up to 1e-9
/// on affine equalities); x is empty when none is feasible. Grid mode returns the lexicographically best grid point.
BruteResult brute_force(const Problem& p, const BruteOptions& opts = {});

}  // namespace qcqp
