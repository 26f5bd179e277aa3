#pragma once

#include "qcqp/core.hpp"

#include <limits>
#include <vector>

namespace qcqp {

enum class RowSense { Leq, Eq };

/// minimize c'y s.t. A y <= b (or = b per row), lower <= y <= upper.
/// Empty `sense` means every row is <=. Bounds may be +-infinity.
struct LinearProgram {
  Vec c;
  Mat A;
  Vec b;
  std::vector<RowSense> sense;
  Vec lower;
  Vec upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::NumericalFailure;
  Vec y;
  double value = std::numeric_limits<double>::quiet_NaN();
  int pivots = 0;
};

LpResult solve_lp(const LinearProgram& lp);

/// Bounded-variable dense tableau simplex that keeps its basis between solves.
/// Rows can be appended after an optimal solve; the next solve() then runs the
/// dual simplex from the previous basis.
class SimplexLp {
 public:
  SimplexLp(Vec c, Vec lower, Vec upper);

  /// Row a'y (<= or =) b; a is dense over the structural variables.
  int add_row(const Vec& a, RowSense sense, double b);
  /// Drops rows whose slack is basic with slack >= min_slack. Returns how many
  /// were dropped; `keep` may veto (row id -> true keeps it).
  template <class Keep>
  int drop_slack_rows(double min_slack, Keep keep);

  LpStatus solve();

  int num_vars() const { return n_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  Vec solution() const;
  double objective() const;
  /// Row ids currently present, in insertion order.
  std::vector<int> row_ids() const;
  double row_slack(int id) const;
  int pivots() const { return total_pivots_; }
  int max_pivots = -1;  // default 50 * (rows + cols)

 private:
  enum class Stat : unsigned char { Basic, Lower, Upper, Free, Fixed };
  enum class Kind : unsigned char { Structural, Slack, Artificial, Dead };

  struct Column {
    Kind kind;
    int row_id;  // for slack / artificial
    double lo, hi, cost, sign;
  };
  struct RowData {
    int id;
    Vec a;
    RowSense sense;
    double b;
  };

  double row_activity(const RowData& r) const;
  void add_column(Kind kind, int row_id, double lo, double hi, double cost, double sign);
  void set_nonbasic_at_bound(int j);
  void compute_reduced_costs(const std::vector<double>& cost);
  std::vector<double> phase_cost(bool phase1) const;
  LpStatus primal(bool phase1);
  LpStatus dual();
  LpStatus solve_from_scratch();
  void pivot(int r, int q);
  bool refactor();
  void drive_out_artificials();
  bool dual_feasible(double tol) const;
  bool primal_feasible(double tol) const;
  double infeas(int i) const;
  void remove_tableau_row(int i);
  void compact();
  LpStatus finish();

  int n_;
  Vec c_;
  std::vector<Column> cols_;
  std::vector<Stat> stat_;
  std::vector<double> x_;                 // current value of every column
  std::vector<std::vector<double>> T_;    // tableau rows
  std::vector<int> basis_;                // column basic in each tableau row
  std::vector<RowData> rows_;             // original constraint rows, same order as tableau rows at refactor
  std::vector<double> d_;                 // reduced costs for the active phase
  std::vector<double> cost_;              // costs for the active phase
  int dead_ = 0;
  int budget_ = 0;
  int solve_pivots_ = 0;
  bool solved_ = false;
  bool optimal_ = false;
  int next_row_id_ = 0;
  int total_pivots_ = 0;
  int pivots_since_refactor_ = 0;
  int degenerate_run_ = 0;
};

template <class Keep>
int SimplexLp::drop_slack_rows(double min_slack, Keep keep) {
  int dropped = 0;
  for (int i = static_cast<int>(basis_.size()) - 1; i >= 0; --i) {
    const Column& col = cols_[basis_[i]];
    if (col.kind != Kind::Slack) continue;
    if (x_[basis_[i]] < min_slack) continue;
    if (keep(col.row_id)) continue;
    remove_tableau_row(i);
    ++dropped;
  }
  return dropped;
}

}  // namespace qcqp
