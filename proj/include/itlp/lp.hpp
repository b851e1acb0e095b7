#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace itlp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Continuous LP in row form: minimize obj'v subject to row relations on A v
// and variable bounds. Rows are stored sparse (CSR).
struct LpProblem {
  int num_vars = 0;
  std::vector<double> obj;
  std::vector<double> lb, ub;

  std::vector<int> row_start{0};
  std::vector<int> col_index;
  std::vector<double> coef;
  std::vector<char> relation;  // 'L', 'E', 'G'
  std::vector<double> rhs;

  int num_rows() const { return static_cast<int>(rhs.size()); }

  void add_var(double lower, double upper, double cost) {
    lb.push_back(lower);
    ub.push_back(upper);
    obj.push_back(cost);
    ++num_vars;
  }

  void add_row(const std::vector<int> &idx, const std::vector<double> &val, char rel,
               double rhs_value) {
    for (std::size_t t = 0; t < idx.size(); ++t) {
      col_index.push_back(idx[t]);
      coef.push_back(val[t]);
    }
    row_start.push_back(static_cast<int>(col_index.size()));
    relation.push_back(rel);
    rhs.push_back(rhs_value);
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char *to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "?";
}

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;  // structural values
  std::vector<double> y;  // row duals
  long long iterations = 0;
  long long phase1_iterations = 0;
  bool anti_cycling_engaged = false;
};

struct SimplexOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  double pivot_tol = 1e-9;
  long long iter_limit = 2'000'000;
  // Product-form eta updates between refactorizations; the interval bounds
  // both eta memory and drift.
  int refactor_interval = 100;
  // Consecutive degenerate pivots tolerated before Bland's rule engages.
  int stall_threshold = 256;
  // Run under Bland's rule from the first iteration (the anti-cycling rule
  // as such; finite termination guaranteed, slower in the typical case).
  bool force_bland = false;
};

// Test/audit hook: when set, called after every solve_lp return. Single
// threaded by contract, like the rest of the engine.
struct LpAudit {
  using Hook = std::function<void(const LpProblem &, const LpSolution &)>;
  static Hook &hook() {
    static Hook h;
    return h;
  }
};

}  // namespace itlp
