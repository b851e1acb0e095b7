#pragma once

#include <cmath>
#include <vector>

#include "itlp/lp.hpp"

namespace itlp {

// Post-solve soundness audit for Optimal results: primal residuals, dual
// sign conditions, and a weak-duality bound. The dual value evaluates the
// Lagrangian bound at the returned y, minimizing each reduced-cost term over
// its box; slopes whose sign points along an unbounded direction are treated
// as zero when they are within 10x opt_tol (vertex optima satisfy that), and
// counted as sign violations when they are not.
struct LpAuditReport {
  double max_row_violation = 0.0;    // relative to max(1, |rhs|)
  double max_bound_violation = 0.0;  // relative to max(1, |bound|)
  double max_dual_sign_violation = 0.0;
  double primal_objective = 0.0;
  double dual_bound = 0.0;
  bool weak_duality_ok = true;

  bool ok(double feas_tol = 1e-6, double dual_tol = 1e-5) const {
    return max_row_violation <= feas_tol && max_bound_violation <= feas_tol &&
           max_dual_sign_violation <= dual_tol && weak_duality_ok;
  }
};

inline LpAuditReport audit_lp(const LpProblem &prob, const LpSolution &sol,
                              const SimplexOptions &opt = {}) {
  LpAuditReport rep;
  if (sol.status != LpStatus::Optimal) return rep;

  const int m = prob.num_rows();
  rep.primal_objective = sol.objective;

  // primal feasibility
  for (int j = 0; j < prob.num_vars; ++j) {
    const double v = sol.x[j];
    const double lo = prob.lb[j], up = prob.ub[j];
    if (lo > -kInf)
      rep.max_bound_violation =
          std::max(rep.max_bound_violation, (lo - v) / std::max(1.0, std::fabs(lo)));
    if (up < kInf)
      rep.max_bound_violation =
          std::max(rep.max_bound_violation, (v - up) / std::max(1.0, std::fabs(up)));
  }
  std::vector<double> act(m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int t = prob.row_start[i]; t < prob.row_start[i + 1]; ++t)
      act[i] += prob.coef[t] * sol.x[prob.col_index[t]];
  for (int i = 0; i < m; ++i) {
    const double scale = std::max(1.0, std::fabs(prob.rhs[i]));
    double viol = 0.0;
    switch (prob.relation[i]) {
      case 'L': viol = act[i] - prob.rhs[i]; break;
      case 'G': viol = prob.rhs[i] - act[i]; break;
      case 'E': viol = std::fabs(act[i] - prob.rhs[i]); break;
    }
    rep.max_row_violation = std::max(rep.max_row_violation, viol / scale);
  }

  // reduced costs at the returned duals
  std::vector<double> d(prob.obj.begin(), prob.obj.end());
  for (int i = 0; i < m; ++i)
    for (int t = prob.row_start[i]; t < prob.row_start[i + 1]; ++t)
      d[prob.col_index[t]] -= sol.y[i] * prob.coef[t];

  const double clamp = 10.0 * opt.opt_tol;
  double dual = 0.0;
  for (int j = 0; j < prob.num_vars; ++j) {
    const double lo = prob.lb[j], up = prob.ub[j];
    double slope = d[j];
    if (lo <= -kInf && slope > 0.0) {  // min at -inf
      if (slope <= clamp) slope = 0.0;
      else rep.max_dual_sign_violation = std::max(rep.max_dual_sign_violation, slope);
    }
    if (up >= kInf && slope < 0.0) {  // min at +inf
      if (-slope <= clamp) slope = 0.0;
      else rep.max_dual_sign_violation = std::max(rep.max_dual_sign_violation, -slope);
    }
    if (slope == 0.0) continue;
    dual += slope > 0.0 ? slope * lo : slope * up;
  }
  // row terms: s_i ranges over the relation's interval
  for (int i = 0; i < m; ++i) {
    const double yi = sol.y[i];
    double slope = yi;
    const char rel = prob.relation[i];
    if (rel == 'L' && slope > 0.0) {  // s in (-inf, rhs]
      if (slope <= clamp) slope = 0.0;
      else rep.max_dual_sign_violation = std::max(rep.max_dual_sign_violation, slope);
    }
    if (rel == 'G' && slope < 0.0) {  // s in [rhs, inf)
      if (-slope <= clamp) slope = 0.0;
      else rep.max_dual_sign_violation = std::max(rep.max_dual_sign_violation, -slope);
    }
    dual += slope * prob.rhs[i];
  }
  rep.dual_bound = dual;
  rep.weak_duality_ok =
      rep.primal_objective >= dual - 1e-6 * std::max(1.0, std::fabs(rep.primal_objective));
  return rep;
}

}  // namespace itlp
