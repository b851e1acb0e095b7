#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "itlp/instance.hpp"
#include "itlp/solution.hpp"
#include "itlp/variant.hpp"

namespace itlp {

// Residuals of a claimed solution against the model's constraint families,
// plus objective recomputation and the conditional zero-diagonal-flow check
// (valid only when the costs are known Euclidean).
struct CheckReport {
  double eq2_max = 0.0;       // |sum_km x + w - q|, worst pair
  double eq3_max = 0.0;       // throughput beyond C_k z_kk, worst terminal
  int eq45_violations = 0;    // links touching a closed terminal
  double eq7_resid = 0.0;     // link-count row residual
  double eq8_max = 0.0;       // flow on a link that is not established
  double eq10_resid = 0.0;    // terminal-count row residual
  double objective_claimed = 0.0;
  double objective_recomputed = 0.0;
  double objective_rel_err = 0.0;
  bool diag_check_applicable = false;
  double diag_flow_ratio = 0.0;  // sum of x_ij^kk over total demand
  bool diag_flow_ok = true;
  std::vector<std::string> notes;

  bool feasible(double feas_tol = 1e-6) const {
    return eq2_max <= feas_tol && eq3_max <= feas_tol && eq45_violations == 0 &&
           eq7_resid <= feas_tol && eq8_max <= feas_tol && eq10_resid <= feas_tol;
  }
  bool ok(double feas_tol = 1e-6) const {
    return feasible(feas_tol) && objective_rel_err <= 1e-6 && diag_flow_ok;
  }
};

inline CheckReport check_solution(const Instance &inst, const VariantSpec &variant,
                                  const Solution &sol) {
  CheckReport rep;
  const int n = inst.n(), p = inst.p();
  const Configuration &cfg = sol.config;

  // scale residuals so tolerances read as relative to the data magnitude
  double qmax = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) qmax = std::max(qmax, inst.demand(i, j));

  for (const auto &[k, m] : cfg.links)
    if (!cfg.is_open(k) || !cfg.is_open(m)) {
      ++rep.eq45_violations;
      rep.notes.push_back("link (" + std::to_string(k) + "," + std::to_string(m) +
                          ") touches a closed terminal");
    }

  // per-pair balances and per-terminal throughputs
  Mat pair_sum(n, n);
  std::vector<double> throughput(p, 0.0);
  double diag_flow = 0.0;
  for (const auto &f : sol.x) {
    if (f.i < 0 || f.i >= n || f.j < 0 || f.j >= n || f.k < 0 || f.k >= p || f.m < 0 ||
        f.m >= p) {
      rep.notes.push_back("x flow with out-of-range indices");
      continue;
    }
    pair_sum(f.i, f.j) += f.value;
    throughput[f.k] += f.value;
    throughput[f.m] += f.value;  // k == m counts twice, as the capacity row does
    if (f.k == f.m) diag_flow += f.value;
    const bool allowed = f.k == f.m ? cfg.is_open(f.k) : cfg.has_link(f.k, f.m);
    if (!allowed) rep.eq8_max = std::max(rep.eq8_max, f.value / qmax);
  }
  Mat wmat(n, n);
  for (const auto &f : sol.w) {
    if (f.i < 0 || f.i >= n || f.j < 0 || f.j >= n) {
      rep.notes.push_back("w flow with out-of-range indices");
      continue;
    }
    wmat(f.i, f.j) += f.value;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double resid =
          std::fabs(pair_sum(i, j) + wmat(i, j) - inst.demand(i, j)) / qmax;
      if (resid > rep.eq2_max) rep.eq2_max = resid;
    }
  double cmax = 1.0;
  for (int k = 0; k < p; ++k) cmax = std::max(cmax, inst.capacity[k]);
  for (int k = 0; k < p; ++k) {
    const double cap = cfg.is_open(k) ? inst.capacity[k] : 0.0;
    rep.eq3_max = std::max(rep.eq3_max, (throughput[k] - cap) / cmax);
  }
  rep.eq3_max = std::max(rep.eq3_max, 0.0);

  const int nlinks = static_cast<int>(cfg.links.size());
  if (variant.kind != VariantKind::MinLinks) {
    const double diff = static_cast<double>(nlinks) - static_cast<double>(*variant.l);
    rep.eq7_resid = variant.link_mode == LinkMode::Exact ? std::fabs(diff)
                                                         : std::max(0.0, diff);
  }
  if (variant.kind == VariantKind::MinLinks || variant.kind == VariantKind::PL)
    rep.eq10_resid = std::fabs(static_cast<double>(cfg.open_terminals.size()) -
                               static_cast<double>(*variant.q_terminals));

  // objective recomputation from flows and configuration
  double obj = 0.0;
  for (const auto &f : sol.w) obj += inst.road_cost(f.i, f.j) * f.value;
  for (const auto &f : sol.x) obj += intermodal_unit_cost(inst, f.i, f.j, f.k, f.m) * f.value;
  switch (variant.kind) {
    case VariantKind::Base:
      for (int k : cfg.open_terminals) obj += inst.fixed_cost[k];
      break;
    case VariantKind::MinLinks:
      for (const auto &[k, m] : cfg.links) obj += inst.inter_cost(k, m);
      break;
    case VariantKind::Handling: {
      for (int k : cfg.open_terminals) obj += inst.fixed_cost[k];
      const Mat &t = *variant.handling_cost;
      for (const auto &[k, m] : cfg.links) obj += t(k, m) + t(m, k);
      break;
    }
    case VariantKind::PL:
      break;
  }
  rep.objective_claimed = sol.objective;
  rep.objective_recomputed = obj;
  rep.objective_rel_err =
      std::fabs(obj - sol.objective) / std::max(1.0, std::fabs(sol.objective));

  if (inst.triangle_ok) {
    rep.diag_check_applicable = true;
    const double qtot = total_demand(inst);
    rep.diag_flow_ratio = qtot > 0.0 ? diag_flow / qtot : 0.0;
    rep.diag_flow_ok = rep.diag_flow_ratio <= 1e-7;
  }
  return rep;
}

}  // namespace itlp
