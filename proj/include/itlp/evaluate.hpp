#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "itlp/formulation.hpp"
#include "itlp/instance.hpp"
#include "itlp/lp_simplex.hpp"
#include "itlp/model.hpp"
#include "itlp/solution.hpp"

namespace itlp {

// z-variable branching state: -1 free, 0/1 fixed.
using ZFix = std::vector<std::int8_t>;

struct LpBuild {
  LpProblem lp;  // same variable indexing as the model
  bool infeasible = false;
  std::string reason;
};

namespace detail {

// Turns the model into a continuous LP under the given z fixings.
//
// Rows whose variables are all pinned become consistency checks; rows with a
// single free variable tighten that variable's bounds. Eq8 rows are included
// only when selected (eq8_mask null means none, eq8_all overrides); the
// omitted ones are covered by the implied bound x <= q * ub(z), which is why
// the relaxation stays exact once no Eq8 row is violated.
inline LpBuild build_lp(const MipModel &model, const ZFix &zfix,
                        const std::vector<std::uint8_t> *eq8_mask, bool eq8_all) {
  LpBuild out;
  LpProblem &lp = out.lp;
  const int nvars = static_cast<int>(model.vars.size());
  lp.num_vars = nvars;
  lp.obj = model.obj;
  lp.lb.resize(nvars);
  lp.ub.resize(nvars);
  for (int v = 0; v < nvars; ++v) {
    lp.lb[v] = model.vars[v].lb;
    lp.ub[v] = model.vars[v].ub;
  }
  const int nz = model.num_z();
  for (int v = 0; v < nz && v < static_cast<int>(zfix.size()); ++v)
    if (zfix[v] >= 0) {
      lp.lb[v] = static_cast<double>(zfix[v]);
      lp.ub[v] = static_cast<double>(zfix[v]);
    }

  // implied bounds from Eq8
  const int p = model.p;
  for (int a = 0; a < static_cast<int>(model.active_pairs.size()); ++a) {
    const double q = model.pair_demand[a];
    for (int k = 0; k < p; ++k)
      for (int m = 0; m < p; ++m) {
        const int zvar = k == m ? model.z_diag(k) : model.z_link(k, m);
        const int xvar = model.x_var(a, k, m);
        lp.ub[xvar] = std::min(lp.ub[xvar], q * lp.ub[zvar]);
      }
  }

  const double tol = 1e-9;
  std::vector<int> idx;
  std::vector<double> coef;
  for (int r = 0; r < static_cast<int>(model.rows.size()); ++r) {
    const MipRow &row = model.rows[r];
    if (row.tag == RowTag::Eq8 && !eq8_all && (!eq8_mask || !(*eq8_mask)[r])) continue;

    idx.clear();
    coef.clear();
    double shift = 0.0;
    for (std::size_t t = 0; t < row.idx.size(); ++t) {
      const int v = row.idx[t];
      if (lp.lb[v] == lp.ub[v]) {
        shift += row.coef[t] * lp.lb[v];
      } else {
        idx.push_back(v);
        coef.push_back(row.coef[t]);
      }
    }
    const double rhs = row.rhs - shift;
    const double scale = std::max(1.0, std::fabs(row.rhs));

    if (idx.empty()) {
      const bool bad = (row.rel == Relation::LE && 0.0 > rhs + tol * scale) ||
                       (row.rel == Relation::GE && 0.0 < rhs - tol * scale) ||
                       (row.rel == Relation::EQ && std::fabs(rhs) > tol * scale);
      if (bad) {
        out.infeasible = true;
        out.reason = std::string(to_string(row.tag)) + " row unsatisfiable with fixed variables";
        return out;
      }
      continue;
    }
    if (idx.size() == 1) {
      const int v = idx[0];
      const double c = coef[0];
      const double b = rhs / c;
      const bool tighten_ub = (row.rel == Relation::LE) == (c > 0.0);
      if (row.rel == Relation::EQ) {
        lp.lb[v] = std::max(lp.lb[v], b);
        lp.ub[v] = std::min(lp.ub[v], b);
      } else if (tighten_ub) {
        lp.ub[v] = std::min(lp.ub[v], b);
      } else {
        lp.lb[v] = std::max(lp.lb[v], b);
      }
      if (lp.lb[v] > lp.ub[v] + tol * std::max(1.0, std::fabs(b))) {
        out.infeasible = true;
        out.reason = std::string(to_string(row.tag)) + " row forces crossing bounds";
        return out;
      }
      continue;
    }
    lp.add_row(idx, coef, row.rel == Relation::LE ? 'L' : row.rel == Relation::EQ ? 'E' : 'G',
               rhs);
  }
  return out;
}

}  // namespace detail

// Objective split by variable role, for breakdown reporting.
inline ObjectiveBreakdown breakdown_from_values(const MipModel &model,
                                                const std::vector<double> &vals) {
  ObjectiveBreakdown b;
  for (int v = 0; v < static_cast<int>(model.vars.size()); ++v) {
    const double c = model.obj[v] * vals[v];
    if (c == 0.0) continue;
    switch (model.vars[v].role) {
      case VarRole::Wij: b.routing_road += c; break;
      case VarRole::Xijkm: b.routing_intermodal += c; break;
      case VarRole::Zkk: b.fixed_cost_total += c; break;
      case VarRole::Zkm: b.link_cost_total += c; break;
    }
  }
  return b;
}

inline void extract_flows(const MipModel &model, const std::vector<double> &vals,
                          Solution &sol) {
  sol.w.clear();
  sol.x.clear();
  const int p = model.p;
  for (int a = 0; a < static_cast<int>(model.active_pairs.size()); ++a) {
    const auto [i, j] = model.active_pairs[a];
    const double flow_tol = 1e-9 * std::max(1.0, model.pair_demand[a]);
    const double wv = vals[model.w_var(a)];
    if (wv > flow_tol) sol.w.push_back({i, j, wv});
    for (int k = 0; k < p; ++k)
      for (int m = 0; m < p; ++m) {
        const double xv = vals[model.x_var(a, k, m)];
        if (xv > flow_tol) sol.x.push_back({i, j, k, m, xv});
      }
  }
}

// Whether the configuration can satisfy the variant's cardinality rows at
// all; appends the reason when not.
inline bool config_matches_cardinality(const VariantSpec &variant, const Configuration &config,
                                       std::string *why = nullptr) {
  const int nlinks = static_cast<int>(config.links.size());
  const int nopen = static_cast<int>(config.open_terminals.size());
  if (variant.kind != VariantKind::MinLinks) {
    if (variant.link_mode == LinkMode::Exact && nlinks != *variant.l) {
      if (why) *why = "configuration has " + std::to_string(nlinks) + " links, needs exactly " +
                      std::to_string(*variant.l);
      return false;
    }
    if (variant.link_mode == LinkMode::AtMost && nlinks > *variant.l) {
      if (why) *why = "configuration has " + std::to_string(nlinks) + " links, cap is " +
                      std::to_string(*variant.l);
      return false;
    }
  }
  if (variant.kind == VariantKind::MinLinks || variant.kind == VariantKind::PL) {
    if (nopen != *variant.q_terminals) {
      if (why) *why = "configuration opens " + std::to_string(nopen) + " terminals, needs exactly " +
                      std::to_string(*variant.q_terminals);
      return false;
    }
  }
  return true;
}

// Evaluates configurations against one model: pins z, solves the routing LP,
// reports the full objective with breakdown. Build the model once, reuse for
// many configurations; the heuristics and the enumeration oracle both sit on
// top of this.
class ConfigEvaluator {
public:
  ConfigEvaluator(const Instance &inst, const VariantSpec &variant,
                  SimplexOptions lp_options = {})
      : model_(build_variant(inst, variant)), opt_(lp_options) {
    if (model_.structurally_infeasible)
      throw std::invalid_argument("ConfigEvaluator: " + model_.infeasibility_reason);
  }

  explicit ConfigEvaluator(MipModel model, SimplexOptions lp_options = {})
      : model_(std::move(model)), opt_(lp_options) {}

  const MipModel &model() const { return model_; }
  long long lp_solves() const { return lp_solves_; }

  // Throws on a config violating link-implies-open. Cardinality mismatches
  // come back as Infeasible without an LP solve.
  Solution evaluate(const Configuration &config) {
    for (const auto &[k, m] : config.links)
      if (!config.is_open(k) || !config.is_open(m))
        throw std::invalid_argument("evaluate_configuration: link (" + std::to_string(k) +
                                    "," + std::to_string(m) + ") touches a closed terminal");

    Solution sol;
    sol.config = config;
    std::string why;
    if (!config_matches_cardinality(model_.variant, config, &why)) {
      sol.meta.status = SolveStatus::Infeasible;
      sol.meta.infeasibility_kind = why;
      return sol;
    }

    ZFix zfix(model_.num_z(), 0);
    for (int k : config.open_terminals) zfix[model_.z_diag(k)] = 1;
    for (const auto &[k, m] : config.links) zfix[model_.z_link(k, m)] = 1;

    LpBuild b = detail::build_lp(model_, zfix, nullptr, false);
    if (b.infeasible) {
      sol.meta.status = SolveStatus::Infeasible;
      sol.meta.infeasibility_kind = b.reason;
      return sol;
    }
    LpSolution lps = solve_lp(b.lp, opt_);
    ++lp_solves_;
    if (lps.status != LpStatus::Optimal) {
      // with all z pinned the routing LP is always feasible (w absorbs all
      // demand) and bounded; anything else is an engine failure
      throw std::runtime_error(std::string("evaluate_configuration: routing LP came back ") +
                               to_string(lps.status));
    }
    sol.objective = lps.objective;
    sol.breakdown = breakdown_from_values(model_, lps.x);
    extract_flows(model_, lps.x, sol);
    sol.meta.status = SolveStatus::Feasible;
    sol.meta.lp_solves = 1;
    return sol;
  }

private:
  MipModel model_;
  SimplexOptions opt_;
  long long lp_solves_ = 0;
};

inline Solution evaluate_configuration(const Instance &inst, const VariantSpec &variant,
                                       const Configuration &config,
                                       SimplexOptions lp_options = {}) {
  ConfigEvaluator ev(inst, variant, lp_options);
  return ev.evaluate(config);
}

}  // namespace itlp
