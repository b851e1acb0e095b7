#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "itlp/evaluate.hpp"
#include "itlp/formulation.hpp"

namespace itlp {

struct BnbParams {
  double time_limit_s = 3600.0;  // mirrors the 1-hour benchmark protocol
  long long node_limit = 50'000'000;
  double rel_gap = 0.0;  // prove optimality by default
  // rule tags; one implementation of each ships, unknown tags are rejected
  std::string branch_rule = "most-fractional";
  std::string node_rule = "best-bound-plunge";
  bool record_tree = false;
  SimplexOptions lp;
};

namespace detail {

struct BnbNode {
  ZFix zfix;
  double bound;  // inherited from the parent's LP
  int id;
  int parent;
  int depth;
};

struct NodeOrder {
  // best bound first; insertion order breaks ties deterministically
  bool operator()(const BnbNode &a, const BnbNode &b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// Rounds a fractional z-vector to a configuration and repairs it to the
// variant's cardinality requirements: lowest-value links dropped, highest
// fractional terminals opened. Returns false when no consistent repair
// exists.
inline bool round_and_repair(const MipModel &model, const std::vector<double> &z,
                             Configuration &out) {
  const int p = model.p;
  const VariantSpec &variant = model.variant;
  std::vector<char> open(p, 0);
  for (int k = 0; k < p; ++k) open[k] = z[model.z_diag(k)] >= 0.5;

  // terminal count first, where it is prescribed
  if (variant.kind == VariantKind::MinLinks || variant.kind == VariantKind::PL) {
    const int q = *variant.q_terminals;
    auto openness = [&](int k) { return z[model.z_diag(k)]; };
    std::vector<int> ks(p);
    for (int k = 0; k < p; ++k) ks[k] = k;
    std::sort(ks.begin(), ks.end(), [&](int a, int b) {
      if (openness(a) != openness(b)) return openness(a) > openness(b);
      return a < b;
    });
    std::fill(open.begin(), open.end(), 0);
    for (int t = 0; t < q; ++t) open[ks[t]] = 1;
  }

  struct LinkCand {
    double value;
    int k, m;
  };
  std::vector<LinkCand> chosen, spare;
  for (int k = 0; k < p; ++k)
    for (int m = k + 1; m < p; ++m) {
      const double v = z[model.z_link(k, m)];
      if (open[k] && open[m]) {
        if (v >= 0.5) chosen.push_back({v, k, m});
        else spare.push_back({v, k, m});
      }
    }
  auto by_value_desc = [](const LinkCand &a, const LinkCand &b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.k != b.k) return a.k < b.k;
    return a.m < b.m;
  };
  std::sort(chosen.begin(), chosen.end(), by_value_desc);
  std::sort(spare.begin(), spare.end(), by_value_desc);

  if (variant.kind != VariantKind::MinLinks) {
    const int l = *variant.l;
    if (static_cast<int>(chosen.size()) > l) chosen.resize(l);  // keep the strongest
    if (variant.link_mode == LinkMode::Exact) {
      while (static_cast<int>(chosen.size()) < l && !spare.empty()) {
        chosen.push_back(spare.front());
        spare.erase(spare.begin());
      }
      if (static_cast<int>(chosen.size()) < l) {
        if (variant.kind == VariantKind::PL) return false;  // cannot open more
        // open extra terminals by fractional openness until enough pairs exist
        std::vector<int> closed;
        for (int k = 0; k < p; ++k)
          if (!open[k]) closed.push_back(k);
        std::sort(closed.begin(), closed.end(), [&](int a, int b) {
          const double za = z[model.z_diag(a)], zb = z[model.z_diag(b)];
          if (za != zb) return za > zb;
          return a < b;
        });
        for (int k : closed) {
          open[k] = 1;
          for (int m = 0; m < p; ++m)
            if (m != k && open[m]) {
              const int kk = std::min(k, m), mm = std::max(k, m);
              spare.push_back({z[model.z_link(kk, mm)], kk, mm});
            }
          std::sort(spare.begin(), spare.end(), by_value_desc);
          while (static_cast<int>(chosen.size()) < l && !spare.empty()) {
            chosen.push_back(spare.front());
            spare.erase(spare.begin());
          }
          if (static_cast<int>(chosen.size()) == l) break;
        }
        if (static_cast<int>(chosen.size()) < l) return false;
      }
    }
  }

  out.open_terminals.clear();
  for (int k = 0; k < p; ++k)
    if (open[k]) out.open_terminals.push_back(k);
  out.links.clear();
  for (const auto &c : chosen) out.links.emplace_back(c.k, c.m);
  out.canonicalize();
  return true;
}

}  // namespace detail

// Exact optimization by LP-based branch and bound over the binary z's.
//
// Node relaxations carry every row except Eq8; those activate lazily from a
// global pool, re-separating until none is violated, so the node bound equals
// the full LP relaxation's optimum. Branching picks the most fractional z
// (ties: larger objective coefficient, then lower index). Search plunges
// depth first until the first incumbent, then switches to best bound.
//
// The exploration here is single-threaded and deterministic. Parallel workers
// would have to update the shared incumbent atomically and serialize the node
// pool; with the gap target at 0 the optimal objective is order-independent
// and configuration ties break on the lexicographic order of configurations.
inline Solution solve_bnb(const Instance &inst, const VariantSpec &variant,
                          const BnbParams &params = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const int p = inst.p();
  check_variant(variant, p);
  if (params.branch_rule != "most-fractional")
    throw std::invalid_argument("solve_bnb: unknown branch rule \"" + params.branch_rule + "\"");
  if (params.node_rule != "best-bound-plunge")
    throw std::invalid_argument("solve_bnb: unknown node rule \"" + params.node_rule + "\"");

  Solution result;
  result.meta.status = SolveStatus::Infeasible;

  std::string why;
  if (structurally_infeasible(variant, p, &why)) {
    result.meta.infeasibility_kind = "structural: " + why;
    return result;  // zero LP solves
  }

  MipModel model = build_variant(inst, variant);
  ConfigEvaluator evaluator(model, params.lp);
  const MipModel &m = evaluator.model();
  const int nz = m.num_z();

  std::vector<std::uint8_t> eq8_active(m.rows.size(), 0);

  long long lp_solves = 0;
  long long nodes_processed = 0;
  int next_id = 0;
  bool limit_hit = false;

  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  double incumbent_val = kInf;
  Solution incumbent;
  bool have_incumbent = false;
  int incumbent_node = -1;

  std::unordered_map<Configuration, double, ConfigurationHash> eval_cache;

  auto try_incumbent = [&](const Configuration &cfg, int node_id) {
    auto it = eval_cache.find(cfg);
    double val;
    Solution sol;
    if (it != eval_cache.end()) {
      val = it->second;
      if (val >= incumbent_val) return;
      sol = evaluator.evaluate(cfg);  // cache hit that improves: rebuild flows
      ++lp_solves;
    } else {
      sol = evaluator.evaluate(cfg);
      ++lp_solves;
      if (sol.meta.status == SolveStatus::Infeasible) {
        eval_cache.emplace(cfg, kInf);
        return;
      }
      val = sol.objective;
      eval_cache.emplace(cfg, val);
    }
    if (val < incumbent_val) {
      incumbent_val = val;
      incumbent = sol;
      have_incumbent = true;
      incumbent_node = node_id;
    }
  };

  // Exact link counts force a minimum number of open terminals: l links need
  // the smallest v with v(v-1)/2 >= l vertices. Valid for every integer point
  // (Eq. 7 is an equality there), so it may strengthen every node relaxation.
  // PL gets the same effect from Eq. 10 already.
  int min_open = 0;
  if (variant.link_mode == LinkMode::Exact &&
      (variant.kind == VariantKind::Base || variant.kind == VariantKind::Handling)) {
    while (min_open * (min_open - 1) / 2 < *variant.l) ++min_open;
  }

  // node LP with lazy Eq8 separation to a fixpoint
  struct NodeLpResult {
    bool infeasible = false;
    double bound = 0.0;
    std::vector<double> values;
  };
  auto solve_node_lp = [&](const ZFix &zfix) {
    NodeLpResult res;
    while (true) {
      LpBuild b = detail::build_lp(m, zfix, &eq8_active, false);
      if (b.infeasible) {
        res.infeasible = true;
        return res;
      }
      if (min_open > 0) {
        std::vector<int> free_diag;
        int fixed_open = 0;
        for (int k = 0; k < m.p; ++k) {
          if (zfix[m.z_diag(k)] < 0) free_diag.push_back(m.z_diag(k));
          else fixed_open += zfix[m.z_diag(k)];
        }
        const double need = static_cast<double>(min_open - fixed_open);
        if (free_diag.empty()) {
          if (need > 0.0) {
            res.infeasible = true;
            return res;
          }
        } else if (need > 0.0) {
          b.lp.add_row(free_diag, std::vector<double>(free_diag.size(), 1.0), 'G', need);
        }
      }
      LpSolution lps = solve_lp(b.lp, params.lp);
      ++lp_solves;
      if (lps.status == LpStatus::Infeasible) {
        res.infeasible = true;
        return res;
      }
      if (lps.status != LpStatus::Optimal)
        throw std::runtime_error(std::string("solve_bnb: node LP came back ") +
                                 to_string(lps.status));
      // separate violated linking rows
      int added = 0;
      for (int a = 0; a < static_cast<int>(m.active_pairs.size()); ++a) {
        const double q = m.pair_demand[a];
        const double tol = params.lp.feas_tol * std::max(1.0, q);
        for (int k = 0; k < m.p; ++k)
          for (int mm = 0; mm < m.p; ++mm) {
            const double xv = lps.x[m.x_var(a, k, mm)];
            if (xv <= tol) continue;
            const int zv = k == mm ? m.z_diag(k) : m.z_link(k, mm);
            if (xv > q * lps.x[zv] + tol) {
              const int row = m.eq8_row(a, k, mm);
              if (!eq8_active[row]) {
                eq8_active[row] = 1;
                ++added;
              }
            }
          }
      }
      if (added == 0) {
        res.bound = lps.objective;
        res.values = std::move(lps.x);
        return res;
      }
    }
  };

  const double int_tol = 1e-6;
  auto most_fractional = [&](const std::vector<double> &vals) {
    int best = -1;
    double best_frac = int_tol;
    for (int v = 0; v < nz; ++v) {
      const double val = vals[v];
      const double frac = std::min(val, 1.0 - val);
      if (frac > best_frac ||
          (best >= 0 && frac == best_frac &&
           std::fabs(m.obj[v]) > std::fabs(m.obj[best]))) {
        best = v;
        best_frac = frac;
      }
    }
    return best;
  };

  auto prune_cut = [&] {
    if (!have_incumbent) return kInf;
    const double slack = std::max(params.rel_gap, 1e-9) * std::max(1.0, std::fabs(incumbent_val));
    return incumbent_val - slack;
  };

  std::priority_queue<detail::BnbNode, std::vector<detail::BnbNode>, detail::NodeOrder> pool;
  std::vector<detail::BnbNode> plunge;

  detail::BnbNode root;
  root.zfix.assign(nz, -1);
  root.bound = -kInf;
  root.id = next_id++;
  root.parent = -1;
  root.depth = 0;
  plunge.push_back(std::move(root));

  double best_open_bound = kInf;  // proved bound when limits stop the search

  while (!plunge.empty() || !pool.empty()) {
    if (elapsed() > params.time_limit_s || nodes_processed >= params.node_limit) {
      limit_hit = true;
      best_open_bound = kInf;
      for (const auto &nd : plunge) best_open_bound = std::min(best_open_bound, nd.bound);
      while (!pool.empty()) {
        best_open_bound = std::min(best_open_bound, pool.top().bound);
        pool.pop();
      }
      break;
    }

    detail::BnbNode node;
    if (have_incumbent) {
      // drain the plunge stack into the pool once an incumbent exists
      for (auto &nd : plunge) pool.push(std::move(nd));
      plunge.clear();
      if (pool.empty()) break;
      node = pool.top();
      pool.pop();
    } else {
      node = std::move(plunge.back());
      plunge.pop_back();
    }

    if (node.bound >= prune_cut()) continue;

    ++nodes_processed;
    NodeLpResult lp = solve_node_lp(node.zfix);
    if (params.record_tree)
      result.meta.tree.push_back({node.id, node.parent, lp.infeasible ? kInf : lp.bound});
    if (lp.infeasible) continue;
    if (lp.bound >= prune_cut()) continue;

    const int branch_var = most_fractional(lp.values);
    if (branch_var < 0) {
      // integral z at the Eq8 fixpoint: genuine feasible flows
      Configuration cfg;
      cfg.open_terminals.clear();
      for (int k = 0; k < m.p; ++k)
        if (lp.values[m.z_diag(k)] > 0.5) cfg.open_terminals.push_back(k);
      for (int k = 0; k < m.p; ++k)
        for (int mm = k + 1; mm < m.p; ++mm)
          if (lp.values[m.z_link(k, mm)] > 0.5) cfg.links.emplace_back(k, mm);
      cfg.canonicalize();
      if (lp.bound < incumbent_val) {
        incumbent_val = lp.bound;
        incumbent.config = cfg;
        incumbent.objective = lp.bound;
        incumbent.breakdown = breakdown_from_values(m, lp.values);
        extract_flows(m, lp.values, incumbent);
        have_incumbent = true;
        incumbent_node = node.id;
        eval_cache[cfg] = lp.bound;
      }
      continue;
    }

    // rounding heuristic for an early incumbent
    Configuration rounded;
    if (detail::round_and_repair(m, lp.values, rounded)) try_incumbent(rounded, node.id);

    const double frac = lp.values[branch_var];
    detail::BnbNode down = node, up = node;
    down.zfix[branch_var] = 0;
    up.zfix[branch_var] = 1;
    down.bound = up.bound = lp.bound;
    down.parent = up.parent = node.id;
    down.depth = up.depth = node.depth + 1;
    const bool up_first = frac >= 0.5;
    down.id = up_first ? next_id + 1 : next_id;
    up.id = up_first ? next_id : next_id + 1;
    next_id += 2;

    if (have_incumbent) {
      pool.push(std::move(down));
      pool.push(std::move(up));
    } else if (up_first) {
      plunge.push_back(std::move(down));
      plunge.push_back(std::move(up));  // popped first
    } else {
      plunge.push_back(std::move(up));
      plunge.push_back(std::move(down));
    }
  }

  result.meta.nodes = nodes_processed;
  result.meta.lp_solves = lp_solves;
  result.meta.limit_hit = limit_hit;
  result.meta.wall_time_s = elapsed();

  if (have_incumbent) {
    const double bound = limit_hit ? std::min(best_open_bound, incumbent_val) : incumbent_val;
    result.config = incumbent.config;
    result.w = incumbent.w;
    result.x = incumbent.x;
    result.objective = incumbent.objective;
    result.breakdown = incumbent.breakdown;
    result.meta.status = limit_hit ? SolveStatus::Feasible : SolveStatus::Optimal;
    result.meta.best_bound = bound;
    result.meta.incumbent_node = incumbent_node;
  } else if (limit_hit) {
    result.meta.status = SolveStatus::TimeLimit;
    result.meta.best_bound = best_open_bound;
  } else {
    result.meta.status = SolveStatus::Infeasible;
    result.meta.infeasibility_kind = "lp: every node relaxation infeasible";
  }
  return result;
}

}  // namespace itlp
