#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "itlp/evaluate.hpp"
#include "itlp/rng.hpp"

namespace itlp {

struct HeuristicParams {
  double time_budget_s = 5.0;  // safety cap; the restart count drives the search
  int restarts = 8;
  int max_non_improving_restarts = 4;
  // which move families run, and in what generation order
  std::string neighborhood_order = "terminals,links,swap-links,swap-terminals";
  std::uint64_t seed = 1;
  SimplexOptions lp;
};

struct TracePoint {
  long long iteration;
  double best_objective;
  double elapsed_s;
};

namespace detail {

// Static routing-saving estimates. via[pair_idx][a] is the best unit cost for
// active pair a through candidate link pair_idx (either orientation); diag[k][a]
// the unit cost through terminal k alone. The greedy and the repair rules rank
// moves by these, the LP then prices the survivors exactly.
struct SavingsTable {
  const Instance *inst = nullptr;
  const MipModel *model = nullptr;
  int p = 0;
  std::vector<std::vector<double>> via;   // pair_count x active pairs
  std::vector<std::vector<double>> diag;  // p x active pairs
  std::vector<double> road;               // active pairs
  std::vector<double> q;

  void build(const Instance &instance, const MipModel &m) {
    inst = &instance;
    model = &m;
    p = m.p;
    const int na = static_cast<int>(m.active_pairs.size());
    road.resize(na);
    q = m.pair_demand;
    for (int a = 0; a < na; ++a) {
      const auto [i, j] = m.active_pairs[a];
      road[a] = instance.road_cost(i, j);
    }
    diag.assign(p, std::vector<double>(na));
    for (int k = 0; k < p; ++k)
      for (int a = 0; a < na; ++a) {
        const auto [i, j] = m.active_pairs[a];
        diag[k][a] = intermodal_unit_cost(instance, i, j, k, k);
      }
    via.assign(pair_count(p), std::vector<double>(na));
    for (int k = 0; k < p; ++k)
      for (int mm = k + 1; mm < p; ++mm) {
        auto &v = via[pair_index(k, mm, p)];
        for (int a = 0; a < na; ++a) {
          const auto [i, j] = m.active_pairs[a];
          v[a] = std::min(intermodal_unit_cost(instance, i, j, k, mm),
                          intermodal_unit_cost(instance, i, j, mm, k));
        }
      }
  }

  double link_price(int k, int m) const {
    const VariantSpec &variant = model->variant;
    if (variant.kind == VariantKind::MinLinks) return inst->inter_cost(k, m);
    if (variant.kind == VariantKind::Handling) {
      const Mat &t = *variant.handling_cost;
      return t(k, m) + t(m, k);
    }
    return 0.0;
  }

  bool charges_fixed_cost() const {
    return model->variant.kind == VariantKind::Base ||
           model->variant.kind == VariantKind::Handling;
  }

  // saving of adding link {k, m} given current best unit costs cur
  double marginal_link_saving(int k, int m, const std::vector<double> &cur,
                              const std::vector<char> &open) const {
    const auto &v = via[pair_index(k, m, p)];
    double s = 0.0;
    for (std::size_t a = 0; a < cur.size(); ++a)
      if (cur[a] > v[a]) s += q[a] * (cur[a] - v[a]);
    s -= link_price(k, m);
    if (charges_fixed_cost()) {
      if (!open[k]) s -= inst->fixed_cost[k];
      if (!open[m]) s -= inst->fixed_cost[m];
    }
    return s;
  }

  double marginal_diag_saving(int k, const std::vector<double> &cur) const {
    double s = 0.0;
    for (std::size_t a = 0; a < cur.size(); ++a)
      if (cur[a] > diag[k][a]) s += q[a] * (cur[a] - diag[k][a]);
    if (charges_fixed_cost()) s -= inst->fixed_cost[k];
    return s;
  }

  // standalone terminal rank: best achievable advantage assuming its best
  // partner link existed, minus the fixed cost where the objective charges it
  double terminal_potential(int k) const {
    double s = 0.0;
    for (std::size_t a = 0; a < road.size(); ++a) {
      double best = diag[k][a];
      for (int m = 0; m < p; ++m)
        if (m != k) best = std::min(best, via[pair_index(k, m, p)][a]);
      if (road[a] > best) s += q[a] * (road[a] - best);
    }
    if (charges_fixed_cost()) s -= inst->fixed_cost[k];
    return s;
  }

  void apply_open(int k, std::vector<double> &cur) const {
    for (std::size_t a = 0; a < cur.size(); ++a) cur[a] = std::min(cur[a], diag[k][a]);
  }
  void apply_link(int k, int m, std::vector<double> &cur) const {
    const auto &v = via[pair_index(k, m, p)];
    for (std::size_t a = 0; a < cur.size(); ++a) cur[a] = std::min(cur[a], v[a]);
  }
};

}  // namespace detail

// Greedy construction: open what the savings estimates justify (or what the
// cardinality rules demand), then add links best-estimate first. seed != 0
// adds tiny multiplicative jitter to the scores, which diversifies restarts
// without disturbing clear-cut rankings.
inline Configuration greedy_construct(const Instance &inst, const VariantSpec &variant,
                                      std::uint64_t seed = 0) {
  const int p = inst.p();
  check_variant(variant, p);
  std::string why;
  if (structurally_infeasible(variant, p, &why))
    throw std::invalid_argument("greedy_construct: " + why);

  MipModel model = build_variant(inst, variant);
  detail::SavingsTable t;
  t.build(inst, model);

  Xoshiro256pp rng(seed);
  auto jitter = [&](double v) {
    if (seed == 0) return v;
    return v + std::fabs(v) * 1e-7 * (rng.uniform01() - 0.5);
  };

  const int na = static_cast<int>(model.active_pairs.size());
  std::vector<double> cur = t.road;
  std::vector<char> open(p, 0);
  std::vector<char> linked(pair_count(p), 0);
  int nlinks = 0;

  const bool fixed_open = variant.kind == VariantKind::MinLinks || variant.kind == VariantKind::PL;
  if (fixed_open) {
    std::vector<std::pair<double, int>> rank(p);
    for (int k = 0; k < p; ++k) rank[k] = {jitter(t.terminal_potential(k)), k};
    std::sort(rank.begin(), rank.end(), [](const auto &a, const auto &b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (int i = 0; i < *variant.q_terminals; ++i) {
      open[rank[i].second] = 1;
      t.apply_open(rank[i].second, cur);
    }
  }

  // links, best estimated saving first
  const bool exact_links = variant.kind != VariantKind::MinLinks &&
                           variant.link_mode == LinkMode::Exact;
  const int link_cap = variant.kind == VariantKind::MinLinks
                           ? pair_count(p)
                           : *variant.l;
  while (nlinks < link_cap) {
    int bk = -1, bm = -1;
    double best = -kInf;
    for (int k = 0; k < p; ++k)
      for (int m = k + 1; m < p; ++m) {
        if (linked[pair_index(k, m, p)]) continue;
        if (fixed_open && (!open[k] || !open[m])) continue;
        const double s = jitter(t.marginal_link_saving(k, m, cur, open));
        if (s > best) {
          best = s;
          bk = k;
          bm = m;
        }
      }
    if (bk < 0) break;                      // no candidate pair left
    if (!exact_links && best <= 0.0) break; // only profitable links unless forced
    linked[pair_index(bk, bm, p)] = 1;
    ++nlinks;
    if (!open[bk]) {
      open[bk] = 1;
      t.apply_open(bk, cur);
    }
    if (!open[bm]) {
      open[bm] = 1;
      t.apply_open(bm, cur);
    }
    t.apply_link(bk, bm, cur);
  }

  // lone terminals that pay for themselves through their own transfer route
  // (possible only when the triangle inequality fails)
  if (!fixed_open && na > 0) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int k = 0; k < p; ++k) {
        if (open[k]) continue;
        if (jitter(t.marginal_diag_saving(k, cur)) > 0.0) {
          open[k] = 1;
          t.apply_open(k, cur);
          changed = true;
        }
      }
    }
  }

  Configuration cfg;
  for (int k = 0; k < p; ++k)
    if (open[k]) cfg.open_terminals.push_back(k);
  for (int k = 0; k < p; ++k)
    for (int m = k + 1; m < p; ++m)
      if (linked[pair_index(k, m, p)]) cfg.links.emplace_back(k, m);
  cfg.canonicalize();
  return cfg;
}

namespace detail {

// Shared by the local search and the perturbation: force a candidate back to
// the variant's cardinality requirements, ranking repair links by the static
// saving estimate. Returns false when impossible.
inline bool repair_config(Configuration &cfg, const VariantSpec &variant,
                          const SavingsTable &t) {
  const int p = t.p;
  cfg.canonicalize();
  // drop links with closed endpoints
  std::vector<std::pair<int, int>> keep;
  for (const auto &l : cfg.links)
    if (cfg.is_open(l.first) && cfg.is_open(l.second)) keep.push_back(l);
  cfg.links = std::move(keep);

  if (variant.kind == VariantKind::MinLinks) return true;
  const int l = *variant.l;
  if (static_cast<int>(cfg.links.size()) > l) {
    // shed the weakest links by static estimate
    std::vector<std::pair<double, std::pair<int, int>>> rank;
    const std::vector<double> &road = t.road;
    for (const auto &lk : cfg.links) {
      const auto &v = t.via[pair_index(lk.first, lk.second, p)];
      double s = -t.link_price(lk.first, lk.second);
      for (std::size_t a = 0; a < road.size(); ++a)
        if (road[a] > v[a]) s += t.q[a] * (road[a] - v[a]);
      rank.push_back({s, lk});
    }
    std::sort(rank.begin(), rank.end(), [](const auto &a, const auto &b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    cfg.links.clear();
    for (int i = 0; i < l; ++i) cfg.links.push_back(rank[i].second);
    cfg.canonicalize();
  }
  if (variant.link_mode == LinkMode::Exact) {
    while (static_cast<int>(cfg.links.size()) < l) {
      int bk = -1, bm = -1;
      double best = -kInf;
      for (std::size_t ia = 0; ia < cfg.open_terminals.size(); ++ia)
        for (std::size_t ib = ia + 1; ib < cfg.open_terminals.size(); ++ib) {
          const int k = cfg.open_terminals[ia], mm = cfg.open_terminals[ib];
          if (cfg.has_link(k, mm)) continue;
          const auto &v = t.via[pair_index(k, mm, p)];
          double s = -t.link_price(k, mm);
          for (std::size_t a = 0; a < t.road.size(); ++a)
            if (t.road[a] > v[a]) s += t.q[a] * (t.road[a] - v[a]);
          if (s > best) {
            best = s;
            bk = k;
            bm = mm;
          }
        }
      if (bk < 0) return false;  // not enough open pairs
      cfg.links.emplace_back(bk, bm);
      cfg.canonicalize();
    }
  }
  return true;
}

}  // namespace detail

// One well-tested best-improvement local search over configurations:
// open/close a terminal, add/remove a link, swap a link, swap a terminal,
// each candidate repaired to the cardinality rules and priced by its routing
// LP. The best-objective trace is nonincreasing by construction.
inline Solution local_search(const Instance &inst, const VariantSpec &variant,
                             const Configuration &start, const HeuristicParams &params = {},
                             std::vector<TracePoint> *trace = nullptr,
                             ConfigEvaluator *shared_eval = nullptr,
                             std::unordered_map<Configuration, double, ConfigurationHash>
                                 *shared_cache = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  const int p = inst.p();
  check_variant(variant, p);

  std::optional<ConfigEvaluator> local_eval;
  if (!shared_eval) local_eval.emplace(inst, variant, params.lp);
  ConfigEvaluator &ev = shared_eval ? *shared_eval : *local_eval;
  std::unordered_map<Configuration, double, ConfigurationHash> local_cache;
  auto &cache = shared_cache ? *shared_cache : local_cache;

  detail::SavingsTable table;
  table.build(inst, ev.model());

  auto value_of = [&](const Configuration &cfg) {
    if (auto it = cache.find(cfg); it != cache.end()) return it->second;
    Solution s = ev.evaluate(cfg);
    const double v = s.meta.status == SolveStatus::Infeasible ? kInf : s.objective;
    cache.emplace(cfg, v);
    return v;
  };

  Configuration cur = start;
  cur.canonicalize();
  double cur_val = value_of(cur);
  if (cur_val == kInf)
    throw std::invalid_argument("local_search: start configuration is infeasible for the variant");

  long long iter = 0;
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  if (trace) trace->push_back({iter, cur_val, elapsed()});

  const bool fixed_open = variant.kind == VariantKind::MinLinks || variant.kind == VariantKind::PL;
  const bool exact_links = variant.kind != VariantKind::MinLinks &&
                           variant.link_mode == LinkMode::Exact;

  // which families run, in order
  std::vector<std::string> families;
  {
    std::string tok;
    std::istringstream order(params.neighborhood_order);
    while (std::getline(order, tok, ',')) {
      if (tok != "terminals" && tok != "links" && tok != "swap-links" &&
          tok != "swap-terminals")
        throw std::invalid_argument("local_search: unknown neighborhood \"" + tok + "\"");
      families.push_back(tok);
    }
    if (families.empty())
      throw std::invalid_argument("local_search: empty neighborhood order");
  }

  while (true) {
    ++iter;
    std::vector<Configuration> neighbors;
    auto add_candidate = [&](Configuration cfg) {
      if (!detail::repair_config(cfg, variant, table)) return;
      if (cfg == cur) return;
      neighbors.push_back(std::move(cfg));
    };

    // candidate pairs for link moves: any pair for the free-count variants
    // (closed endpoints open up with the move), open pairs when q is pinned
    auto link_candidates = [&](const Configuration &base) {
      std::vector<std::pair<int, int>> out;
      if (fixed_open) {
        for (std::size_t ia = 0; ia < base.open_terminals.size(); ++ia)
          for (std::size_t ib = ia + 1; ib < base.open_terminals.size(); ++ib)
            out.emplace_back(base.open_terminals[ia], base.open_terminals[ib]);
      } else {
        for (int k = 0; k < p; ++k)
          for (int m = k + 1; m < p; ++m) out.emplace_back(k, m);
      }
      return out;
    };
    auto with_link = [](Configuration cfg, int k, int m) {
      cfg.open_terminals.push_back(k);
      cfg.open_terminals.push_back(m);
      cfg.links.emplace_back(k, m);
      cfg.canonicalize();
      return cfg;
    };

    auto gen_terminals = [&] {  // open or close one (free-count variants only)
      if (fixed_open) return;
      for (int k = 0; k < p; ++k) {
        Configuration cfg = cur;
        if (cur.is_open(k)) {
          cfg.open_terminals.erase(
              std::remove(cfg.open_terminals.begin(), cfg.open_terminals.end(), k),
              cfg.open_terminals.end());
        } else {
          cfg.open_terminals.push_back(k);
        }
        add_candidate(std::move(cfg));
      }
    };
    auto gen_links = [&] {  // add or remove one (not with an exact link count)
      if (exact_links) return;
      const int cap = variant.kind == VariantKind::MinLinks ? pair_count(p) : *variant.l;
      if (static_cast<int>(cur.links.size()) < cap)
        for (const auto &[k, m] : link_candidates(cur)) {
          if (cur.has_link(k, m)) continue;
          add_candidate(with_link(cur, k, m));
        }
      for (const auto &l : cur.links) {
        Configuration cfg = cur;
        cfg.links.erase(std::remove(cfg.links.begin(), cfg.links.end(), l), cfg.links.end());
        add_candidate(std::move(cfg));
      }
    };
    auto gen_swap_links = [&] {  // remove one, add another
      for (const auto &l : cur.links)
        for (const auto &[k, m] : link_candidates(cur)) {
          if (cur.has_link(k, m)) continue;
          Configuration cfg = cur;
          cfg.links.erase(std::remove(cfg.links.begin(), cfg.links.end(), l),
                          cfg.links.end());
          add_candidate(with_link(std::move(cfg), k, m));
        }
    };
    auto gen_swap_terminals = [&] {  // close one, open another
      for (int k : cur.open_terminals)
        for (int k2 = 0; k2 < p; ++k2) {
          if (cur.is_open(k2)) continue;
          Configuration cfg = cur;
          cfg.open_terminals.erase(
              std::remove(cfg.open_terminals.begin(), cfg.open_terminals.end(), k),
              cfg.open_terminals.end());
          cfg.open_terminals.push_back(k2);
          add_candidate(std::move(cfg));
        }
    };

    for (const auto &family : families) {
      if (family == "terminals") gen_terminals();
      else if (family == "links") gen_links();
      else if (family == "swap-links") gen_swap_links();
      else gen_swap_terminals();
    }

    double best_val = cur_val;
    const Configuration *best_cfg = nullptr;
    for (const auto &cfg : neighbors) {
      const double v = value_of(cfg);
      if (v < best_val - 1e-9 * std::max(1.0, std::fabs(best_val))) {
        best_val = v;
        best_cfg = &cfg;
      }
    }
    if (!best_cfg) break;
    cur = *best_cfg;
    cur_val = best_val;
    if (trace) trace->push_back({iter, cur_val, elapsed()});
    if (elapsed() > params.time_budget_s) break;
  }

  Solution out = ev.evaluate(cur);
  out.meta.status = SolveStatus::Feasible;
  out.meta.lp_solves = ev.lp_solves();
  out.meta.wall_time_s = elapsed();
  return out;
}

// Multi-start matheuristic: greedy start, local search, then seeded
// perturbations (two-link exchange plus one terminal flip) of the best
// configuration. Deterministic given the seed: the restart count drives the
// loop; the time budget is only a safety cap checked between restarts.
inline Solution solve_heuristic(const Instance &inst, const VariantSpec &variant,
                                const HeuristicParams &params = {},
                                std::vector<TracePoint> *trace = nullptr,
                                std::optional<double> reference_bound = std::nullopt) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  ConfigEvaluator ev(inst, variant, params.lp);
  std::unordered_map<Configuration, double, ConfigurationHash> cache;
  detail::SavingsTable table;
  table.build(inst, ev.model());

  HeuristicParams inner = params;

  Configuration start = greedy_construct(inst, variant, 0);
  Solution best = local_search(inst, variant, start, inner, trace, &ev, &cache);
  const int p = inst.p();

  Xoshiro256pp rng(params.seed);
  int non_improving = 0;
  for (int r = 1; r <= params.restarts; ++r) {
    if (elapsed() > params.time_budget_s) break;
    if (non_improving >= params.max_non_improving_restarts) break;

    // perturb the incumbent: exchange two links, flip one terminal, repair
    Configuration cfg = best.config;
    bool ok = false;
    for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
      cfg = best.config;
      for (int drop = 0; drop < 2 && !cfg.links.empty(); ++drop)
        cfg.links.erase(cfg.links.begin() + static_cast<long>(rng.below(cfg.links.size())));
      const bool fixed_open =
          variant.kind == VariantKind::MinLinks || variant.kind == VariantKind::PL;
      if (fixed_open) {
        if (!cfg.open_terminals.empty() &&
            static_cast<int>(cfg.open_terminals.size()) < p) {
          const int out_k = cfg.open_terminals[rng.below(cfg.open_terminals.size())];
          std::vector<int> closed;
          for (int k = 0; k < p; ++k)
            if (!cfg.is_open(k)) closed.push_back(k);
          const int in_k = closed[rng.below(closed.size())];
          cfg.open_terminals.erase(
              std::remove(cfg.open_terminals.begin(), cfg.open_terminals.end(), out_k),
              cfg.open_terminals.end());
          cfg.open_terminals.push_back(in_k);
        }
      } else {
        const int k = static_cast<int>(rng.below(p));
        if (cfg.is_open(k))
          cfg.open_terminals.erase(
              std::remove(cfg.open_terminals.begin(), cfg.open_terminals.end(), k),
              cfg.open_terminals.end());
        else
          cfg.open_terminals.push_back(k);
      }
      cfg.canonicalize();
      // random replacement links among open pairs
      std::vector<std::pair<int, int>> candidates;
      for (std::size_t ia = 0; ia < cfg.open_terminals.size(); ++ia)
        for (std::size_t ib = ia + 1; ib < cfg.open_terminals.size(); ++ib) {
          const auto pr = std::make_pair(cfg.open_terminals[ia], cfg.open_terminals[ib]);
          if (!cfg.has_link(pr.first, pr.second)) candidates.push_back(pr);
        }
      for (int add = 0; add < 2 && !candidates.empty(); ++add) {
        const auto pick = candidates.begin() + static_cast<long>(rng.below(candidates.size()));
        cfg.links.push_back(*pick);
        candidates.erase(pick);
        cfg.canonicalize();
      }
      ok = detail::repair_config(cfg, variant, table);
    }
    if (!ok) continue;

    Solution cand = local_search(inst, variant, cfg, inner, trace, &ev, &cache);
    if (cand.objective < best.objective - 1e-9 * std::max(1.0, std::fabs(best.objective))) {
      best = cand;
      non_improving = 0;
    } else {
      ++non_improving;
    }
  }

  best.meta.status = SolveStatus::Feasible;
  best.meta.lp_solves = ev.lp_solves();
  best.meta.wall_time_s = elapsed();
  if (reference_bound)
    best.meta.gap = (best.objective - *reference_bound) /
                    std::max(1.0, std::fabs(*reference_bound));
  return best;
}

}  // namespace itlp
