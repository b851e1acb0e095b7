#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "itlp/evaluate.hpp"

namespace itlp {

// Enumeration oracle: every configuration consistent with the variant's
// cardinality rules, each priced by its routing LP. Exponential by design;
// capped and refused beyond the cap. Routing LP values are cached per
// configuration, so sweeping the four variants over one instance shares the
// expensive part.
struct BruteForceParams {
  long long enumeration_cap = 1'000'000;
  SimplexOptions lp;
};

namespace detail {

inline long long count_link_subsets(int npairs, int l, LinkMode mode, VariantKind kind) {
  // number of admissible link sets over npairs candidate pairs
  if (kind == VariantKind::MinLinks) return 1LL << npairs;
  long long total = 0;
  // C(npairs, s) summed over admissible sizes
  std::vector<long long> binom(npairs + 1, 0);
  binom[0] = 1;
  for (int i = 1; i <= npairs; ++i)
    for (int j = i; j >= 1; --j) binom[j] += binom[j - 1];
  const int lo = mode == LinkMode::Exact ? l : 0;
  const int hi = l;
  for (int s = lo; s <= hi && s <= npairs; ++s) total += binom[s];
  return total;
}

}  // namespace detail

inline Solution brute_force(const Instance &inst, const VariantSpec &variant,
                            const BruteForceParams &params = {}) {
  const int p = inst.p();
  check_variant(variant, p);
  if (p > 30) throw std::invalid_argument("brute_force: p too large to enumerate");

  const auto t0 = std::chrono::steady_clock::now();

  Solution best;
  best.meta.status = SolveStatus::Infeasible;

  std::string why;
  if (structurally_infeasible(variant, p, &why)) {
    best.meta.infeasibility_kind = "structural: " + why;
    return best;
  }

  // count before enumerating; refuse if beyond the cap
  const bool fixed_open = variant.kind == VariantKind::MinLinks || variant.kind == VariantKind::PL;
  long long total = 0;
  for (std::uint32_t open = 0; open < (1u << p); ++open) {
    const int nopen = __builtin_popcount(open);
    if (fixed_open && nopen != *variant.q_terminals) continue;
    const int npairs = nopen * (nopen - 1) / 2;
    if (npairs > 40) {
      total = params.enumeration_cap + 1;
      break;
    }
    total += detail::count_link_subsets(npairs, variant.l ? *variant.l : 0,
                                        variant.link_mode, variant.kind);
    if (total > params.enumeration_cap) break;
  }
  if (total > params.enumeration_cap)
    throw std::invalid_argument("brute_force: enumeration would exceed the cap of " +
                                std::to_string(params.enumeration_cap) + " configurations");

  ConfigEvaluator ev(inst, variant, params.lp);
  // routing cost depends on the configuration only; variant constants are
  // closed form on top
  std::unordered_map<Configuration, double, ConfigurationHash> routing_cache;

  const Mat *t = variant.handling_cost ? &*variant.handling_cost : nullptr;
  double best_val = kInf;
  Configuration best_cfg;
  bool found = false;
  long long evals = 0;

  for (std::uint32_t open = 0; open < (1u << p); ++open) {
    const int nopen = __builtin_popcount(open);
    if (fixed_open && nopen != *variant.q_terminals) continue;

    std::vector<int> open_list;
    for (int k = 0; k < p; ++k)
      if (open & (1u << k)) open_list.push_back(k);
    std::vector<std::pair<int, int>> cand_pairs;
    for (std::size_t a = 0; a < open_list.size(); ++a)
      for (std::size_t b = a + 1; b < open_list.size(); ++b)
        cand_pairs.emplace_back(open_list[a], open_list[b]);
    const int npairs = static_cast<int>(cand_pairs.size());

    for (std::uint64_t lmask = 0; lmask < (1ull << npairs); ++lmask) {
      const int nlinks = __builtin_popcountll(lmask);
      if (variant.kind != VariantKind::MinLinks) {
        if (variant.link_mode == LinkMode::Exact && nlinks != *variant.l) continue;
        if (variant.link_mode == LinkMode::AtMost && nlinks > *variant.l) continue;
      }
      Configuration cfg;
      cfg.open_terminals = open_list;
      for (int b = 0; b < npairs; ++b)
        if (lmask & (1ull << b)) cfg.links.push_back(cand_pairs[b]);

      double routing;
      if (auto it = routing_cache.find(cfg); it != routing_cache.end()) {
        routing = it->second;
      } else {
        const Solution s = ev.evaluate(cfg);
        routing = s.breakdown.routing_road + s.breakdown.routing_intermodal;
        routing_cache.emplace(cfg, routing);
      }
      ++evals;

      double value = routing;
      switch (variant.kind) {
        case VariantKind::Base:
          for (int k : cfg.open_terminals) value += inst.fixed_cost[k];
          break;
        case VariantKind::MinLinks:
          for (const auto &[k, m] : cfg.links) value += inst.inter_cost(k, m);
          break;
        case VariantKind::Handling:
          for (int k : cfg.open_terminals) value += inst.fixed_cost[k];
          for (const auto &[k, m] : cfg.links) value += (*t)(k, m) + (*t)(m, k);
          break;
        case VariantKind::PL:
          break;
      }
      if (!found || value < best_val) {
        found = true;
        best_val = value;
        best_cfg = cfg;
      }
    }
  }

  if (!found) {
    best.meta.infeasibility_kind = "no configuration admits the cardinality constraints";
    return best;
  }
  best = ev.evaluate(best_cfg);  // re-solve the winner for its flows
  best.meta.status = SolveStatus::Optimal;
  best.meta.lp_solves = ev.lp_solves();
  best.meta.nodes = evals;
  best.meta.best_bound = best.objective;
  best.meta.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return best;
}

}  // namespace itlp
