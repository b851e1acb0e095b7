#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "itlp/bnb.hpp"
#include "itlp/brute_force.hpp"
#include "itlp/generator.hpp"
#include "itlp/heuristic.hpp"
#include "itlp/names.hpp"

namespace itlp {

// One benchmark cell. Costs are stored unscaled; the 10^7 scaling is applied
// at render time only.
struct BenchRow {
  std::string instance;
  std::string variant;
  std::string link_mode;
  int n = 0, p = 0;
  int l = -1, q = -1;
  std::uint64_t seed = 0;
  std::string engine;
  std::string status;
  bool limit_hit = false;
  double objective = 0.0;
  double time_s = 0.0;
  int terminals = 0;
  int links = 0;
  long long nodes = 0;
  long long lp_solves = 0;
  std::string error;  // nonempty when this cell failed

  // variant-specific count column: terminals for the base model (its link
  // count is prescribed), links for the others
  int reported_count() const { return variant == "base" ? terminals : links; }
};

struct BenchSpec {
  std::vector<int> ns{10};
  std::vector<int> ps{10};
  std::vector<int> values{2, 4, 6, 8, 10, 12};  // l, or q for min-links, q=l for pl
  std::vector<std::uint64_t> seeds{1};
  VariantKind kind = VariantKind::Base;
  LinkMode mode = LinkMode::Exact;
  std::string engine = "exact";  // exact | heuristic | oracle
  double time_limit_s = 3600.0;
  std::uint64_t t_seed = 7;  // handling-cost seed for the handling variant
  HeuristicParams heur;
  GenSpec gen_template;  // n, p, seed overwritten per cell
};

inline VariantSpec bench_variant(const BenchSpec &spec, int p, int value) {
  switch (spec.kind) {
    case VariantKind::Base: return VariantSpec::base(value, spec.mode);
    case VariantKind::MinLinks: return VariantSpec::min_links(value);
    case VariantKind::Handling:
      return VariantSpec::handling(value, generate_handling_costs(p, spec.t_seed), spec.mode);
    case VariantKind::PL: return VariantSpec::pl(value, value, spec.mode);
  }
  throw std::invalid_argument("bench_variant: bad kind");
}

inline std::string bench_cell_name(VariantKind kind, int n, int p, int value) {
  switch (kind) {
    case VariantKind::Base:
    case VariantKind::Handling: return encode_name(n, p, value, "TL");
    case VariantKind::MinLinks: return encode_name(n, p, value, "T");
    case VariantKind::PL: return encode_name(n, p, value, value);
  }
  return "?";
}

// Runs the sweep cell by cell in spec order (n, p, value, seed nested).
// Failures are recorded in their row; the sweep continues.
inline std::vector<BenchRow> run_bench(const BenchSpec &spec) {
  std::vector<BenchRow> rows;
  for (int n : spec.ns)
    for (int p : spec.ps)
      for (int value : spec.values)
        for (std::uint64_t seed : spec.seeds) {
          BenchRow row;
          row.instance = bench_cell_name(spec.kind, n, p, value);
          row.variant = to_string(spec.kind);
          row.link_mode = to_string(spec.mode);
          row.n = n;
          row.p = p;
          if (spec.kind == VariantKind::MinLinks) row.q = value;
          else if (spec.kind == VariantKind::PL) row.q = row.l = value;
          else row.l = value;
          row.seed = seed;
          row.engine = spec.engine;
          try {
            GenSpec gs = spec.gen_template;
            gs.n = n;
            gs.p = p;
            gs.seed = seed;
            const Instance inst = generate(gs);
            const VariantSpec variant = bench_variant(spec, p, value);

            Solution sol;
            if (spec.engine == "exact") {
              BnbParams bp;
              bp.time_limit_s = spec.time_limit_s;
              sol = solve_bnb(inst, variant, bp);
            } else if (spec.engine == "heuristic") {
              sol = solve_heuristic(inst, variant, spec.heur);
            } else if (spec.engine == "oracle") {
              sol = brute_force(inst, variant);
            } else {
              throw std::invalid_argument("unknown engine: " + spec.engine);
            }
            row.status = to_string(sol.meta.status);
            row.limit_hit = sol.meta.limit_hit;
            row.objective = sol.objective;
            row.time_s = sol.meta.wall_time_s;
            row.terminals = static_cast<int>(sol.config.open_terminals.size());
            row.links = static_cast<int>(sol.config.links.size());
            row.nodes = sol.meta.nodes;
            row.lp_solves = sol.meta.lp_solves;
          } catch (const std::exception &e) {
            row.error = e.what();
            row.status = "error";
          }
          rows.push_back(std::move(row));
        }
  return rows;
}

namespace detail {
inline std::string fixed2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}
}  // namespace detail

// Paper-style table: Instance, Cost (x10^7), Time (s), and the variant's
// count column; limit-hit cells render as "*".
inline void render_table(std::ostream &out, const std::vector<BenchRow> &rows) {
  if (rows.empty()) return;
  const bool base_kind = rows.front().variant == "base";
  out << "Instance        Cost (x10^7)  Time (s)    " << (base_kind ? "# terminals" : "# links")
      << "\n";
  for (const auto &r : rows) {
    char line[160];
    if (!r.error.empty()) {
      std::snprintf(line, sizeof line, "%-15s %-13s %-11s %s", r.instance.c_str(), "error", "-",
                    r.error.c_str());
    } else if (r.limit_hit && r.status != "optimal") {
      std::snprintf(line, sizeof line, "%-15s %-13s %-11s %s", r.instance.c_str(), "*", "*",
                    "*");
    } else if (r.status == "infeasible") {
      std::snprintf(line, sizeof line, "%-15s %-13s %-11s %s", r.instance.c_str(), "infeasible",
                    "-", "-");
    } else {
      std::snprintf(line, sizeof line, "%-15s %-13s %-11s %d", r.instance.c_str(),
                    detail::fixed2(r.objective / 1e7).c_str(), detail::fixed2(r.time_s).c_str(),
                    r.reported_count());
    }
    out << line << "\n";
  }
}

inline void write_bench_csv(std::ostream &out, const std::vector<BenchRow> &rows) {
  out << "instance,variant,link_mode,n,p,l,q,seed,engine,status,limit_hit,objective,"
         "cost_x1e7,time_s,terminals,links,nodes,lp_solves,error\n";
  for (const auto &r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", r.objective);
    out << r.instance << "," << r.variant << "," << r.link_mode << "," << r.n << "," << r.p
        << "," << r.l << "," << r.q << "," << r.seed << "," << r.engine << "," << r.status
        << "," << (r.limit_hit ? 1 : 0) << "," << buf << "," << detail::fixed2(r.objective / 1e7)
        << "," << detail::fixed2(r.time_s) << "," << r.terminals << "," << r.links << ","
        << r.nodes << "," << r.lp_solves << "," << r.error << "\n";
  }
}

}  // namespace itlp
