// Command line for the incomplete intermodal terminal location solvers:
// instance generation, solving (exact, heuristic, enumeration oracle),
// verification, benchmark sweeps, model statistics, LP export.
//
// Exit codes: 0 optimal/success, 10 feasible (not proved optimal), 20 limit
// hit without a proof, 25 verification found violations, 30 infeasible,
// 1 usage or data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "itlp/itlp.hpp"

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitFeasible = 10;
constexpr int kExitLimit = 20;
constexpr int kExitViolations = 25;
constexpr int kExitInfeasible = 30;
constexpr int kExitError = 1;

int status_exit_code(const itlp::Solution &sol) {
  switch (sol.meta.status) {
    case itlp::SolveStatus::Optimal: return kExitOptimal;
    case itlp::SolveStatus::Feasible: return sol.meta.limit_hit ? kExitLimit : kExitFeasible;
    case itlp::SolveStatus::TimeLimit: return kExitLimit;
    case itlp::SolveStatus::Infeasible: return kExitInfeasible;
  }
  return kExitError;
}

struct VariantFlags {
  std::string kind = "base";
  int l = -1;
  int q = -1;
  std::string link_mode = "exact";
  std::uint64_t t_seed = 7;

  itlp::VariantSpec build(int p) const {
    const itlp::LinkMode mode =
        link_mode == "atmost" ? itlp::LinkMode::AtMost : itlp::LinkMode::Exact;
    itlp::VariantSpec v;
    if (kind == "base") {
      if (l < 0) throw std::invalid_argument("--variant base requires --l");
      if (q >= 0) throw std::invalid_argument("--variant base takes no --q");
      v = itlp::VariantSpec::base(l, mode);
    } else if (kind == "min-links") {
      if (q < 0) throw std::invalid_argument("--variant min-links requires --q");
      if (l >= 0) throw std::invalid_argument("--variant min-links takes no --l");
      v = itlp::VariantSpec::min_links(q);
    } else if (kind == "handling") {
      if (l < 0) throw std::invalid_argument("--variant handling requires --l");
      if (q >= 0) throw std::invalid_argument("--variant handling takes no --q");
      v = itlp::VariantSpec::handling(l, itlp::generate_handling_costs(p, t_seed), mode);
    } else if (kind == "pl") {
      if (l < 0 || q < 0) throw std::invalid_argument("--variant pl requires --q and --l");
      v = itlp::VariantSpec::pl(q, l, mode);
    } else {
      throw std::invalid_argument("unknown variant: " + kind);
    }
    itlp::check_variant(v, p);
    return v;
  }

  std::string label(int n, int p) const {
    if (kind == "min-links") return itlp::encode_name(n, p, q, "T");
    if (kind == "pl") return itlp::encode_name(n, p, q, l);
    return itlp::encode_name(n, p, l, "TL");
  }
};

void add_variant_flags(CLI::App *cmd, VariantFlags &vf) {
  cmd->add_option("--variant", vf.kind, "base | min-links | handling | pl")
      ->check(CLI::IsMember({"base", "min-links", "handling", "pl"}));
  cmd->add_option("--l", vf.l, "link count (base, handling, pl)");
  cmd->add_option("--q", vf.q, "terminal count (min-links, pl)");
  cmd->add_option("--link-mode", vf.link_mode, "exact | atmost (default exact)")
      ->check(CLI::IsMember({"exact", "atmost"}));
  cmd->add_option("--t-seed", vf.t_seed, "handling-cost seed (handling variant)");
}

void print_row(const std::string &name, const itlp::Solution &sol, const std::string &variant) {
  if (sol.meta.limit_hit && sol.meta.status != itlp::SolveStatus::Optimal) {
    std::printf("%-15s %-13s %-11s *\n", name.c_str(), "*", "*");
    return;
  }
  if (sol.meta.status == itlp::SolveStatus::Infeasible) {
    std::printf("%-15s infeasible (%s)\n", name.c_str(), sol.meta.infeasibility_kind.c_str());
    return;
  }
  const int count = variant == "base" ? static_cast<int>(sol.config.open_terminals.size())
                                      : static_cast<int>(sol.config.links.size());
  std::printf("%-15s %-13.2f %-11.2f %d\n", name.c_str(), sol.objective / 1e7,
              sol.meta.wall_time_s, count);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"incomplete intermodal terminal location problem toolkit"};
  app.require_subcommand(1);

  // ---- gen ----
  auto *gen = app.add_subcommand("gen", "generate a random instance");
  itlp::GenSpec gs;
  std::string gen_out = "instance.itlp";
  std::string gen_name;
  gen->add_option("--n", gs.n, "customer count")->required();
  gen->add_option("--p", gs.p, "candidate site count")->required();
  gen->add_option("--seed", gs.seed, "random seed")->required();
  gen->add_option("--out", gen_out, "output path (default instance.itlp)");
  gen->add_option("--coord-max", gs.coord_max, "coordinate range upper end (default 1e4)");
  gen->add_option("--demand-max", gs.demand_max, "demand range upper end (default 500)");
  gen->add_option("--fixed-max", gs.fixed_max, "fixed-cost range upper end (default 5e5)");
  gen->add_option("--capacity-max", gs.capacity_max, "capacity range upper end (default 1e4)");
  gen->add_option("--alpha", gs.alpha, "rail discount factor in (0,1], default 0.5");
  gen->add_option("--name", gen_name, "instance label stored in the file");

  // ---- solve ----
  auto *solve = app.add_subcommand("solve", "solve one instance");
  std::string solve_instance, solve_out, solve_engine = "exact", solve_trace;
  VariantFlags solve_vf;
  double time_limit = 3600.0, heur_budget = 5.0;
  long long node_limit = 50'000'000;
  int restarts = 8;
  std::uint64_t heur_seed = 1;
  std::optional<double> reference;
  double ref_value = 0.0;
  solve->add_option("--instance", solve_instance, "instance file")->required();
  add_variant_flags(solve, solve_vf);
  solve->add_option("--engine", solve_engine, "exact | heuristic | oracle")
      ->check(CLI::IsMember({"exact", "heuristic", "oracle"}));
  solve->add_option("--time-limit", time_limit, "seconds (exact engine, default 3600)");
  solve->add_option("--node-limit", node_limit, "node cap (exact engine)");
  solve->add_option("--budget", heur_budget, "heuristic time budget seconds (default 5)");
  solve->add_option("--restarts", restarts, "heuristic restarts (default 8)");
  solve->add_option("--heur-seed", heur_seed, "heuristic seed (default 1)");
  auto *ref_opt = solve->add_option("--ref", ref_value, "reference objective for gap reporting");
  solve->add_option("--out", solve_out, "write the solution file here");
  solve->add_option("--trace", solve_trace, "write heuristic iteration trace CSV here");

  // ---- verify ----
  auto *verify = app.add_subcommand("verify", "check a solution file against its instance");
  std::string verify_instance, verify_solution;
  double verify_tol = 1e-6;
  verify->add_option("--instance", verify_instance, "instance file")->required();
  verify->add_option("--solution", verify_solution, "solution file")->required();
  verify->add_option("--feas-tol", verify_tol, "residual tolerance (default 1e-6)");

  // ---- bench ----
  auto *bench = app.add_subcommand("bench", "sweep a family of cells, render a table + CSV");
  itlp::BenchSpec bs;
  std::string bench_out, bench_kind = "base", bench_mode = "exact", bench_engine = "exact";
  bool bench_table = true;
  bench->add_option("--n", bs.ns, "customer counts")->required();
  bench->add_option("--p", bs.ps, "site counts")->required();
  bench->add_option("--values", bs.values, "l values (base/handling), q (min-links), q=l (pl)")
      ->required();
  bench->add_option("--seeds", bs.seeds, "instance seeds (default 1)");
  bench->add_option("--variant", bench_kind, "base | min-links | handling | pl")
      ->check(CLI::IsMember({"base", "min-links", "handling", "pl"}));
  bench->add_option("--link-mode", bench_mode, "exact | atmost")
      ->check(CLI::IsMember({"exact", "atmost"}));
  bench->add_option("--engine", bench_engine, "exact | heuristic | oracle")
      ->check(CLI::IsMember({"exact", "heuristic", "oracle"}));
  bench->add_option("--time-limit", bs.time_limit_s, "per-cell time limit (default 3600)");
  bench->add_option("--t-seed", bs.t_seed, "handling-cost seed");
  bench->add_option("--out", bench_out, "CSV output path");
  bench->add_flag("--table,!--no-table", bench_table, "render the table (default on)");

  // ---- info ----
  auto *info = app.add_subcommand("info", "model size statistics");
  int info_n = 0, info_p = 0;
  std::string info_instance;
  VariantFlags info_vf;
  info->add_option("--n", info_n, "customer count");
  info->add_option("--p", info_p, "site count");
  info->add_option("--instance", info_instance, "take n, p (and demand) from this file");
  add_variant_flags(info, info_vf);

  // ---- export-lp ----
  auto *exp = app.add_subcommand("export-lp", "write the model in LP interchange format");
  std::string exp_instance, exp_out = "model.lp";
  VariantFlags exp_vf;
  exp->add_option("--instance", exp_instance, "instance file")->required();
  add_variant_flags(exp, exp_vf);
  exp->add_option("--out", exp_out, "output path (default model.lp)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      itlp::Instance inst = itlp::generate(gs);
      inst.name = gen_name;
      itlp::write_instance_file(gen_out, inst);
      std::printf("wrote %s (n=%d p=%d seed=%llu)\n", gen_out.c_str(), gs.n, gs.p,
                  static_cast<unsigned long long>(gs.seed));
      return 0;
    }

    if (*solve) {
      const itlp::Instance inst = itlp::read_instance_file(solve_instance);
      const auto problems = itlp::validate(inst);
      if (!problems.empty()) {
        for (const auto &msg : problems) std::fprintf(stderr, "invalid instance: %s\n", msg.c_str());
        return kExitError;
      }
      const itlp::VariantSpec variant = solve_vf.build(inst.p());
      if (ref_opt->count() > 0) reference = ref_value;

      itlp::Solution sol;
      std::vector<itlp::TracePoint> trace;
      if (solve_engine == "exact") {
        itlp::BnbParams bp;
        bp.time_limit_s = time_limit;
        bp.node_limit = node_limit;
        sol = itlp::solve_bnb(inst, variant, bp);
      } else if (solve_engine == "heuristic") {
        itlp::HeuristicParams hp;
        hp.time_budget_s = heur_budget;
        hp.restarts = restarts;
        hp.seed = heur_seed;
        sol = itlp::solve_heuristic(inst, variant, hp, &trace, reference);
      } else {
        sol = itlp::brute_force(inst, variant);
      }

      const std::string label =
          inst.name.empty() ? solve_vf.label(inst.n(), inst.p()) : inst.name;
      print_row(label, sol, solve_vf.kind);
      if (sol.meta.status == itlp::SolveStatus::Infeasible)
        std::fprintf(stderr, "infeasible: %s\n", sol.meta.infeasibility_kind.c_str());
      if (sol.meta.gap >= 0.0) std::printf("gap vs reference: %.4f%%\n", sol.meta.gap * 100.0);
      if (!solve_out.empty()) {
        const std::string tseed = solve_vf.kind == "handling"
                                      ? std::to_string(solve_vf.t_seed)
                                      : std::string("-");
        itlp::write_solution_file(solve_out, sol, variant, label, tseed);
      }
      if (!solve_trace.empty()) {
        std::ofstream tout(solve_trace);
        tout << "iteration,best_objective,elapsed_s\n";
        for (const auto &t : trace)
          tout << t.iteration << "," << t.best_objective << "," << t.elapsed_s << "\n";
      }
      return status_exit_code(sol);
    }

    if (*verify) {
      const itlp::Instance inst = itlp::read_instance_file(verify_instance);
      itlp::SolutionFile sf = itlp::read_solution_file(verify_solution);
      if (sf.variant.kind == itlp::VariantKind::Handling) {
        if (sf.t_seed == "-") {
          std::fprintf(stderr, "handling solution lacks its t_seed; cannot verify\n");
          return kExitError;
        }
        sf.variant.handling_cost =
            itlp::generate_handling_costs(inst.p(), std::stoull(sf.t_seed));
      }
      const itlp::CheckReport rep = itlp::check_solution(inst, sf.variant, sf.sol);
      std::printf("eq2 balance residual    %.3e\n", rep.eq2_max);
      std::printf("eq3 capacity residual   %.3e\n", rep.eq3_max);
      std::printf("eq4/5 link violations   %d\n", rep.eq45_violations);
      std::printf("eq7 link-count residual %.3e\n", rep.eq7_resid);
      std::printf("eq8 linking residual    %.3e\n", rep.eq8_max);
      std::printf("eq10 open-count residual %.3e\n", rep.eq10_resid);
      std::printf("objective claimed/recomputed %.10g / %.10g (rel err %.3e)\n",
                  rep.objective_claimed, rep.objective_recomputed, rep.objective_rel_err);
      if (rep.diag_check_applicable)
        std::printf("zero-diagonal-flow check: ratio %.3e -> %s\n", rep.diag_flow_ratio,
                    rep.diag_flow_ok ? "ok" : "VIOLATED");
      for (const auto &n : rep.notes) std::printf("note: %s\n", n.c_str());
      if (rep.ok(verify_tol)) {
        std::printf("OK\n");
        return 0;
      }
      std::printf("VIOLATIONS FOUND\n");
      return kExitViolations;
    }

    if (*bench) {
      bs.kind = bench_kind == "min-links"  ? itlp::VariantKind::MinLinks
                : bench_kind == "handling" ? itlp::VariantKind::Handling
                : bench_kind == "pl"       ? itlp::VariantKind::PL
                                           : itlp::VariantKind::Base;
      bs.mode = bench_mode == "atmost" ? itlp::LinkMode::AtMost : itlp::LinkMode::Exact;
      bs.engine = bench_engine;
      const std::vector<itlp::BenchRow> rows = itlp::run_bench(bs);
      if (bench_table) itlp::render_table(std::cout, rows);
      if (!bench_out.empty()) {
        std::ofstream out(bench_out);
        if (!out) throw std::runtime_error("cannot open for writing: " + bench_out);
        itlp::write_bench_csv(out, rows);
      }
      for (const auto &r : rows)
        if (!r.error.empty()) return kExitError;
      return 0;
    }

    if (*info) {
      int n = info_n, p = info_p;
      std::optional<itlp::Instance> inst;
      if (!info_instance.empty()) {
        inst = itlp::read_instance_file(info_instance);
        n = inst->n();
        p = inst->p();
      }
      if (n <= 0 || p <= 0)
        throw std::invalid_argument("info needs --n and --p (or --instance)");
      const itlp::ModelStats paper = itlp::paper_counting_stats(n, p);
      const long long nc = static_cast<long long>(n) * n;
      const long long pc = static_cast<long long>(p) * p;
      std::printf("model size for n=%d, p=%d (full scheme, ordered pairs)\n", n, p);
      std::printf("  constraints %lld  (n^2 p^2 + 3 p^2 + n^2 + p + 1 = %lld)\n",
                  paper.num_constraints, nc * pc + 3 * pc + nc + p + 1);
      std::printf("  variables   %lld  (n^2 p^2 + n^2 + p^2 = %lld)\n", paper.num_variables,
                  nc * pc + nc + pc);
      std::printf("  binaries    %lld\n", paper.num_binaries);
      std::printf("  per family: eq2 %lld, eq3 %lld, eq4 %lld, eq5 %lld, eq6 %lld, eq7 %lld, "
                  "eq8 %lld\n",
                  paper.eq2, paper.eq3, paper.eq4, paper.eq5, paper.eq6, paper.eq7, paper.eq8);
      if (inst) {
        const itlp::VariantSpec variant = info_vf.build(p);
        const itlp::MipModel model = itlp::build_variant(*inst, variant);
        if (model.structurally_infeasible) {
          std::printf("reduced model: structurally infeasible (%s)\n",
                      model.infeasibility_reason.c_str());
        } else {
          const itlp::ModelStats red = itlp::model_stats(model);
          std::printf("reduced model as built (variant %s): %lld rows, %lld vars, %lld "
                      "binaries\n",
                      itlp::to_string(variant.kind), red.num_constraints, red.num_variables,
                      red.num_binaries);
          std::printf("  per family: eq2 %lld, eq3 %lld, eq4 %lld, eq5 %lld, eq7 %lld, eq8 "
                      "%lld, eq10 %lld\n",
                      red.eq2, red.eq3, red.eq4, red.eq5, red.eq7, red.eq8, red.eq10);
        }
      }
      return 0;
    }

    if (*exp) {
      const itlp::Instance inst = itlp::read_instance_file(exp_instance);
      const itlp::VariantSpec variant = exp_vf.build(inst.p());
      const itlp::MipModel model = itlp::build_variant(inst, variant);
      if (model.structurally_infeasible) {
        std::fprintf(stderr, "infeasible: structural: %s\n",
                     model.infeasibility_reason.c_str());
        return kExitInfeasible;
      }
      itlp::export_lp_file(exp_out, model);
      std::printf("wrote %s\n", exp_out.c_str());
      return 0;
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
