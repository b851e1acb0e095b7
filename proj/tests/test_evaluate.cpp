#include <catch2/catch_amalgamated.hpp>

#include "itlp/check.hpp"
#include "itlp/evaluate.hpp"
#include "itlp/generator.hpp"

using namespace itlp;

namespace {

// independent route-enumeration oracle for the fixed-configuration routing
// value, valid only when no capacity binds: each pair ships its whole demand
// over the cheapest admissible channel
double slack_capacity_routing(const Instance &inst, const Configuration &cfg) {
  double total = 0.0;
  for (int i = 0; i < inst.n(); ++i)
    for (int j = 0; j < inst.n(); ++j) {
      const double q = inst.demand(i, j);
      if (q <= 0.0) continue;
      double best = inst.road_cost(i, j);
      for (int k : cfg.open_terminals)
        best = std::min(best, intermodal_unit_cost(inst, i, j, k, k));
      for (const auto &[k, m] : cfg.links) {
        best = std::min(best, intermodal_unit_cost(inst, i, j, k, m));
        best = std::min(best, intermodal_unit_cost(inst, i, j, m, k));
      }
      total += q * best;
    }
  return total;
}

Instance uncapacitated(int n, int p, std::uint64_t seed) {
  GenSpec gs;
  gs.n = n;
  gs.p = p;
  gs.seed = seed;
  Instance inst = generate(gs);
  for (auto &c : inst.capacity) c = 1e9;  // nothing binds
  return inst;
}

}  // namespace

TEST_CASE("empty configuration routes everything by road") {
  GenSpec gs;
  gs.n = 4;
  gs.p = 3;
  gs.seed = 77;
  const Instance inst = generate(gs);
  const Solution s =
      evaluate_configuration(inst, VariantSpec::base(0, LinkMode::AtMost), Configuration{});
  CHECK(s.objective == Catch::Approx(total_road_objective(inst)).epsilon(1e-9));
  CHECK(s.breakdown.routing_intermodal == 0.0);
  CHECK(s.x.empty());
}

TEST_CASE("fixed-config routing equals per-pair best channel when capacity is slack") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    const Instance inst = uncapacitated(4, 4, seed);
    Configuration cfg;
    cfg.open_terminals = {0, 2, 3};
    cfg.links = {{0, 2}, {2, 3}};
    VariantSpec v = VariantSpec::base(2, LinkMode::Exact);
    const Solution s = evaluate_configuration(inst, v, cfg);
    const double expected = slack_capacity_routing(inst, cfg);
    CHECK(s.breakdown.routing_road + s.breakdown.routing_intermodal ==
          Catch::Approx(expected).epsilon(1e-9));
    // fixed costs of the three opens ride on top
    const double fk = inst.fixed_cost[0] + inst.fixed_cost[2] + inst.fixed_cost[3];
    CHECK(s.objective == Catch::Approx(expected + fk).epsilon(1e-9));
  }
}

TEST_CASE("hand-built capacity bottleneck splits the flow") {
  // one demand pair, one link; rail is cheaper but the entry terminal caps at 4
  Mat demand(2, 2);
  demand(0, 1) = 10.0;
  Mat road(2, 2), access(2, 2), inter(2, 2);
  road(0, 1) = road(1, 0) = 100.0;
  access(0, 0) = 1.0;    // i=0 -> k=0
  access(0, 1) = 200.0;  // cross access priced out so no single-terminal route pays
  access(1, 0) = 200.0;
  access(1, 1) = 1.0;    // j=1 -> m=1
  inter(0, 1) = inter(1, 0) = 10.0;
  Instance inst = make_instance_explicit(road, access, inter, demand, {0.0, 0.0},
                                         {4.0, 1000.0}, 0.5);
  // unit rail cost 1 + 5 + 1 = 7 beats 100; only 4 units fit through terminal 0
  Configuration cfg;
  cfg.open_terminals = {0, 1};
  cfg.links = {{0, 1}};
  const Solution s = evaluate_configuration(inst, VariantSpec::base(1, LinkMode::Exact), cfg);
  CHECK(s.objective == Catch::Approx(4.0 * 7.0 + 6.0 * 100.0).epsilon(1e-9));
  REQUIRE(s.x.size() == 1);
  CHECK(s.x[0].value == Catch::Approx(4.0));
}

TEST_CASE("diagonal route consumes two units of capacity per unit of flow") {
  // no triangle inequality: transfer through the lone terminal is cheap,
  // but Eq. 3 as printed charges it twice
  Mat demand(2, 2);
  demand(0, 1) = 10.0;
  Mat road(2, 2), access(2, 2), inter(1, 1);
  road(0, 1) = road(1, 0) = 100.0;
  access(0, 0) = 1.0;
  access(1, 0) = 1.0;
  Instance inst =
      make_instance_explicit(road, access, inter, demand, {5.0}, {10.0}, 0.5);
  Configuration cfg;
  cfg.open_terminals = {0};
  const Solution s = evaluate_configuration(inst, VariantSpec::base(0, LinkMode::Exact), cfg);
  // 5 units through the terminal (2*5 = 10 = capacity), 5 by road, plus f = 5
  CHECK(s.objective == Catch::Approx(5.0 * 2.0 + 5.0 * 100.0 + 5.0).epsilon(1e-9));
}

TEST_CASE("cardinality mismatches are reported without a solve") {
  const Instance inst = uncapacitated(3, 3, 5);
  ConfigEvaluator ev(inst, VariantSpec::base(2, LinkMode::Exact));
  Configuration cfg;
  cfg.open_terminals = {0, 1};
  cfg.links = {{0, 1}};  // one link, needs exactly two
  const Solution s = ev.evaluate(cfg);
  CHECK(s.meta.status == SolveStatus::Infeasible);
  CHECK(ev.lp_solves() == 0);

  SECTION("at-most accepts fewer links") {
    ConfigEvaluator ev2(inst, VariantSpec::base(2, LinkMode::AtMost));
    CHECK(ev2.evaluate(cfg).meta.status == SolveStatus::Feasible);
  }
  SECTION("q mismatch for pl") {
    ConfigEvaluator ev3(inst, VariantSpec::pl(3, 1, LinkMode::Exact));
    CHECK(ev3.evaluate(cfg).meta.status == SolveStatus::Infeasible);
  }
  SECTION("link touching a closed terminal throws") {
    Configuration bad;
    bad.open_terminals = {0};
    bad.links = {{0, 1}};
    CHECK_THROWS_AS(ev.evaluate(bad), std::invalid_argument);
  }
}

TEST_CASE("evaluator agrees with the fix_configuration path") {
  GenSpec gs;
  gs.n = 4;
  gs.p = 3;
  gs.seed = 404;
  const Instance inst = generate(gs);
  const VariantSpec variant = VariantSpec::base(1, LinkMode::Exact);
  const MipModel model = build_variant(inst, variant);

  Configuration cfg;
  cfg.open_terminals = {1, 2};
  cfg.links = {{1, 2}};

  ConfigEvaluator ev(inst, variant);
  const Solution via_eval = ev.evaluate(cfg);

  const MipModel fixed = fix_configuration(model, cfg);
  const LpBuild b = detail::build_lp(fixed, ZFix{}, nullptr, true);
  REQUIRE_FALSE(b.infeasible);
  const LpSolution via_fix = solve_lp(b.lp);
  REQUIRE(via_fix.status == LpStatus::Optimal);
  CHECK(via_eval.objective == Catch::Approx(via_fix.objective).epsilon(1e-10));
}

TEST_CASE("evaluated solutions verify cleanly") {
  GenSpec gs;
  gs.n = 5;
  gs.p = 4;
  gs.seed = 7;
  const Instance inst = generate(gs);
  const VariantSpec v = VariantSpec::base(2, LinkMode::Exact);
  Configuration cfg;
  cfg.open_terminals = {0, 1, 3};
  cfg.links = {{0, 1}, {1, 3}};
  const Solution s = evaluate_configuration(inst, v, cfg);
  const CheckReport rep = check_solution(inst, v, s);
  CHECK(rep.feasible());
  CHECK(rep.objective_rel_err <= 1e-9);
  CHECK(rep.diag_flow_ok);
}
