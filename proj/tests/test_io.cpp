#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "itlp/bnb.hpp"
#include "itlp/generator.hpp"
#include "itlp/io.hpp"
#include "itlp/lp_export.hpp"

using namespace itlp;

TEST_CASE("instance files round-trip bit for bit") {
  GenSpec gs;
  gs.n = 6;
  gs.p = 4;
  gs.seed = 2718;
  Instance inst = generate(gs);
  inst.name = "6C4L";

  std::stringstream buf;
  write_instance(buf, inst);
  const Instance back = read_instance(buf);

  CHECK(back.name == inst.name);
  CHECK(back.demand == inst.demand);
  CHECK(back.road_cost == inst.road_cost);
  CHECK(back.access_cost == inst.access_cost);
  CHECK(back.inter_cost == inst.inter_cost);
  CHECK(back.fixed_cost == inst.fixed_cost);
  CHECK(back.capacity == inst.capacity);
  CHECK(back.alpha == inst.alpha);
  CHECK(back.triangle_ok);

  SECTION("and render identically the second time") {
    std::stringstream again;
    write_instance(again, back);
    std::stringstream first;
    write_instance(first, inst);
    CHECK(again.str() == first.str());
  }
}

TEST_CASE("explicit-cost instances round-trip without assuming the triangle inequality") {
  Mat demand(2, 2);
  demand(0, 1) = 3.5;
  Mat road(2, 2), access(2, 2), inter(2, 2);
  road(0, 1) = road(1, 0) = 7.25;
  access(0, 0) = 0.125;
  inter(0, 1) = inter(1, 0) = 2.0;
  const Instance inst =
      make_instance_explicit(road, access, inter, demand, {1.0, 2.0}, {3.0, 4.0}, 0.75);

  std::stringstream buf;
  write_instance(buf, inst);
  const Instance back = read_instance(buf);
  CHECK(back.road_cost == inst.road_cost);
  CHECK_FALSE(back.triangle_ok);
  CHECK(back.alpha == 0.75);
}

TEST_CASE("instance parse errors name the failing token") {
  using Catch::Matchers::ContainsSubstring;
  {
    std::stringstream bad("not-an-instance\n");
    CHECK_THROWS_WITH(read_instance(bad), ContainsSubstring("itlp-instance-v1"));
  }
  {
    std::stringstream bad("itlp-instance-v1 name - n 2 p x\n");
    CHECK_THROWS_WITH(read_instance(bad), ContainsSubstring("not an integer"));
  }
  {
    std::stringstream bad("itlp-instance-v1 name - n 2 p 1 alpha 0.5 coords 0 demand 0 1 1 0 "
                          "fixed 1 capacity 1 costs bogus\n");
    CHECK_THROWS_WITH(read_instance(bad), ContainsSubstring("derived or explicit"));
  }
  {
    // derived costs without coordinates cannot be rebuilt
    std::stringstream bad("itlp-instance-v1 name - n 2 p 1 alpha 0.5 coords 0 demand 0 1 1 0 "
                          "fixed 1 capacity 1 costs derived end\n");
    CHECK_THROWS_WITH(read_instance(bad), ContainsSubstring("requires coordinates"));
  }
}

TEST_CASE("solution files round-trip") {
  GenSpec gs;
  gs.n = 4;
  gs.p = 3;
  gs.seed = 11;
  const Instance inst = generate(gs);
  const VariantSpec v = VariantSpec::base(1, LinkMode::Exact);
  const Solution sol = solve_bnb(inst, v);
  REQUIRE(sol.meta.status == SolveStatus::Optimal);

  std::stringstream buf;
  write_solution(buf, sol, v, "4C3L1TL");
  const SolutionFile back = read_solution(buf);

  CHECK(back.instance_label == "4C3L1TL");
  CHECK(back.variant.kind == VariantKind::Base);
  REQUIRE(back.variant.l);
  CHECK(*back.variant.l == 1);
  CHECK(back.variant.link_mode == LinkMode::Exact);
  CHECK(back.sol.meta.status == SolveStatus::Optimal);
  CHECK(back.sol.objective == sol.objective);
  CHECK(back.sol.config == sol.config);
  REQUIRE(back.sol.w.size() == sol.w.size());
  for (std::size_t t = 0; t < sol.w.size(); ++t) {
    CHECK(back.sol.w[t].i == sol.w[t].i);
    CHECK(back.sol.w[t].value == sol.w[t].value);
  }
  REQUIRE(back.sol.x.size() == sol.x.size());
  CHECK(back.sol.breakdown.routing_road == sol.breakdown.routing_road);
}

TEST_CASE("lp export carries the canonical names and structure") {
  GenSpec gs;
  gs.n = 2;
  gs.p = 2;
  gs.seed = 4;
  const Instance inst = generate(gs);
  const MipModel model = build_base(inst, 1, LinkMode::Exact);
  std::stringstream buf;
  export_lp(buf, model);
  const std::string text = buf.str();

  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Binaries") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
  CHECK(text.find("x_0_1_0_1") != std::string::npos);
  CHECK(text.find("w_0_1") != std::string::npos);
  CHECK(text.find("z_0_1") != std::string::npos);
  CHECK(text.find("e7:") != std::string::npos);
  CHECK(text.find("e2_0_1:") != std::string::npos);

  SECTION("structurally infeasible models refuse to export") {
    const MipModel bad = build_base(inst, 5, LinkMode::Exact);
    CHECK_THROWS_AS(export_lp(buf, bad), std::invalid_argument);
  }
}
