#include <catch2/catch_amalgamated.hpp>

#include "itlp/evaluate.hpp"
#include "itlp/formulation.hpp"
#include "itlp/generator.hpp"
#include "itlp/lp_simplex.hpp"
#include "itlp/model.hpp"

using namespace itlp;

namespace {
Instance tiny(int n, int p, std::uint64_t seed) {
  GenSpec gs;
  gs.n = n;
  gs.p = p;
  gs.seed = seed;
  return generate(gs);
}
}  // namespace

TEST_CASE("full-scheme counts match the closed-form totals") {
  SECTION("n=3 p=2 worked example") {
    const ModelStats s = paper_counting_stats(3, 2);
    CHECK(s.num_constraints == 60);  // 36 + 12 + 9 + 2 + 1
    CHECK(s.num_variables == 49);    // 36 + 9 + 4
  }
  SECTION("n=10 p=10") {
    const ModelStats s = paper_counting_stats(10, 10);
    CHECK(s.num_constraints == 10411);
    CHECK(s.num_variables == 10200);
  }
  SECTION("formulas hold across the grid") {
    for (int n = 1; n <= 20; ++n)
      for (int p = 1; p <= 20; ++p) {
        const ModelStats s = paper_counting_stats(n, p);
        const long long nn = static_cast<long long>(n) * n;
        const long long pp = static_cast<long long>(p) * p;
        REQUIRE(s.num_constraints == nn * pp + 3 * pp + nn + p + 1);
        REQUIRE(s.num_variables == nn * pp + nn + pp);
      }
  }
}

TEST_CASE("reduced model row counts by tag") {
  const Instance inst = tiny(3, 3, 17);
  const MipModel model = build_base(inst, 1, LinkMode::Exact);
  for (const auto &row : model.rows)
    for (const int v : row.idx) REQUIRE(v < static_cast<int>(model.vars.size()));
  const ModelStats s = model_stats(model);
  const long long na = static_cast<long long>(model.active_pairs.size());
  CHECK(na == 6);  // all off-diagonal demands positive for this seed
  CHECK(s.eq2 == na);
  CHECK(s.eq3 == 3);
  CHECK(s.eq4 == 3);
  CHECK(s.eq5 == 3);
  CHECK(s.eq7 == 1);
  CHECK(s.eq8 == na * 9);
  CHECK(s.eq10 == 0);
  CHECK(s.num_binaries == 3 + 3);
  CHECK(s.num_constraints < paper_counting_stats(3, 3).num_constraints);
}

TEST_CASE("zero-demand pairs produce no variables or rows") {
  Mat demand(3, 3);
  demand(0, 1) = 10.0;  // single active pair
  std::vector<Point> customers = {{0, 0}, {10, 0}, {20, 0}};
  std::vector<Point> sites = {{5, 5}, {15, 5}};
  Instance inst = make_instance(customers, sites, demand, {1, 1}, {100, 100});
  const MipModel model = build_base(inst, 1, LinkMode::Exact);
  CHECK(model.active_pairs.size() == 1);
  const ModelStats s = model_stats(model);
  CHECK(s.eq2 == 1);
  CHECK(s.eq8 == 4);
  CHECK(model.vars.size() == 2u + 1u + 1u + 4u);  // z_kk, z_km, w, x block
}

TEST_CASE("big-M linking rows use the pair demand") {
  const Instance inst = tiny(2, 2, 3);
  const MipModel model = build_base(inst, 1, LinkMode::Exact);
  REQUIRE(model.eq8_first_row >= 0);
  for (int a = 0; a < static_cast<int>(model.active_pairs.size()); ++a) {
    const double q = model.pair_demand[a];
    for (int k = 0; k < 2; ++k)
      for (int m = 0; m < 2; ++m) {
        const MipRow &row = model.rows[model.eq8_row(a, k, m)];
        REQUIRE(row.tag == RowTag::Eq8);
        REQUIRE(row.idx.size() == 2);
        CHECK(row.idx[0] == model.x_var(a, k, m));
        CHECK(row.coef[0] == 1.0);
        CHECK(row.coef[1] == -q);
        CHECK(row.rhs == 0.0);
      }
  }
}

TEST_CASE("capacity rows count the diagonal route twice") {
  const Instance inst = tiny(2, 2, 5);
  const MipModel model = build_base(inst, 0, LinkMode::AtMost);
  // Eq3 rows sit right after the Eq2 block
  const int na = static_cast<int>(model.active_pairs.size());
  for (int k = 0; k < 2; ++k) {
    const MipRow &row = model.rows[na + k];
    REQUIRE(row.tag == RowTag::Eq3);
    double diag_coef = 0.0, z_coef = 0.0;
    for (std::size_t t = 0; t < row.idx.size(); ++t) {
      if (row.idx[t] == model.x_var(0, k, k)) diag_coef = row.coef[t];
      if (row.idx[t] == model.z_diag(k)) z_coef = row.coef[t];
    }
    CHECK(diag_coef == 2.0);
    CHECK(z_coef == -inst.capacity[k]);
  }
}

TEST_CASE("handling with zero t matches base coefficient by coefficient") {
  const Instance inst = tiny(3, 3, 21);
  const MipModel base = build_base(inst, 2, LinkMode::Exact);
  const MipModel handling = build_handling(inst, 2, Mat(3, 3), LinkMode::Exact);
  REQUIRE(base.obj.size() == handling.obj.size());
  for (std::size_t v = 0; v < base.obj.size(); ++v) CHECK(base.obj[v] == handling.obj[v]);
  REQUIRE(base.rows.size() == handling.rows.size());
}

TEST_CASE("asymmetric handling cost symmetrizes on the link variable") {
  const Instance inst = tiny(2, 2, 7);
  Mat t(2, 2);
  t(0, 1) = 3.0;
  t(1, 0) = 5.0;
  const MipModel model = build_handling(inst, 1, t, LinkMode::Exact);
  CHECK(model.obj[model.z_link(0, 1)] == Catch::Approx(8.0));
}

TEST_CASE("min-links objective prices links at inter cost without fixed costs") {
  const Instance inst = tiny(3, 3, 9);
  const MipModel model = build_min_links(inst, 2);
  for (int k = 0; k < 3; ++k) CHECK(model.obj[model.z_diag(k)] == 0.0);
  for (int k = 0; k < 3; ++k)
    for (int m = k + 1; m < 3; ++m)
      CHECK(model.obj[model.z_link(k, m)] == Catch::Approx(inst.inter_cost(k, m)));
  // no Eq7 row, one Eq10 row
  const ModelStats s = model_stats(model);
  CHECK(s.eq7 == 0);
  CHECK(s.eq10 == 1);
}

TEST_CASE("pl objective is routing only") {
  const Instance inst = tiny(3, 3, 13);
  const MipModel model = build_pl(inst, 2, 1, LinkMode::Exact);
  for (int v = 0; v < model.num_z(); ++v) CHECK(model.obj[v] == 0.0);
  const ModelStats s = model_stats(model);
  CHECK(s.eq7 == 1);
  CHECK(s.eq10 == 1);
}

TEST_CASE("structural infeasibility short-circuits") {
  const Instance inst = tiny(2, 10, 1);
  SECTION("base beyond the complete graph") {
    const MipModel model = build_base(inst, 46, LinkMode::Exact);  // 46 > 45
    CHECK(model.structurally_infeasible);
    CHECK(model.rows.empty());
    CHECK(model.infeasibility_reason.find("45") != std::string::npos);
  }
  SECTION("at-most mode never trips it") {
    const MipModel model = build_base(inst, 46, LinkMode::AtMost);
    CHECK_FALSE(model.structurally_infeasible);
  }
  SECTION("pl tightened to the open set") {
    const MipModel model = build_pl(inst, 2, 2, LinkMode::Exact);  // max 1 link on 2 sites
    CHECK(model.structurally_infeasible);
  }
  SECTION("q beyond p is a precondition error") {
    CHECK_THROWS_AS(build_min_links(inst, 11), std::invalid_argument);
  }
}

TEST_CASE("variant spec validation") {
  const Instance inst = tiny(2, 3, 2);
  CHECK_THROWS_AS(build_handling(inst, 1, Mat(2, 2)), std::invalid_argument);  // wrong shape
  VariantSpec bad = VariantSpec::base(1);
  bad.q_terminals = 2;  // base takes no q
  CHECK_THROWS_AS(build_variant(inst, bad), std::invalid_argument);
  VariantSpec ml = VariantSpec::min_links(2);
  ml.l = 1;  // min-links takes no l
  CHECK_THROWS_AS(build_variant(inst, ml), std::invalid_argument);
}

TEST_CASE("fix_configuration pins z and rejects inconsistent links") {
  const Instance inst = tiny(3, 3, 11);
  const MipModel model = build_base(inst, 1, LinkMode::Exact);

  Configuration good;
  good.open_terminals = {0, 2};
  good.links = {{0, 2}};
  const MipModel fixed = fix_configuration(model, good);
  CHECK(fixed.vars[model.z_diag(0)].lb == 1.0);
  CHECK(fixed.vars[model.z_diag(0)].ub == 1.0);
  CHECK(fixed.vars[model.z_diag(1)].ub == 0.0);
  CHECK(fixed.vars[model.z_link(0, 2)].lb == 1.0);
  CHECK(fixed.vars[model.z_link(0, 1)].ub == 0.0);

  Configuration bad;
  bad.open_terminals = {0};
  bad.links = {{0, 2}};  // endpoint 2 closed
  CHECK_THROWS_AS(fix_configuration(model, bad), std::invalid_argument);
}

TEST_CASE("fixed empty configuration prices out to all-road") {
  const Instance inst = tiny(3, 2, 19);
  const MipModel model = build_base(inst, 0, LinkMode::AtMost);
  const MipModel fixed = fix_configuration(model, Configuration{});
  const LpBuild b = detail::build_lp(fixed, ZFix{}, nullptr, true);
  REQUIRE_FALSE(b.infeasible);
  const LpSolution s = solve_lp(b.lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == Catch::Approx(total_road_objective(inst)).epsilon(1e-9));
}
