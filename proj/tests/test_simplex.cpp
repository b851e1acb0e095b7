#include <catch2/catch_amalgamated.hpp>

#include "itlp/lp_audit.hpp"
#include "itlp/lp_lu.hpp"
#include "itlp/lp_simplex.hpp"
#include "itlp/rng.hpp"

using namespace itlp;

TEST_CASE("one-variable basics") {
  SECTION("min x subject to x >= 3, 0 <= x <= 10") {
    LpProblem lp;
    lp.add_var(0.0, 10.0, 1.0);
    lp.add_row({0}, {1.0}, 'G', 3.0);
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Catch::Approx(3.0));
    CHECK(s.x[0] == Catch::Approx(3.0));
  }
  SECTION("min -x with x >= 0 unbounded") {
    LpProblem lp;
    lp.add_var(0.0, kInf, -1.0);
    const LpSolution s = solve_lp(lp);
    CHECK(s.status == LpStatus::Unbounded);
  }
  SECTION("crossing bounds infeasible") {
    LpProblem lp;
    lp.add_var(0.0, kInf, 1.0);
    lp.add_row({0}, {1.0}, 'L', -1.0);
    const LpSolution s = solve_lp(lp);
    CHECK(s.status == LpStatus::Infeasible);
  }
  SECTION("equality row met by a bound flip range") {
    LpProblem lp;
    lp.add_var(0.0, 4.0, 2.0);
    lp.add_var(0.0, 4.0, 1.0);
    lp.add_row({0, 1}, {1.0, 1.0}, 'E', 6.0);
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Catch::Approx(8.0));  // x1 = 4, x0 = 2
  }
}

TEST_CASE("textbook 2d LP") {
  // max 3a + 5b st a <= 4, 2b <= 12, 3a + 2b <= 18  ->  (2, 6), value 36
  LpProblem lp;
  lp.add_var(0.0, kInf, -3.0);
  lp.add_var(0.0, kInf, -5.0);
  lp.add_row({0}, {1.0}, 'L', 4.0);
  lp.add_row({1}, {2.0}, 'L', 12.0);
  lp.add_row({0, 1}, {3.0, 2.0}, 'L', 18.0);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == Catch::Approx(-36.0));
  CHECK(s.x[0] == Catch::Approx(2.0));
  CHECK(s.x[1] == Catch::Approx(6.0));
  const LpAuditReport rep = audit_lp(lp, s);
  CHECK(rep.ok());
}

TEST_CASE("beale cycling example terminates under the anti-cycling rule") {
  // the classic degenerate construction; optimum -1/20 at (1/25, 0, 1, 0)
  LpProblem lp;
  lp.add_var(0.0, kInf, -0.75);
  lp.add_var(0.0, kInf, 150.0);
  lp.add_var(0.0, kInf, -0.02);
  lp.add_var(0.0, kInf, 6.0);
  lp.add_row({0, 1, 2, 3}, {0.25, -60.0, -1.0 / 25.0, 9.0}, 'L', 0.0);
  lp.add_row({0, 1, 2, 3}, {0.5, -90.0, -1.0 / 50.0, 3.0}, 'L', 0.0);
  lp.add_row({2}, {1.0}, 'L', 1.0);

  SECTION("default options") {
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Catch::Approx(-0.05));
    CHECK(s.iterations < 1000);
    CHECK(audit_lp(lp, s).ok());
  }
  SECTION("forced Bland pricing, the anti-cycling rule as such") {
    SimplexOptions opt;
    opt.force_bland = true;
    const LpSolution s = solve_lp(lp, opt);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Catch::Approx(-0.05));
    CHECK(s.iterations < 1000);
    CHECK(s.anti_cycling_engaged);
    CHECK(audit_lp(lp, s, opt).ok());
  }
  SECTION("low stall threshold engages the fallback on a degenerate run") {
    SimplexOptions opt;
    opt.stall_threshold = 1;
    const LpSolution s = solve_lp(lp, opt);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Catch::Approx(-0.05));
  }
}

TEST_CASE("iteration limit returns the marker status") {
  LpProblem lp;
  lp.add_var(0.0, kInf, -3.0);
  lp.add_var(0.0, kInf, -5.0);
  lp.add_row({0}, {1.0}, 'L', 4.0);
  lp.add_row({1}, {2.0}, 'L', 12.0);
  lp.add_row({0, 1}, {3.0, 2.0}, 'L', 18.0);
  SimplexOptions opt;
  opt.iter_limit = 1;
  const LpSolution s = solve_lp(lp, opt);
  CHECK(s.status == LpStatus::IterationLimit);
}

namespace {

// random bounded LPs with a guaranteed feasible point
LpProblem random_lp(Xoshiro256pp &rng, int nv, int m) {
  LpProblem lp;
  std::vector<double> x0(nv);
  for (int j = 0; j < nv; ++j) {
    const double lo = rng.uniform(10.0) - 5.0;
    const double hi = lo + rng.uniform(10.0);
    lp.add_var(lo, hi, rng.uniform(4.0) - 2.0);
    x0[j] = lo + rng.uniform01() * (hi - lo);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<int> idx;
    std::vector<double> val;
    double act = 0.0;
    for (int j = 0; j < nv; ++j)
      if (rng.uniform01() < 0.4) {
        const double a = rng.uniform(4.0) - 2.0;
        idx.push_back(j);
        val.push_back(a);
        act += a * x0[j];
      }
    if (idx.empty()) continue;
    const double roll = rng.uniform01();
    if (roll < 0.4) lp.add_row(idx, val, 'L', act + rng.uniform(2.0));
    else if (roll < 0.8) lp.add_row(idx, val, 'G', act - rng.uniform(2.0));
    else lp.add_row(idx, val, 'E', act);
  }
  return lp;
}

}  // namespace

TEST_CASE("random LPs: optimal results pass the audit") {
  Xoshiro256pp rng(808);
  int optimal = 0;
  for (int t = 0; t < 60; ++t) {
    const LpProblem lp = random_lp(rng, 3 + static_cast<int>(rng.below(10)),
                                   2 + static_cast<int>(rng.below(12)));
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);  // built around a feasible point, all vars boxed
    ++optimal;
    const LpAuditReport rep = audit_lp(lp, s);
    INFO("case " << t << ": rowviol " << rep.max_row_violation << " boundviol "
                 << rep.max_bound_violation << " dual " << rep.dual_bound << " primal "
                 << rep.primal_objective);
    REQUIRE(rep.ok());
  }
  CHECK(optimal == 60);
}

TEST_CASE("objective invariant under row permutation") {
  Xoshiro256pp rng(1234);
  for (int t = 0; t < 10; ++t) {
    const LpProblem lp = random_lp(rng, 6, 8);
    const LpSolution a = solve_lp(lp);
    // rebuild with rows reversed
    LpProblem rev;
    rev.num_vars = lp.num_vars;
    rev.obj = lp.obj;
    rev.lb = lp.lb;
    rev.ub = lp.ub;
    for (int i = lp.num_rows() - 1; i >= 0; --i) {
      std::vector<int> idx(lp.col_index.begin() + lp.row_start[i],
                           lp.col_index.begin() + lp.row_start[i + 1]);
      std::vector<double> val(lp.coef.begin() + lp.row_start[i],
                              lp.coef.begin() + lp.row_start[i + 1]);
      rev.add_row(idx, val, lp.relation[i], lp.rhs[i]);
    }
    const LpSolution b = solve_lp(rev);
    REQUIRE(a.status == LpStatus::Optimal);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(b.objective ==
          Catch::Approx(a.objective).epsilon(1e-9).margin(1e-9));
  }
}

TEST_CASE("deterministic: identical input, identical run") {
  Xoshiro256pp rng(555);
  const LpProblem lp = random_lp(rng, 8, 10);
  const LpSolution a = solve_lp(lp);
  const LpSolution b = solve_lp(lp);
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
  CHECK(a.x == b.x);
}

TEST_CASE("sparse LU factors random bases correctly") {
  Xoshiro256pp rng(99);
  for (int t = 0; t < 40; ++t) {
    const int m = 2 + static_cast<int>(rng.below(30));
    // random sparse columns plus enough diagonal weight to stay nonsingular
    std::vector<std::vector<std::pair<int, double>>> cols(m);
    for (int j = 0; j < m; ++j) {
      cols[j].emplace_back(j, 1.0 + rng.uniform(2.0));
      for (int e = 0; e < 2; ++e) {
        const int i = static_cast<int>(rng.below(m));
        if (i != j && rng.uniform01() < 0.5) cols[j].emplace_back(i, rng.uniform(2.0) - 1.0);
      }
    }
    detail::BasisLU lu;
    REQUIRE(lu.factor(m, cols) == -1);

    // check B x = b by substitution against a dense multiply
    std::vector<double> b(m), scratch;
    for (auto &v : b) v = rng.uniform(2.0) - 1.0;
    std::vector<double> x = b;
    lu.ftran(x, scratch);
    std::vector<double> bx(m, 0.0);
    for (int j = 0; j < m; ++j)
      for (const auto &[i, v] : cols[j]) bx[i] += v * x[j];
    for (int i = 0; i < m; ++i) CHECK(bx[i] == Catch::Approx(b[i]).margin(1e-8));

    // transpose solve
    std::vector<double> c(m);
    for (auto &v : c) v = rng.uniform(2.0) - 1.0;
    std::vector<double> y = c;
    lu.btran(y, scratch);
    std::vector<double> bty(m, 0.0);
    for (int j = 0; j < m; ++j)
      for (const auto &[i, v] : cols[j]) bty[j] += v * y[i];
    for (int j = 0; j < m; ++j) CHECK(bty[j] == Catch::Approx(c[j]).margin(1e-8));
  }
}

TEST_CASE("singular basis is reported") {
  std::vector<std::vector<std::pair<int, double>>> cols(2);
  cols[0] = {{0, 1.0}, {1, 1.0}};
  cols[1] = {{0, 2.0}, {1, 2.0}};  // dependent
  detail::BasisLU lu;
  CHECK(lu.factor(2, cols) >= 0);
}
