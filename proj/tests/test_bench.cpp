#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "itlp/bench.hpp"

using namespace itlp;

namespace {
BenchSpec small_spec() {
  BenchSpec bs;
  bs.ns = {5};
  bs.ps = {4};
  bs.values = {1, 2, 3};
  bs.seeds = {1, 2};
  bs.kind = VariantKind::Base;
  bs.mode = LinkMode::AtMost;
  bs.engine = "exact";
  return bs;
}
}  // namespace

TEST_CASE("sweep covers the grid in stable order") {
  const BenchSpec bs = small_spec();
  const auto rows = run_bench(bs);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].instance == "5C4L1TL");
  CHECK(rows[0].seed == 1);
  CHECK(rows[1].seed == 2);
  CHECK(rows[2].instance == "5C4L2TL");
  CHECK(rows[5].instance == "5C4L3TL");
  for (const auto &r : rows) {
    CHECK(r.error.empty());
    CHECK(r.status == "optimal");
  }
}

TEST_CASE("at-most sweeps are nonincreasing in l per seed") {
  const auto rows = run_bench(small_spec());
  for (std::uint64_t seed : {1, 2}) {
    double prev = kInf;
    for (const auto &r : rows)
      if (r.seed == seed) {
        CHECK(r.objective <= prev + 1e-9 * std::max(1.0, prev));
        prev = r.objective;
      }
  }
}

TEST_CASE("bench rows are deterministic apart from the clock") {
  const auto a = run_bench(small_spec());
  const auto b = run_bench(small_spec());
  REQUIRE(a.size() == b.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    CHECK(a[t].objective == b[t].objective);
    CHECK(a[t].status == b[t].status);
    CHECK(a[t].nodes == b[t].nodes);
    CHECK(a[t].lp_solves == b[t].lp_solves);
    CHECK(a[t].terminals == b[t].terminals);
    CHECK(a[t].links == b[t].links);
  }
}

TEST_CASE("limit-hit cells render as stars") {
  BenchSpec bs = small_spec();
  bs.ns = {12};
  bs.ps = {8};
  bs.values = {4};
  bs.seeds = {1};
  bs.mode = LinkMode::Exact;
  bs.time_limit_s = 1e-4;
  const auto rows = run_bench(bs);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].limit_hit);

  std::ostringstream table;
  render_table(table, rows);
  CHECK(table.str().find("*") != std::string::npos);

  std::ostringstream csv;
  write_bench_csv(csv, rows);
  CHECK(csv.str().find(",1,") != std::string::npos);  // limit_hit column
}

TEST_CASE("per-row failures do not stop the sweep") {
  BenchSpec bs = small_spec();
  bs.engine = "oracle";
  bs.ps = {4};
  bs.values = {1};
  bs.ns = {5};
  bs.seeds = {1};
  auto rows = run_bench(bs);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].error.empty());

  bs.engine = "no-such-engine";
  rows = run_bench(bs);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].error.empty());
  CHECK(rows[0].status == "error");
}

TEST_CASE("variant value mapping in cell names") {
  CHECK(bench_cell_name(VariantKind::Base, 10, 10, 2) == "10C10L2TL");
  CHECK(bench_cell_name(VariantKind::MinLinks, 20, 20, 8) == "20C20L8T");
  CHECK(bench_cell_name(VariantKind::PL, 10, 10, 4) == "10C10L4T4TL");
  CHECK(bench_cell_name(VariantKind::Handling, 10, 10, 6) == "10C10L6TL");
}
