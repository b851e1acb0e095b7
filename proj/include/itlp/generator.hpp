#pragma once

#include <cstdint>
#include <stdexcept>

#include "itlp/instance.hpp"
#include "itlp/rng.hpp"

namespace itlp {

// Instance synthesis parameters. Defaults are the conventional benchmark
// ranges: coordinates on [0, 10^4]^2, demands on [0, 500], fixed costs on
// [0, 5*10^5], capacities on [0, 10^4].
struct GenSpec {
  int n = 10;
  int p = 10;
  std::uint64_t seed = 0;
  double coord_max = 1e4;
  double demand_max = 500.0;
  double fixed_max = 5e5;
  double capacity_max = 1e4;
  double alpha = 0.5;
};

// Deterministic: the same GenSpec yields a bit-identical Instance. Draw order
// is fixed: customer coordinates (x then y, by index), site coordinates,
// demand row-major skipping the diagonal, fixed costs, capacities.
inline Instance generate(const GenSpec &spec) {
  if (spec.n < 1 || spec.p < 1) throw std::invalid_argument("generate: n and p must be >= 1");
  if (!(spec.alpha > 0.0) || spec.alpha > 1.0)
    throw std::invalid_argument("generate: alpha must be in (0, 1]");

  Xoshiro256pp rng(spec.seed);

  std::vector<Point> customers(spec.n), sites(spec.p);
  for (auto &c : customers) {
    c.x = rng.uniform(spec.coord_max);
    c.y = rng.uniform(spec.coord_max);
  }
  for (auto &s : sites) {
    s.x = rng.uniform(spec.coord_max);
    s.y = rng.uniform(spec.coord_max);
  }

  Mat demand(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j)
      if (i != j) demand(i, j) = rng.uniform(spec.demand_max);

  std::vector<double> fixed(spec.p), cap(spec.p);
  for (auto &f : fixed) f = rng.uniform(spec.fixed_max);
  for (auto &c : cap) c = rng.uniform(spec.capacity_max);

  return make_instance(std::move(customers), std::move(sites), std::move(demand),
                       std::move(fixed), std::move(cap), spec.alpha);
}

// Handling-cost matrix for the Handling variant. The benchmark convention is
// uniform on [0, 10^3], drawn row-major including the (unused) diagonal.
inline Mat generate_handling_costs(int p, std::uint64_t seed, double t_max = 1e3) {
  if (p < 1) throw std::invalid_argument("generate_handling_costs: p must be >= 1");
  Xoshiro256pp rng(seed);
  Mat t(p, p);
  for (int k = 0; k < p; ++k)
    for (int m = 0; m < p; ++m) t(k, m) = rng.uniform(t_max);
  return t;
}

}  // namespace itlp
