#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "itlp/matrix.hpp"

namespace itlp {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double euclid(const Point &a, const Point &b) {
  // std::hypot is not bit-reproducible across libms; sqrt is.
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

struct CostMatrices {
  Mat road;    // n x n, customer to customer
  Mat access;  // n x p, customer to site
  Mat inter;   // p x p, site to site, symmetric, zero diagonal
};

// Euclidean distances between the given point sets.
inline CostMatrices build_costs_from_coordinates(const std::vector<Point> &customers,
                                                 const std::vector<Point> &sites) {
  const int n = static_cast<int>(customers.size());
  const int p = static_cast<int>(sites.size());
  for (const auto &pt : customers)
    if (!std::isfinite(pt.x) || !std::isfinite(pt.y))
      throw std::invalid_argument("build_costs_from_coordinates: non-finite customer coordinate");
  for (const auto &pt : sites)
    if (!std::isfinite(pt.x) || !std::isfinite(pt.y))
      throw std::invalid_argument("build_costs_from_coordinates: non-finite site coordinate");

  CostMatrices c{Mat(n, n), Mat(n, p), Mat(p, p)};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = euclid(customers[i], customers[j]);
      c.road(i, j) = d;
      c.road(j, i) = d;
    }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < p; ++k) c.access(i, k) = euclid(customers[i], sites[k]);
  for (int k = 0; k < p; ++k)
    for (int m = k + 1; m < p; ++m) {
      const double d = euclid(sites[k], sites[m]);
      c.inter(k, m) = d;
      c.inter(m, k) = d;
    }
  return c;
}

// Ground data of one problem. Immutable after construction by convention;
// everything downstream shares it read-only.
struct Instance {
  std::string name;  // optional label, empty if none

  std::vector<Point> customers;  // size n (may be empty for cost-only instances)
  std::vector<Point> sites;      // size p (same)

  Mat demand;                     // n x n, q_ij >= 0, zero diagonal
  std::vector<double> fixed_cost; // size p, f_k >= 0
  std::vector<double> capacity;   // size p, C_k >= 0
  double alpha = 0.5;             // rail discount, in (0, 1]

  Mat road_cost;    // n x n
  Mat access_cost;  // n x p
  Mat inter_cost;   // p x p, symmetric, zero diagonal

  // True only when the cost matrices came from build_costs_from_coordinates,
  // in which case the triangle inequality holds and the x_ij^kk = 0 property
  // may be asserted on optima.
  bool triangle_ok = false;

  int n() const { return demand.rows(); }
  int p() const { return static_cast<int>(fixed_cost.size()); }
};

// c_ij^km = c_ik + alpha * c_km + c_mj
inline double intermodal_unit_cost(const Instance &inst, int i, int j, int k, int m) {
  if (i < 0 || i >= inst.n() || j < 0 || j >= inst.n())
    throw std::out_of_range("intermodal_unit_cost: customer index");
  if (k < 0 || k >= inst.p() || m < 0 || m >= inst.p())
    throw std::out_of_range("intermodal_unit_cost: site index");
  return inst.access_cost(i, k) + inst.alpha * inst.inter_cost(k, m) + inst.access_cost(j, m);
}

inline Instance make_instance(std::vector<Point> customers, std::vector<Point> sites,
                              Mat demand, std::vector<double> fixed_cost,
                              std::vector<double> capacity, double alpha = 0.5) {
  Instance inst;
  inst.customers = std::move(customers);
  inst.sites = std::move(sites);
  CostMatrices c = build_costs_from_coordinates(inst.customers, inst.sites);
  inst.road_cost = std::move(c.road);
  inst.access_cost = std::move(c.access);
  inst.inter_cost = std::move(c.inter);
  inst.demand = std::move(demand);
  inst.fixed_cost = std::move(fixed_cost);
  inst.capacity = std::move(capacity);
  inst.alpha = alpha;
  inst.triangle_ok = true;
  return inst;
}

inline Instance make_instance_explicit(Mat road, Mat access, Mat inter, Mat demand,
                                       std::vector<double> fixed_cost,
                                       std::vector<double> capacity, double alpha = 0.5) {
  Instance inst;
  inst.road_cost = std::move(road);
  inst.access_cost = std::move(access);
  inst.inter_cost = std::move(inter);
  inst.demand = std::move(demand);
  inst.fixed_cost = std::move(fixed_cost);
  inst.capacity = std::move(capacity);
  inst.alpha = alpha;
  inst.triangle_ok = false;  // no assumption on explicit costs
  return inst;
}

namespace detail {
inline void check_nonneg_finite(const Mat &m, const char *what,
                                std::vector<std::string> &out) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v)) {
        out.push_back(std::string(what) + " has non-finite entry at (" +
                      std::to_string(i) + "," + std::to_string(j) + ")");
      } else if (v < 0.0) {
        out.push_back(std::string(what) + " has negative entry at (" +
                      std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
}
}  // namespace detail

// Returns the list of invariant violations; empty means valid.
inline std::vector<std::string> validate(const Instance &inst) {
  std::vector<std::string> out;
  const int n = inst.n(), p = inst.p();

  if (inst.demand.cols() != n) out.push_back("demand matrix is not square");
  if (inst.road_cost.rows() != n || inst.road_cost.cols() != n)
    out.push_back("road_cost is not n x n");
  if (inst.access_cost.rows() != n || inst.access_cost.cols() != p)
    out.push_back("access_cost is not n x p");
  if (inst.inter_cost.rows() != p || inst.inter_cost.cols() != p)
    out.push_back("inter_cost is not p x p");
  if (static_cast<int>(inst.capacity.size()) != p)
    out.push_back("capacity length differs from fixed_cost length");
  if (!inst.customers.empty() && static_cast<int>(inst.customers.size()) != n)
    out.push_back("customer coordinate count differs from n");
  if (!inst.sites.empty() && static_cast<int>(inst.sites.size()) != p)
    out.push_back("site coordinate count differs from p");
  if (!(inst.alpha > 0.0) || inst.alpha > 1.0 || !std::isfinite(inst.alpha))
    out.push_back("alpha outside (0, 1]");
  if (!out.empty()) return out;  // dimension errors make index checks unsafe

  for (int i = 0; i < n; ++i)
    if (inst.demand(i, i) != 0.0)
      out.push_back("nonzero demand diagonal at index " + std::to_string(i));
  detail::check_nonneg_finite(inst.demand, "demand", out);
  detail::check_nonneg_finite(inst.road_cost, "road_cost", out);
  detail::check_nonneg_finite(inst.access_cost, "access_cost", out);
  detail::check_nonneg_finite(inst.inter_cost, "inter_cost", out);
  for (int k = 0; k < p; ++k) {
    if (!std::isfinite(inst.fixed_cost[k]) || inst.fixed_cost[k] < 0.0)
      out.push_back("fixed_cost invalid at index " + std::to_string(k));
    if (!std::isfinite(inst.capacity[k]) || inst.capacity[k] < 0.0)
      out.push_back("capacity invalid at index " + std::to_string(k));
  }
  for (int k = 0; k < p; ++k) {
    if (inst.inter_cost(k, k) != 0.0)
      out.push_back("inter_cost diagonal nonzero at index " + std::to_string(k));
    for (int m = k + 1; m < p; ++m)
      if (inst.inter_cost(k, m) != inst.inter_cost(m, k))
        out.push_back("inter_cost asymmetric at (" + std::to_string(k) + "," +
                      std::to_string(m) + ")");
  }

  // Costs derived from coordinates must be the Euclidean distances.
  if (inst.triangle_ok && !inst.customers.empty() && !inst.sites.empty()) {
    auto rel_ok = [](double a, double b) {
      return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
    };
    for (int i = 0; i < n && out.size() < 32; ++i) {
      for (int j = 0; j < n; ++j)
        if (!rel_ok(inst.road_cost(i, j), euclid(inst.customers[i], inst.customers[j]))) {
          out.push_back("road_cost mismatches coordinates at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
          break;
        }
      for (int k = 0; k < p; ++k)
        if (!rel_ok(inst.access_cost(i, k), euclid(inst.customers[i], inst.sites[k]))) {
          out.push_back("access_cost mismatches coordinates at (" + std::to_string(i) + "," +
                        std::to_string(k) + ")");
          break;
        }
    }
    for (int k = 0; k < p; ++k)
      for (int m = 0; m < p; ++m)
        if (!rel_ok(inst.inter_cost(k, m), euclid(inst.sites[k], inst.sites[m]))) {
          out.push_back("inter_cost mismatches coordinates at (" + std::to_string(k) + "," +
                        std::to_string(m) + ")");
          break;
        }
  }
  return out;
}

inline double total_road_objective(const Instance &inst) {
  double s = 0.0;
  for (int i = 0; i < inst.n(); ++i)
    for (int j = 0; j < inst.n(); ++j) s += inst.demand(i, j) * inst.road_cost(i, j);
  return s;
}

inline double total_demand(const Instance &inst) {
  double s = 0.0;
  for (int i = 0; i < inst.n(); ++i)
    for (int j = 0; j < inst.n(); ++j) s += inst.demand(i, j);
  return s;
}

}  // namespace itlp
