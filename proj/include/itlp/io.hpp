#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "itlp/instance.hpp"
#include "itlp/solution.hpp"
#include "itlp/variant.hpp"

namespace itlp {

// Text formats, token based, versioned. Floating point values are written
// with 17 significant digits so parse(render(v)) reproduces v bit for bit.

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class TokenReader {
public:
  explicit TokenReader(std::istream &in) : in_(in) {}

  std::string next(const char *what) {
    std::string tok;
    if (!(in_ >> tok))
      throw std::runtime_error(std::string("parse error: expected ") + what +
                               ", got end of input");
    return tok;
  }
  void expect(const std::string &kw) {
    const std::string tok = next(kw.c_str());
    if (tok != kw)
      throw std::runtime_error("parse error: expected \"" + kw + "\", got \"" + tok + "\"");
  }
  long long integer(const char *what) {
    const std::string tok = next(what);
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw std::runtime_error(std::string("parse error: ") + what + " is not an integer: \"" +
                               tok + "\"");
    }
  }
  double real(const char *what) {
    const std::string tok = next(what);
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw std::runtime_error(std::string("parse error: ") + what + " is not a number: \"" +
                               tok + "\"");
    }
  }

private:
  std::istream &in_;
};

inline void write_mat(std::ostream &out, const Mat &m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out << (j ? " " : "") << fmt17(m(i, j));
    out << "\n";
  }
}

inline Mat read_mat(TokenReader &r, int rows, int cols, const char *what) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = r.real(what);
  return m;
}

}  // namespace detail

inline void write_instance(std::ostream &out, const Instance &inst) {
  const int n = inst.n(), p = inst.p();
  out << "itlp-instance-v1\n";
  out << "name " << (inst.name.empty() ? "-" : inst.name) << "\n";
  out << "n " << n << "\n";
  out << "p " << p << "\n";
  out << "alpha " << detail::fmt17(inst.alpha) << "\n";
  const bool coords = !inst.customers.empty();
  out << "coords " << (coords ? 1 : 0) << "\n";
  if (coords) {
    out << "customers\n";
    for (const auto &c : inst.customers)
      out << detail::fmt17(c.x) << " " << detail::fmt17(c.y) << "\n";
    out << "sites\n";
    for (const auto &s : inst.sites)
      out << detail::fmt17(s.x) << " " << detail::fmt17(s.y) << "\n";
  }
  out << "demand\n";
  detail::write_mat(out, inst.demand);
  out << "fixed\n";
  for (int k = 0; k < p; ++k) out << (k ? " " : "") << detail::fmt17(inst.fixed_cost[k]);
  out << "\ncapacity\n";
  for (int k = 0; k < p; ++k) out << (k ? " " : "") << detail::fmt17(inst.capacity[k]);
  out << "\ncosts " << (inst.triangle_ok ? "derived" : "explicit") << "\n";
  if (!inst.triangle_ok) {
    out << "road\n";
    detail::write_mat(out, inst.road_cost);
    out << "access\n";
    detail::write_mat(out, inst.access_cost);
    out << "inter\n";
    detail::write_mat(out, inst.inter_cost);
  }
  out << "end\n";
}

inline Instance read_instance(std::istream &in) {
  detail::TokenReader r(in);
  r.expect("itlp-instance-v1");
  r.expect("name");
  std::string name = r.next("instance name");
  if (name == "-") name.clear();
  r.expect("n");
  const int n = static_cast<int>(r.integer("n"));
  r.expect("p");
  const int p = static_cast<int>(r.integer("p"));
  if (n < 1 || p < 1) throw std::runtime_error("parse error: n and p must be >= 1");
  r.expect("alpha");
  const double alpha = r.real("alpha");
  r.expect("coords");
  const long long has_coords = r.integer("coords flag");

  std::vector<Point> customers, sites;
  if (has_coords) {
    r.expect("customers");
    customers.resize(n);
    for (auto &c : customers) {
      c.x = r.real("customer x");
      c.y = r.real("customer y");
    }
    r.expect("sites");
    sites.resize(p);
    for (auto &s : sites) {
      s.x = r.real("site x");
      s.y = r.real("site y");
    }
  }
  r.expect("demand");
  Mat demand = detail::read_mat(r, n, n, "demand entry");
  r.expect("fixed");
  std::vector<double> fixed(p);
  for (auto &f : fixed) f = r.real("fixed cost");
  r.expect("capacity");
  std::vector<double> cap(p);
  for (auto &c : cap) c = r.real("capacity");
  r.expect("costs");
  const std::string mode = r.next("costs mode");

  Instance inst;
  if (mode == "derived") {
    if (!has_coords)
      throw std::runtime_error("parse error: costs derived requires coordinates");
    inst = make_instance(std::move(customers), std::move(sites), std::move(demand),
                         std::move(fixed), std::move(cap), alpha);
  } else if (mode == "explicit") {
    r.expect("road");
    Mat road = detail::read_mat(r, n, n, "road cost");
    r.expect("access");
    Mat access = detail::read_mat(r, n, p, "access cost");
    r.expect("inter");
    Mat inter = detail::read_mat(r, p, p, "inter cost");
    inst = make_instance_explicit(std::move(road), std::move(access), std::move(inter),
                                  std::move(demand), std::move(fixed), std::move(cap), alpha);
    inst.customers = std::move(customers);
    inst.sites = std::move(sites);
  } else {
    throw std::runtime_error("parse error: costs mode must be derived or explicit, got \"" +
                             mode + "\"");
  }
  r.expect("end");
  inst.name = std::move(name);
  return inst;
}

inline void write_instance_file(const std::string &path, const Instance &inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_instance(out, inst);
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline Instance read_instance_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_instance(in);
}

// Solution files carry the variant, status, objective breakdown, the
// configuration, nonzero flows, and solve counters. Field order is fixed so
// files diff cleanly; time_s is informational and excluded from comparisons.
inline void write_solution(std::ostream &out, const Solution &sol, const VariantSpec &variant,
                           const std::string &instance_label,
                           const std::string &t_seed = "-") {
  out << "itlp-solution-v1\n";
  out << "instance " << (instance_label.empty() ? "-" : instance_label) << "\n";
  out << "variant " << to_string(variant.kind) << "\n";
  out << "l " << (variant.l ? std::to_string(*variant.l) : "-") << "\n";
  out << "q " << (variant.q_terminals ? std::to_string(*variant.q_terminals) : "-") << "\n";
  out << "link_mode " << to_string(variant.link_mode) << "\n";
  out << "t_seed " << (t_seed.empty() ? "-" : t_seed) << "\n";
  out << "status " << to_string(sol.meta.status) << "\n";
  out << "limit_hit " << (sol.meta.limit_hit ? 1 : 0) << "\n";
  out << "objective " << detail::fmt17(sol.objective) << "\n";
  out << "best_bound " << detail::fmt17(sol.meta.best_bound) << "\n";
  out << "routing_road " << detail::fmt17(sol.breakdown.routing_road) << "\n";
  out << "routing_intermodal " << detail::fmt17(sol.breakdown.routing_intermodal) << "\n";
  out << "fixed_total " << detail::fmt17(sol.breakdown.fixed_cost_total) << "\n";
  out << "link_total " << detail::fmt17(sol.breakdown.link_cost_total) << "\n";
  out << "open_terminals " << sol.config.open_terminals.size();
  for (int k : sol.config.open_terminals) out << " " << k;
  out << "\nlinks " << sol.config.links.size();
  for (const auto &[k, m] : sol.config.links) out << " " << k << "-" << m;
  out << "\nw_flows " << sol.w.size() << "\n";
  for (const auto &f : sol.w)
    out << f.i << " " << f.j << " " << detail::fmt17(f.value) << "\n";
  out << "x_flows " << sol.x.size() << "\n";
  for (const auto &f : sol.x)
    out << f.i << " " << f.j << " " << f.k << " " << f.m << " " << detail::fmt17(f.value)
        << "\n";
  out << "nodes " << sol.meta.nodes << "\n";
  out << "lp_solves " << sol.meta.lp_solves << "\n";
  out << "time_s " << detail::fmt17(sol.meta.wall_time_s) << "\n";
  out << "end\n";
}

struct SolutionFile {
  Solution sol;
  VariantSpec variant;
  std::string instance_label;
  std::string t_seed;  // "-" free-form marker when absent
};

inline SolutionFile read_solution(std::istream &in) {
  detail::TokenReader r(in);
  SolutionFile sf;
  r.expect("itlp-solution-v1");
  r.expect("instance");
  sf.instance_label = r.next("instance label");
  if (sf.instance_label == "-") sf.instance_label.clear();
  r.expect("variant");
  const std::string kind = r.next("variant kind");
  if (kind == "base") sf.variant.kind = VariantKind::Base;
  else if (kind == "min-links") sf.variant.kind = VariantKind::MinLinks;
  else if (kind == "handling") sf.variant.kind = VariantKind::Handling;
  else if (kind == "pl") sf.variant.kind = VariantKind::PL;
  else throw std::runtime_error("parse error: unknown variant \"" + kind + "\"");
  r.expect("l");
  const std::string ltok = r.next("l");
  if (ltok != "-") sf.variant.l = std::stoi(ltok);
  r.expect("q");
  const std::string qtok = r.next("q");
  if (qtok != "-") sf.variant.q_terminals = std::stoi(qtok);
  r.expect("link_mode");
  const std::string mode = r.next("link mode");
  if (mode == "exact") sf.variant.link_mode = LinkMode::Exact;
  else if (mode == "atmost") sf.variant.link_mode = LinkMode::AtMost;
  else throw std::runtime_error("parse error: unknown link mode \"" + mode + "\"");
  r.expect("t_seed");
  sf.t_seed = r.next("t_seed");
  r.expect("status");
  const std::string st = r.next("status");
  if (st == "optimal") sf.sol.meta.status = SolveStatus::Optimal;
  else if (st == "feasible") sf.sol.meta.status = SolveStatus::Feasible;
  else if (st == "infeasible") sf.sol.meta.status = SolveStatus::Infeasible;
  else if (st == "time-limit") sf.sol.meta.status = SolveStatus::TimeLimit;
  else throw std::runtime_error("parse error: unknown status \"" + st + "\"");
  r.expect("limit_hit");
  sf.sol.meta.limit_hit = r.integer("limit_hit") != 0;
  r.expect("objective");
  sf.sol.objective = r.real("objective");
  r.expect("best_bound");
  sf.sol.meta.best_bound = r.real("best_bound");
  r.expect("routing_road");
  sf.sol.breakdown.routing_road = r.real("routing_road");
  r.expect("routing_intermodal");
  sf.sol.breakdown.routing_intermodal = r.real("routing_intermodal");
  r.expect("fixed_total");
  sf.sol.breakdown.fixed_cost_total = r.real("fixed_total");
  r.expect("link_total");
  sf.sol.breakdown.link_cost_total = r.real("link_total");
  r.expect("open_terminals");
  const long long nopen = r.integer("open terminal count");
  for (long long t = 0; t < nopen; ++t)
    sf.sol.config.open_terminals.push_back(static_cast<int>(r.integer("terminal index")));
  r.expect("links");
  const long long nlinks = r.integer("link count");
  for (long long t = 0; t < nlinks; ++t) {
    const std::string tok = r.next("link k-m");
    const auto dash = tok.find('-');
    if (dash == std::string::npos)
      throw std::runtime_error("parse error: link must be k-m, got \"" + tok + "\"");
    sf.sol.config.links.emplace_back(std::stoi(tok.substr(0, dash)),
                                     std::stoi(tok.substr(dash + 1)));
  }
  r.expect("w_flows");
  const long long nw = r.integer("w flow count");
  for (long long t = 0; t < nw; ++t) {
    WFlow f;
    f.i = static_cast<int>(r.integer("w flow i"));
    f.j = static_cast<int>(r.integer("w flow j"));
    f.value = r.real("w flow value");
    sf.sol.w.push_back(f);
  }
  r.expect("x_flows");
  const long long nx = r.integer("x flow count");
  for (long long t = 0; t < nx; ++t) {
    XFlow f;
    f.i = static_cast<int>(r.integer("x flow i"));
    f.j = static_cast<int>(r.integer("x flow j"));
    f.k = static_cast<int>(r.integer("x flow k"));
    f.m = static_cast<int>(r.integer("x flow m"));
    f.value = r.real("x flow value");
    sf.sol.x.push_back(f);
  }
  r.expect("nodes");
  sf.sol.meta.nodes = r.integer("nodes");
  r.expect("lp_solves");
  sf.sol.meta.lp_solves = r.integer("lp_solves");
  r.expect("time_s");
  sf.sol.meta.wall_time_s = r.real("time_s");
  r.expect("end");
  return sf;
}

inline void write_solution_file(const std::string &path, const Solution &sol,
                                const VariantSpec &variant, const std::string &label,
                                const std::string &t_seed = "-") {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_solution(out, sol, variant, label, t_seed);
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline SolutionFile read_solution_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_solution(in);
}

}  // namespace itlp
