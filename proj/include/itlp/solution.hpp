#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace itlp {

// First-stage decision: which terminals are open and which links exist.
// Canonical form keeps both lists sorted; links as (k, m) with k < m.
struct Configuration {
  std::vector<int> open_terminals;
  std::vector<std::pair<int, int>> links;

  void canonicalize() {
    std::sort(open_terminals.begin(), open_terminals.end());
    open_terminals.erase(std::unique(open_terminals.begin(), open_terminals.end()),
                         open_terminals.end());
    for (auto &l : links)
      if (l.first > l.second) std::swap(l.first, l.second);
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
  }

  bool is_open(int k) const {
    return std::binary_search(open_terminals.begin(), open_terminals.end(), k);
  }
  bool has_link(int k, int m) const {
    if (k > m) std::swap(k, m);
    return std::binary_search(links.begin(), links.end(), std::make_pair(k, m));
  }

  bool operator==(const Configuration &o) const {
    return open_terminals == o.open_terminals && links == o.links;
  }
  bool operator<(const Configuration &o) const {
    if (open_terminals != o.open_terminals) return open_terminals < o.open_terminals;
    return links < o.links;
  }
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration &c) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (int k : c.open_terminals) mix(static_cast<std::uint64_t>(k) + 1);
    for (const auto &[k, m] : c.links)
      mix((static_cast<std::uint64_t>(k) << 20) | static_cast<std::uint64_t>(m));
    return static_cast<std::size_t>(h);
  }
};

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit };

inline const char *to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time-limit";
  }
  return "?";
}

struct ObjectiveBreakdown {
  double routing_road = 0.0;
  double routing_intermodal = 0.0;
  double fixed_cost_total = 0.0;
  double link_cost_total = 0.0;  // c_km (min-links) or t_km + t_mk (handling)

  double sum() const {
    return routing_road + routing_intermodal + fixed_cost_total + link_cost_total;
  }
};

struct XFlow {
  int i, j, k, m;
  double value;
};

struct WFlow {
  int i, j;
  double value;
};

// Branch-and-bound node trace entry, kept when BnbParams.record_tree is set.
struct NodeRecord {
  int id = 0;
  int parent = -1;
  double bound = 0.0;
};

struct SolveMeta {
  SolveStatus status = SolveStatus::Infeasible;
  bool limit_hit = false;
  double best_bound = 0.0;  // proved lower bound, meaningful for exact solves
  double wall_time_s = 0.0;
  long long nodes = 0;
  long long lp_solves = 0;
  std::string infeasibility_kind;  // "structural" or "lp-root" when Infeasible
  int incumbent_node = -1;         // node at which the returned solution appeared
  std::vector<NodeRecord> tree;    // populated only when recording is requested
  double gap = -1.0;               // vs caller-provided reference, if any
};

struct Solution {
  Configuration config;
  std::vector<WFlow> w;  // nonzero road flows
  std::vector<XFlow> x;  // nonzero intermodal flows
  double objective = 0.0;
  ObjectiveBreakdown breakdown;
  SolveMeta meta;
};

}  // namespace itlp
