#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "itlp/matrix.hpp"

namespace itlp {

enum class VariantKind { Base, MinLinks, Handling, PL };

// Whether the link-count row is an equality (the model's printed form) or
// relaxed to <=. The relaxed form never forces useless links, so its optimum
// is nonincreasing in l.
enum class LinkMode { Exact, AtMost };

inline const char *to_string(VariantKind k) {
  switch (k) {
    case VariantKind::Base: return "base";
    case VariantKind::MinLinks: return "min-links";
    case VariantKind::Handling: return "handling";
    case VariantKind::PL: return "pl";
  }
  return "?";
}

inline const char *to_string(LinkMode m) {
  return m == LinkMode::Exact ? "exact" : "atmost";
}

// Which model to solve and its parameters.
//   Base:     l links to establish (Exact or AtMost); fixed costs in objective.
//   MinLinks: q terminals to open; link count free, links priced at c_km.
//   Handling: Base plus (t_km + t_mk) per established link.
//   PL:       q terminals and l links both prescribed; routing cost only.
struct VariantSpec {
  VariantKind kind = VariantKind::Base;
  std::optional<int> l;            // Base, Handling, PL
  std::optional<int> q_terminals;  // MinLinks, PL
  LinkMode link_mode = LinkMode::Exact;  // ignored by MinLinks (no link-count row)
  std::optional<Mat> handling_cost;      // p x p, Handling only

  static VariantSpec base(int l, LinkMode mode = LinkMode::Exact) {
    VariantSpec v;
    v.kind = VariantKind::Base;
    v.l = l;
    v.link_mode = mode;
    return v;
  }
  static VariantSpec min_links(int q) {
    VariantSpec v;
    v.kind = VariantKind::MinLinks;
    v.q_terminals = q;
    return v;
  }
  static VariantSpec handling(int l, Mat t, LinkMode mode = LinkMode::Exact) {
    VariantSpec v;
    v.kind = VariantKind::Handling;
    v.l = l;
    v.handling_cost = std::move(t);
    v.link_mode = mode;
    return v;
  }
  static VariantSpec pl(int q, int l, LinkMode mode = LinkMode::Exact) {
    VariantSpec v;
    v.kind = VariantKind::PL;
    v.q_terminals = q;
    v.l = l;
    v.link_mode = mode;
    return v;
  }
};

// Throws on an ill-formed spec for the given site count.
inline void check_variant(const VariantSpec &v, int p) {
  const bool needs_l = v.kind != VariantKind::MinLinks;
  const bool needs_q = v.kind == VariantKind::MinLinks || v.kind == VariantKind::PL;
  if (needs_l) {
    if (!v.l) throw std::invalid_argument("variant requires a link count l");
    if (*v.l < 0) throw std::invalid_argument("l must be >= 0");
  } else if (v.l) {
    throw std::invalid_argument("min-links takes no link count l");
  }
  if (needs_q) {
    if (!v.q_terminals) throw std::invalid_argument("variant requires a terminal count q");
    if (*v.q_terminals < 0 || *v.q_terminals > p)
      throw std::invalid_argument("q must be in [0, p]");
  } else if (v.q_terminals) {
    throw std::invalid_argument("variant takes no terminal count q");
  }
  if (v.kind == VariantKind::Handling) {
    if (!v.handling_cost) throw std::invalid_argument("handling variant requires a cost matrix t");
    const Mat &t = *v.handling_cost;
    if (t.rows() != p || t.cols() != p)
      throw std::invalid_argument("handling cost matrix must be p x p");
    for (int k = 0; k < p; ++k)
      for (int m = 0; m < p; ++m)
        if (!(t(k, m) >= 0.0))
          throw std::invalid_argument("handling cost matrix must be nonnegative");
  } else if (v.handling_cost) {
    throw std::invalid_argument("handling cost matrix given for a non-handling variant");
  }
}

// Unordered site pairs {k, m}, k < m, indexed 0 .. p(p-1)/2 - 1 in
// lexicographic order.
inline int pair_count(int p) { return p * (p - 1) / 2; }

inline int pair_index(int k, int m, int p) {
  if (k > m) std::swap(k, m);
  return k * (2 * p - k - 1) / 2 + (m - k - 1);
}

inline std::pair<int, int> pair_from_index(int idx, int p) {
  for (int k = 0; k < p; ++k) {
    const int row = p - 1 - k;
    if (idx < row) return {k, k + 1 + idx};
    idx -= row;
  }
  throw std::out_of_range("pair_from_index");
}

}  // namespace itlp
