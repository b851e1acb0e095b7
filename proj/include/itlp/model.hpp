#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "itlp/variant.hpp"

namespace itlp {

enum class VarRole : std::uint8_t { Xijkm, Wij, Zkk, Zkm };

// Constraint provenance. Eq6 never materializes as rows (symmetry is enforced
// by storing one z per unordered pair); it exists only for paper-scheme counts.
enum class RowTag : std::uint8_t { Eq2, Eq3, Eq4, Eq5, Eq7, Eq8, Eq10 };

inline const char *to_string(RowTag t) {
  switch (t) {
    case RowTag::Eq2: return "Eq2";
    case RowTag::Eq3: return "Eq3";
    case RowTag::Eq4: return "Eq4";
    case RowTag::Eq5: return "Eq5";
    case RowTag::Eq7: return "Eq7";
    case RowTag::Eq8: return "Eq8";
    case RowTag::Eq10: return "Eq10";
  }
  return "?";
}

enum class Relation : std::uint8_t { LE, EQ, GE };

struct MipVar {
  double lb = 0.0;
  double ub = 0.0;
  bool integral = false;
  VarRole role = VarRole::Wij;
  // role indices: Xijkm -> (i, j, k, m); Wij -> (i, j); Zkk -> (k); Zkm -> (k, m)
  std::int16_t i = -1, j = -1, k = -1, m = -1;
};

struct MipRow {
  std::vector<int> idx;
  std::vector<double> coef;
  Relation rel = Relation::LE;
  double rhs = 0.0;
  RowTag tag = RowTag::Eq2;
  // tag indices, for row naming in exports
  std::int16_t i = -1, j = -1, k = -1, m = -1;
};

// Solver-agnostic linear model of one variant. Variables are laid out as
// z_kk (p), then z_km (p(p-1)/2, lexicographic), then per active demand pair
// (q_ij > 0, row-major): w_ij followed by its p^2 x_ij^km block (m fastest).
struct MipModel {
  int n = 0;  // customers, including zero-demand pairs
  int p = 0;  // sites

  std::vector<MipVar> vars;
  std::vector<double> obj;  // dense over vars
  std::vector<MipRow> rows;

  VariantSpec variant;

  // set instead of building rows when the required link count exceeds what
  // any simple graph on the available sites can host
  bool structurally_infeasible = false;
  std::string infeasibility_reason;

  // active demand pairs, row-major order
  std::vector<std::pair<int, int>> active_pairs;
  std::vector<double> pair_demand;  // q_ij per active pair
  std::vector<int> pair_lookup;     // n*n -> active pair id or -1
  int eq8_first_row = -1;           // Eq8 block start; rows follow (a, k, m) order

  int z_diag(int k) const { return k; }
  int z_link(int k, int m) const { return p + pair_index(k, m, p); }
  int num_z() const { return p + pair_count(p); }

  // first variable of pair block a: w, then x block
  int w_var(int a) const { return num_z() + a * (1 + p * p); }
  int x_var(int a, int k, int m) const { return w_var(a) + 1 + k * p + m; }

  int eq8_row(int a, int k, int m) const { return eq8_first_row + (a * p + k) * p + m; }
  int pair_id(int i, int j) const { return pair_lookup[i * n + j]; }
};

struct ModelStats {
  long long num_constraints = 0;
  long long num_variables = 0;
  long long num_binaries = 0;
  long long eq2 = 0, eq3 = 0, eq4 = 0, eq5 = 0, eq6 = 0, eq7 = 0, eq8 = 0, eq10 = 0;
};

enum class CountingMode { Reduced, Paper };

// Paper-scheme counts for a Base-variant model of size (n, p): ordered (k, m)
// pairs everywhere, Eq6 symmetry rows included, every (i, j) pair kept. The
// counts are accumulated by explicit enumeration so they can be checked
// against the closed-form totals n^2 p^2 + 3 p^2 + n^2 + p + 1 and
// n^2 p^2 + n^2 + p^2.
inline ModelStats paper_counting_stats(int n, int p) {
  ModelStats s;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ++s.eq2;
  for (int k = 0; k < p; ++k) ++s.eq3;
  for (int k = 0; k < p; ++k)
    for (int m = 0; m < p; ++m) {
      ++s.eq4;
      ++s.eq5;
      ++s.eq6;
    }
  s.eq7 = 1;
  long long x_vars = 0, w_vars = 0, z_vars = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ++w_vars;
      for (int k = 0; k < p; ++k)
        for (int m = 0; m < p; ++m) {
          ++s.eq8;
          ++x_vars;
        }
    }
  for (int k = 0; k < p; ++k)
    for (int m = 0; m < p; ++m) ++z_vars;
  s.num_constraints = s.eq2 + s.eq3 + s.eq4 + s.eq5 + s.eq6 + s.eq7 + s.eq8;
  s.num_variables = x_vars + w_vars + z_vars;
  s.num_binaries = z_vars;
  return s;
}

inline ModelStats model_stats(const MipModel &model,
                              CountingMode mode = CountingMode::Reduced) {
  if (mode == CountingMode::Paper) return paper_counting_stats(model.n, model.p);
  ModelStats s;
  for (const auto &r : model.rows) {
    switch (r.tag) {
      case RowTag::Eq2: ++s.eq2; break;
      case RowTag::Eq3: ++s.eq3; break;
      case RowTag::Eq4: ++s.eq4; break;
      case RowTag::Eq5: ++s.eq5; break;
      case RowTag::Eq7: ++s.eq7; break;
      case RowTag::Eq8: ++s.eq8; break;
      case RowTag::Eq10: ++s.eq10; break;
    }
  }
  s.num_constraints = static_cast<long long>(model.rows.size());
  s.num_variables = static_cast<long long>(model.vars.size());
  for (const auto &v : model.vars)
    if (v.integral) ++s.num_binaries;
  return s;
}

}  // namespace itlp
