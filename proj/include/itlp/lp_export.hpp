#pragma once

#include <fstream>
#include <ostream>
#include <string>

#include "itlp/io.hpp"
#include "itlp/model.hpp"

namespace itlp {

namespace detail {

inline std::string lp_var_name(const MipVar &v) {
  switch (v.role) {
    case VarRole::Xijkm:
      return "x_" + std::to_string(v.i) + "_" + std::to_string(v.j) + "_" +
             std::to_string(v.k) + "_" + std::to_string(v.m);
    case VarRole::Wij:
      return "w_" + std::to_string(v.i) + "_" + std::to_string(v.j);
    case VarRole::Zkk:
    case VarRole::Zkm:
      return "z_" + std::to_string(v.k) + "_" + std::to_string(v.m);
  }
  return "v";
}

inline std::string lp_row_name(const MipRow &r, int seq) {
  std::string name = "e";
  switch (r.tag) {
    case RowTag::Eq2: return "e2_" + std::to_string(r.i) + "_" + std::to_string(r.j);
    case RowTag::Eq3: return "e3_" + std::to_string(r.k);
    case RowTag::Eq4: return "e4_" + std::to_string(r.k) + "_" + std::to_string(r.m);
    case RowTag::Eq5: return "e5_" + std::to_string(r.k) + "_" + std::to_string(r.m);
    case RowTag::Eq7: return "e7";
    case RowTag::Eq8:
      return "e8_" + std::to_string(r.i) + "_" + std::to_string(r.j) + "_" +
             std::to_string(r.k) + "_" + std::to_string(r.m);
    case RowTag::Eq10: return "e10";
  }
  return name + std::to_string(seq);
}

}  // namespace detail

// CPLEX LP interchange text, for cross-checks against external solvers.
// Canonical names: x_i_j_k_m, w_i_j, z_k_m.
inline void export_lp(std::ostream &out, const MipModel &model) {
  if (model.structurally_infeasible)
    throw std::invalid_argument("export_lp: model is structurally infeasible: " +
                                model.infeasibility_reason);
  out << "\\ incomplete intermodal terminal location model, variant "
      << to_string(model.variant.kind) << "\n";
  out << "Minimize\n obj:";
  int written = 0;
  for (int v = 0; v < static_cast<int>(model.vars.size()); ++v) {
    if (model.obj[v] == 0.0) continue;
    out << (model.obj[v] >= 0.0 ? " + " : " - ") << detail::fmt17(std::fabs(model.obj[v]))
        << " " << detail::lp_var_name(model.vars[v]);
    if (++written % 8 == 0) out << "\n     ";
  }
  if (written == 0) out << " 0 " << detail::lp_var_name(model.vars[0]);
  out << "\nSubject To\n";
  int seq = 0;
  for (const auto &r : model.rows) {
    out << " " << detail::lp_row_name(r, seq++) << ":";
    for (std::size_t t = 0; t < r.idx.size(); ++t) {
      const double c = r.coef[t];
      out << (c >= 0.0 ? " + " : " - ") << detail::fmt17(std::fabs(c)) << " "
          << detail::lp_var_name(model.vars[r.idx[t]]);
      if ((t + 1) % 8 == 0) out << "\n     ";
    }
    out << (r.rel == Relation::LE ? " <= " : r.rel == Relation::EQ ? " = " : " >= ")
        << detail::fmt17(r.rhs) << "\n";
  }
  out << "Bounds\n";
  for (int v = 0; v < static_cast<int>(model.vars.size()); ++v) {
    const MipVar &var = model.vars[v];
    if (var.integral) continue;  // declared binary below, default 0/1 bounds
    if (var.ub == std::numeric_limits<double>::infinity()) {
      out << " 0 <= " << detail::lp_var_name(var) << "\n";
    } else {
      out << " " << detail::fmt17(var.lb) << " <= " << detail::lp_var_name(var) << " <= "
          << detail::fmt17(var.ub) << "\n";
    }
  }
  out << "Binaries\n";
  int per_line = 0;
  for (const auto &var : model.vars)
    if (var.integral) {
      out << " " << detail::lp_var_name(var);
      if (++per_line % 10 == 0) out << "\n";
    }
  out << "\nEnd\n";
}

inline void export_lp_file(const std::string &path, const MipModel &model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  export_lp(out, model);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace itlp
