#pragma once

#include <limits>
#include <stdexcept>
#include <string>

#include "itlp/instance.hpp"
#include "itlp/model.hpp"
#include "itlp/solution.hpp"
#include "itlp/variant.hpp"

namespace itlp {

// Link-count feasibility on combinatorial grounds alone. A simple graph on v
// vertices has at most v(v-1)/2 edges, so an exact link count beyond that is
// infeasible before any LP is looked at. For PL the vertex budget is q.
inline bool structurally_infeasible(const VariantSpec &v, int p, std::string *why = nullptr) {
  if (v.kind == VariantKind::MinLinks) return false;
  if (v.link_mode != LinkMode::Exact) return false;
  const int vertices = v.kind == VariantKind::PL ? *v.q_terminals : p;
  const long long max_links = static_cast<long long>(vertices) * (vertices - 1) / 2;
  if (*v.l > max_links) {
    if (why)
      *why = "requires " + std::to_string(*v.l) + " links but at most " +
             std::to_string(max_links) + " exist on " + std::to_string(vertices) +
             " sites";
    return true;
  }
  return false;
}

namespace detail {

inline MipModel build_model(const Instance &inst, const VariantSpec &variant) {
  const int n = inst.n(), p = inst.p();
  check_variant(variant, p);

  MipModel model;
  model.n = n;
  model.p = p;
  model.variant = variant;

  std::string why;
  if (structurally_infeasible(variant, p, &why)) {
    model.structurally_infeasible = true;
    model.infeasibility_reason = why;
    return model;
  }

  model.pair_lookup.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (inst.demand(i, j) > 0.0) {
        model.pair_lookup[i * n + j] = static_cast<int>(model.active_pairs.size());
        model.active_pairs.emplace_back(i, j);
        model.pair_demand.push_back(inst.demand(i, j));
      }
  const int na = static_cast<int>(model.active_pairs.size());

  const int nvars = model.num_z() + na * (1 + p * p);
  model.vars.resize(nvars);
  model.obj.assign(nvars, 0.0);

  // z_kk, then z_km
  for (int k = 0; k < p; ++k) {
    MipVar &v = model.vars[model.z_diag(k)];
    v.lb = 0.0;
    v.ub = 1.0;
    v.integral = true;
    v.role = VarRole::Zkk;
    v.k = static_cast<std::int16_t>(k);
    v.m = static_cast<std::int16_t>(k);
  }
  for (int k = 0; k < p; ++k)
    for (int m = k + 1; m < p; ++m) {
      MipVar &v = model.vars[model.z_link(k, m)];
      v.lb = 0.0;
      v.ub = 1.0;
      v.integral = true;
      v.role = VarRole::Zkm;
      v.k = static_cast<std::int16_t>(k);
      v.m = static_cast<std::int16_t>(m);
    }

  // w and x per active pair; continuous, >= 0
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (int a = 0; a < na; ++a) {
    const auto [i, j] = model.active_pairs[a];
    MipVar &w = model.vars[model.w_var(a)];
    w.lb = 0.0;
    w.ub = inf;
    w.role = VarRole::Wij;
    w.i = static_cast<std::int16_t>(i);
    w.j = static_cast<std::int16_t>(j);
    for (int k = 0; k < p; ++k)
      for (int m = 0; m < p; ++m) {
        MipVar &x = model.vars[model.x_var(a, k, m)];
        x.lb = 0.0;
        x.ub = inf;
        x.role = VarRole::Xijkm;
        x.i = static_cast<std::int16_t>(i);
        x.j = static_cast<std::int16_t>(j);
        x.k = static_cast<std::int16_t>(k);
        x.m = static_cast<std::int16_t>(m);
      }
  }

  // Objective: routing terms are common to all variants.
  for (int a = 0; a < na; ++a) {
    const auto [i, j] = model.active_pairs[a];
    model.obj[model.w_var(a)] = inst.road_cost(i, j);
    for (int k = 0; k < p; ++k)
      for (int m = 0; m < p; ++m)
        model.obj[model.x_var(a, k, m)] = intermodal_unit_cost(inst, i, j, k, m);
  }
  switch (variant.kind) {
    case VariantKind::Base:
      for (int k = 0; k < p; ++k) model.obj[model.z_diag(k)] = inst.fixed_cost[k];
      break;
    case VariantKind::MinLinks:
      // Eq. (9) as printed: links priced at c_km, no fixed-cost term.
      for (int k = 0; k < p; ++k)
        for (int m = k + 1; m < p; ++m)
          model.obj[model.z_link(k, m)] = inst.inter_cost(k, m);
      break;
    case VariantKind::Handling:
      for (int k = 0; k < p; ++k) model.obj[model.z_diag(k)] = inst.fixed_cost[k];
      for (int k = 0; k < p; ++k)
        for (int m = k + 1; m < p; ++m) {
          const Mat &t = *variant.handling_cost;
          model.obj[model.z_link(k, m)] = t(k, m) + t(m, k);
        }
      break;
    case VariantKind::PL:
      break;  // routing only
  }

  // Eq. (2): sum_km x + w = q, one row per active pair.
  for (int a = 0; a < na; ++a) {
    const auto [i, j] = model.active_pairs[a];
    MipRow r;
    r.tag = RowTag::Eq2;
    r.rel = Relation::EQ;
    r.rhs = inst.demand(i, j);
    r.i = static_cast<std::int16_t>(i);
    r.j = static_cast<std::int16_t>(j);
    r.idx.reserve(p * p + 1);
    r.coef.reserve(p * p + 1);
    for (int k = 0; k < p; ++k)
      for (int m = 0; m < p; ++m) {
        r.idx.push_back(model.x_var(a, k, m));
        r.coef.push_back(1.0);
      }
    r.idx.push_back(model.w_var(a));
    r.coef.push_back(1.0);
    model.rows.push_back(std::move(r));
  }

  // Eq. (3): inbound + outbound throughput at k within C_k z_kk. The diagonal
  // route x_ij^kk appears in both sums, hence coefficient 2 as printed.
  for (int k = 0; k < p; ++k) {
    MipRow r;
    r.tag = RowTag::Eq3;
    r.rel = Relation::LE;
    r.rhs = 0.0;
    r.k = static_cast<std::int16_t>(k);
    for (int a = 0; a < na; ++a)
      for (int m = 0; m < p; ++m) {
        if (m == k) {
          r.idx.push_back(model.x_var(a, k, k));
          r.coef.push_back(2.0);
        } else {
          r.idx.push_back(model.x_var(a, k, m));
          r.coef.push_back(1.0);
          r.idx.push_back(model.x_var(a, m, k));
          r.coef.push_back(1.0);
        }
      }
    r.idx.push_back(model.z_diag(k));
    r.coef.push_back(-inst.capacity[k]);
    model.rows.push_back(std::move(r));
  }

  // Eqs. (4)-(5): a link needs both endpoints open. One row per endpoint per
  // unordered pair; Eq. (6) holds by representation.
  for (int k = 0; k < p; ++k)
    for (int m = k + 1; m < p; ++m) {
      MipRow r4;
      r4.tag = RowTag::Eq4;
      r4.rel = Relation::LE;
      r4.rhs = 0.0;
      r4.k = static_cast<std::int16_t>(k);
      r4.m = static_cast<std::int16_t>(m);
      r4.idx = {model.z_link(k, m), model.z_diag(k)};
      r4.coef = {1.0, -1.0};
      model.rows.push_back(std::move(r4));

      MipRow r5;
      r5.tag = RowTag::Eq5;
      r5.rel = Relation::LE;
      r5.rhs = 0.0;
      r5.k = static_cast<std::int16_t>(k);
      r5.m = static_cast<std::int16_t>(m);
      r5.idx = {model.z_link(k, m), model.z_diag(m)};
      r5.coef = {1.0, -1.0};
      model.rows.push_back(std::move(r5));
    }

  // Eq. (7): number of established links, over unordered pairs only; the
  // diagonal z_kk is an open-terminal flag, never a link.
  if (variant.kind != VariantKind::MinLinks) {
    MipRow r;
    r.tag = RowTag::Eq7;
    r.rel = variant.link_mode == LinkMode::Exact ? Relation::EQ : Relation::LE;
    r.rhs = static_cast<double>(*variant.l);
    for (int k = 0; k < p; ++k)
      for (int m = k + 1; m < p; ++m) {
        r.idx.push_back(model.z_link(k, m));
        r.coef.push_back(1.0);
      }
    model.rows.push_back(std::move(r));
  }

  // Eq. (8): x_ij^km <= q_ij z_km. The unit coefficient printed in the model
  // caps flow at one good; q_ij is the tightest big-M that Eq. (2) admits.
  model.eq8_first_row = static_cast<int>(model.rows.size());
  for (int a = 0; a < na; ++a) {
    const auto [i, j] = model.active_pairs[a];
    const double q = inst.demand(i, j);
    for (int k = 0; k < p; ++k)
      for (int m = 0; m < p; ++m) {
        MipRow r;
        r.tag = RowTag::Eq8;
        r.rel = Relation::LE;
        r.rhs = 0.0;
        r.i = static_cast<std::int16_t>(i);
        r.j = static_cast<std::int16_t>(j);
        r.k = static_cast<std::int16_t>(k);
        r.m = static_cast<std::int16_t>(m);
        const int zvar = k == m ? model.z_diag(k) : model.z_link(k, m);
        r.idx = {model.x_var(a, k, m), zvar};
        r.coef = {1.0, -q};
        model.rows.push_back(std::move(r));
      }
  }

  // Eq. (10): number of open terminals.
  if (variant.kind == VariantKind::MinLinks || variant.kind == VariantKind::PL) {
    MipRow r;
    r.tag = RowTag::Eq10;
    r.rel = Relation::EQ;
    r.rhs = static_cast<double>(*variant.q_terminals);
    for (int k = 0; k < p; ++k) {
      r.idx.push_back(model.z_diag(k));
      r.coef.push_back(1.0);
    }
    model.rows.push_back(std::move(r));
  }

  return model;
}

}  // namespace detail

inline MipModel build_base(const Instance &inst, int l, LinkMode mode = LinkMode::Exact) {
  return detail::build_model(inst, VariantSpec::base(l, mode));
}

inline MipModel build_min_links(const Instance &inst, int q_terminals) {
  return detail::build_model(inst, VariantSpec::min_links(q_terminals));
}

inline MipModel build_handling(const Instance &inst, int l, Mat t,
                               LinkMode mode = LinkMode::Exact) {
  return detail::build_model(inst, VariantSpec::handling(l, std::move(t), mode));
}

inline MipModel build_pl(const Instance &inst, int q_terminals, int l,
                         LinkMode mode = LinkMode::Exact) {
  return detail::build_model(inst, VariantSpec::pl(q_terminals, l, mode));
}

inline MipModel build_variant(const Instance &inst, const VariantSpec &variant) {
  return detail::build_model(inst, variant);
}

// Pins every z to the configuration's 0/1 value, leaving a pure LP in x, w.
// Rejects configurations whose links touch a closed terminal; those violate
// Eqs. (4)-(5) and must never reach an LP solve.
inline MipModel fix_configuration(const MipModel &model, const Configuration &config) {
  for (const auto &[k, m] : config.links) {
    if (k < 0 || m < 0 || k >= model.p || m >= model.p || k == m)
      throw std::invalid_argument("fix_configuration: bad link endpoints");
    if (!config.is_open(k) || !config.is_open(m))
      throw std::invalid_argument("fix_configuration: link between closed terminals (" +
                                  std::to_string(k) + "," + std::to_string(m) + ")");
  }
  for (int k : config.open_terminals)
    if (k < 0 || k >= model.p)
      throw std::invalid_argument("fix_configuration: terminal index out of range");

  MipModel fixed = model;
  for (int k = 0; k < model.p; ++k) {
    const double v = config.is_open(k) ? 1.0 : 0.0;
    fixed.vars[model.z_diag(k)].lb = v;
    fixed.vars[model.z_diag(k)].ub = v;
  }
  for (int k = 0; k < model.p; ++k)
    for (int m = k + 1; m < model.p; ++m) {
      const double v = config.has_link(k, m) ? 1.0 : 0.0;
      fixed.vars[model.z_link(k, m)].lb = v;
      fixed.vars[model.z_link(k, m)].ub = v;
    }
  return fixed;
}

}  // namespace itlp
