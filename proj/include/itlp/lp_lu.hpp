#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace itlp::detail {

// Sparse LU of a basis matrix, Gilbert-Peierls style: each column is obtained
// by a sparse triangular solve against the L computed so far (symbolic reach
// by DFS, then numeric update), followed by partial pivoting by magnitude.
// Columns are processed in ascending-nnz order, which puts the unit logical
// columns first and keeps fill near zero for simplex bases.
//
// Factorization: P * B * Q = L * U with unit-diagonal L.
class BasisLU {
public:
  // cols[j] lists (row, value) of basis column j; rows in 0..m-1.
  // Returns -1 on success, else the processing step at which no acceptable
  // pivot existed (numerically singular basis).
  int factor(int m, const std::vector<std::vector<std::pair<int, double>>> &cols) {
    m_ = m;
    order_.resize(m);
    for (int j = 0; j < m; ++j) order_[j] = j;
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (cols[a].size() != cols[b].size()) return cols[a].size() < cols[b].size();
      return a < b;
    });

    pinv_.assign(m, -1);
    prow_.assign(m, -1);
    lcol_.assign(m, {});
    ucol_.assign(m, {});
    udiag_.assign(m, 0.0);

    std::vector<double> work(m, 0.0);
    std::vector<char> mark(m, 0);
    std::vector<int> topo, stack, stack_pos;
    topo.reserve(64);

    for (int t = 0; t < m; ++t) {
      const auto &col = cols[order_[t]];
      topo.clear();

      // symbolic: rows reachable from the column pattern through L.
      // Reverse postorder of the DFS forest is a valid elimination order.
      for (const auto &e : col) {
        if (mark[e.first]) continue;
        stack.assign(1, e.first);
        stack_pos.assign(1, 0);
        mark[e.first] = 1;
        while (!stack.empty()) {
          const int r = stack.back();
          const int s = pinv_[r];
          const int deg = s >= 0 ? static_cast<int>(lcol_[s].size()) : 0;
          if (stack_pos.back() < deg) {
            const int child = lcol_[s][stack_pos.back()++].first;
            if (!mark[child]) {
              mark[child] = 1;
              stack.push_back(child);
              stack_pos.push_back(0);
            }
          } else {
            topo.push_back(r);
            stack.pop_back();
            stack_pos.pop_back();
          }
        }
      }

      // numeric: x = L \ a (duplicate row entries accumulate)
      for (const auto &[r, v] : col) work[r] += v;
      for (int idx = static_cast<int>(topo.size()) - 1; idx >= 0; --idx) {
        const int r = topo[idx];
        const int s = pinv_[r];
        if (s < 0) continue;
        const double xv = work[r];
        if (xv != 0.0)
          for (const auto &[rr, lv] : lcol_[s]) work[rr] -= lv * xv;
      }

      // partial pivoting over not-yet-pivoted rows; ties to the lowest row
      int piv = -1;
      double best = 0.0;
      for (const int r : topo)
        if (pinv_[r] < 0) {
          const double a = std::fabs(work[r]);
          if (a > best || (a == best && a > 0.0 && (piv < 0 || r < piv))) {
            best = a;
            piv = r;
          }
        }
      if (piv < 0 || best < kSingularTol) {
        for (const int r : topo) {
          work[r] = 0.0;
          mark[r] = 0;
        }
        return t;
      }

      const double pv = work[piv];
      udiag_[t] = pv;
      for (const int r : topo) {
        if (pinv_[r] >= 0) {
          if (work[r] != 0.0) ucol_[t].emplace_back(pinv_[r], work[r]);
        } else if (r != piv && work[r] != 0.0) {
          lcol_[t].emplace_back(r, work[r] / pv);
        }
        work[r] = 0.0;
        mark[r] = 0;
      }
      pinv_[piv] = t;
      prow_[t] = piv;
    }

    // remap L row indices to pivot steps for the solves
    for (auto &lc : lcol_)
      for (auto &e : lc) e.first = pinv_[e.first];
    return -1;
  }

  // In place solve B v = b; input indexed by row, output by basis column.
  void ftran(std::vector<double> &b, std::vector<double> &scratch) const {
    scratch.resize(m_);
    for (int t = 0; t < m_; ++t) scratch[t] = b[prow_[t]];
    for (int t = 0; t < m_; ++t) {
      const double v = scratch[t];
      if (v != 0.0)
        for (const auto &[s, lv] : lcol_[t]) scratch[s] -= lv * v;
    }
    for (int t = m_ - 1; t >= 0; --t) {
      const double v = scratch[t] / udiag_[t];
      scratch[t] = v;
      if (v != 0.0)
        for (const auto &[s, uv] : ucol_[t]) scratch[s] -= uv * v;
    }
    for (int t = 0; t < m_; ++t) b[order_[t]] = scratch[t];
  }

  // In place solve B^T v = c; input indexed by basis column, output by row.
  void btran(std::vector<double> &c, std::vector<double> &scratch) const {
    scratch.resize(m_);
    for (int t = 0; t < m_; ++t) scratch[t] = c[order_[t]];
    for (int t = 0; t < m_; ++t) {
      double acc = scratch[t];
      for (const auto &[s, uv] : ucol_[t]) acc -= uv * scratch[s];
      scratch[t] = acc / udiag_[t];
    }
    for (int t = m_ - 1; t >= 0; --t) {
      double acc = scratch[t];
      for (const auto &[s, lv] : lcol_[t]) acc -= lv * scratch[s];
      scratch[t] = acc;
    }
    for (int t = 0; t < m_; ++t) c[prow_[t]] = scratch[t];
  }

  int dim() const { return m_; }

  static constexpr double kSingularTol = 1e-11;

private:
  int m_ = 0;
  std::vector<int> order_;  // processing step -> basis column
  std::vector<int> pinv_;   // row -> pivot step
  std::vector<int> prow_;   // pivot step -> row
  std::vector<std::vector<std::pair<int, double>>> lcol_, ucol_;
  std::vector<double> udiag_;
};

}  // namespace itlp::detail
