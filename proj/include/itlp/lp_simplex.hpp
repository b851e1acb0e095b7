#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "itlp/lp.hpp"
#include "itlp/lp_lu.hpp"

namespace itlp {

namespace detail {

// Bounded-variable primal simplex on the computational form
//
//   minimize c'v   subject to  A x - s = 0,  bounds on x (structural) and
//   s (logical, one per row, bounds from the row relation and rhs).
//
// Two phases: rows whose initial activity violates the logical bounds get a
// unit artificial column; phase 1 minimizes the artificial sum. Pricing is
// Dantzig (most negative reduced cost) with a Bland fallback that engages
// after a run of degenerate pivots and disengages on the next real step.
// The basis is held as a sparse LU plus product-form eta updates, refreshed
// every refactor_interval pivots.
class Simplex {
public:
  Simplex(const LpProblem &prob, const SimplexOptions &opt) : prob_(prob), opt_(opt) {
    nv_ = prob.num_vars;
    m_ = prob.num_rows();
    bland_ = opt.force_bland;
    engaged_anticycling_ = opt.force_bland;
    build_columns();
  }

  LpSolution run() {
    LpSolution out;
    setup();

    if (!bounds_consistent_) {
      out.status = LpStatus::Infeasible;
      finish(out);
      return out;
    }

    if (num_artificials_ > 0) {
      phase_ = 1;
      const LpStatus st = iterate();
      out.phase1_iterations = iters_;
      if (st == LpStatus::IterationLimit) {
        out.status = st;
        finish(out);
        return out;
      }
      double infeas = 0.0;
      for (int j = art_begin_; j < total_vars_; ++j) infeas += value_[j];
      if (infeas > opt_.feas_tol * (1.0 + rhs_scale_)) {
        out.status = LpStatus::Infeasible;
        finish(out);
        return out;
      }
      // lock artificials at zero for phase 2
      for (int j = art_begin_; j < total_vars_; ++j) {
        lo_[j] = 0.0;
        up_[j] = 0.0;
        if (status_[j] != Status::Basic) {
          status_[j] = Status::Fixed;
          value_[j] = 0.0;
        }
      }
    }

    phase_ = 2;
    const LpStatus st = iterate();
    out.status = st;
    finish(out);
    return out;
  }

private:
  enum class Status : char { Basic, AtLower, AtUpper, Free, Fixed };

  const LpProblem &prob_;
  SimplexOptions opt_;
  int nv_ = 0, m_ = 0;

  // computational-form columns: structurals (CSC), then logicals (-e_i),
  // then artificials (+/- e_i), appended at setup
  std::vector<int> col_start_, col_row_;
  std::vector<double> col_val_;
  int total_vars_ = 0;
  int art_begin_ = 0;
  int num_artificials_ = 0;

  std::vector<double> lo_, up_, cost_, value_;
  std::vector<Status> status_;
  std::vector<int> basic_var_;  // basis position -> variable
  std::vector<int> var_pos_;    // variable -> basis position or -1

  BasisLU lu_;
  struct Eta {
    int pos;
    double pivot;
    std::vector<std::pair<int, double>> rest;  // alpha entries, pivot excluded
  };
  std::vector<Eta> etas_;

  int phase_ = 2;
  long long iters_ = 0;
  bool bland_ = false;
  bool engaged_anticycling_ = false;
  int stall_ = 0;
  double rhs_scale_ = 0.0;
  bool bounds_consistent_ = true;
  std::vector<char> banned_;
  int banned_count_ = 0;
  static constexpr double kStablePivot = 1e-7;

  void clear_bans() {
    if (banned_count_ == 0) return;
    std::fill(banned_.begin(), banned_.end(), 0);
    banned_count_ = 0;
  }

  std::vector<double> work_, scratch_, y_, alpha_;

  void build_columns() {
    // transpose the CSR rows into CSC structural columns
    std::vector<int> count(nv_, 0);
    for (const int c : prob_.col_index) ++count[c];
    col_start_.assign(nv_ + 1, 0);
    for (int j = 0; j < nv_; ++j) col_start_[j + 1] = col_start_[j] + count[j];
    col_row_.resize(prob_.col_index.size());
    col_val_.resize(prob_.col_index.size());
    std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
    for (int i = 0; i < m_; ++i)
      for (int t = prob_.row_start[i]; t < prob_.row_start[i + 1]; ++t) {
        const int j = prob_.col_index[t];
        col_row_[fill[j]] = i;
        col_val_[fill[j]] = prob_.coef[t];
        ++fill[j];
      }
  }

  // column access across structurals / logicals / artificials
  template <class F>
  void for_col(int j, F &&f) const {
    if (j < nv_) {
      for (int t = col_start_[j]; t < col_start_[j + 1]; ++t) f(col_row_[t], col_val_[t]);
    } else if (j < nv_ + m_) {
      f(j - nv_, -1.0);
    } else {
      f(art_row_[j - art_begin_], art_sign_[j - art_begin_]);
    }
  }

  std::vector<int> art_row_;
  std::vector<double> art_sign_;

  void setup() {
    total_vars_ = nv_ + m_;
    lo_.resize(total_vars_);
    up_.resize(total_vars_);
    cost_.assign(total_vars_, 0.0);
    value_.assign(total_vars_, 0.0);
    status_.assign(total_vars_, Status::AtLower);
    var_pos_.assign(total_vars_, -1);

    for (int j = 0; j < nv_; ++j) {
      lo_[j] = prob_.lb[j];
      up_[j] = prob_.ub[j];
      if (lo_[j] > up_[j] + opt_.feas_tol) bounds_consistent_ = false;
    }
    rhs_scale_ = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int j = nv_ + i;
      switch (prob_.relation[i]) {
        case 'L': lo_[j] = -kInf; up_[j] = prob_.rhs[i]; break;
        case 'G': lo_[j] = prob_.rhs[i]; up_[j] = kInf; break;
        case 'E': lo_[j] = prob_.rhs[i]; up_[j] = prob_.rhs[i]; break;
        default: throw std::invalid_argument("solve_lp: unknown row relation");
      }
      rhs_scale_ = std::max(rhs_scale_, std::fabs(prob_.rhs[i]));
    }
    if (!bounds_consistent_) return;

    // nonbasic structurals at a finite bound, free ones at zero
    for (int j = 0; j < nv_; ++j) {
      if (lo_[j] == up_[j]) {
        status_[j] = Status::Fixed;
        value_[j] = lo_[j];
      } else if (lo_[j] > -kInf) {
        status_[j] = Status::AtLower;
        value_[j] = lo_[j];
      } else if (up_[j] < kInf) {
        status_[j] = Status::AtUpper;
        value_[j] = up_[j];
      } else {
        status_[j] = Status::Free;
        value_[j] = 0.0;
      }
    }

    // initial activities decide which rows need an artificial
    std::vector<double> act(m_, 0.0);
    for (int j = 0; j < nv_; ++j)
      if (value_[j] != 0.0)
        for (int t = col_start_[j]; t < col_start_[j + 1]; ++t)
          act[col_row_[t]] += col_val_[t] * value_[j];

    // crash: a violated row with a singleton column whose value can absorb
    // the gap gets that column as its basic variable instead of an artificial
    std::vector<int> col_nnz(nv_);
    for (int j = 0; j < nv_; ++j) col_nnz[j] = col_start_[j + 1] - col_start_[j];
    std::vector<int> crash(m_, -1);
    for (int i = 0; i < m_; ++i) {
      const int sj = nv_ + i;
      if (act[i] >= lo_[sj] - opt_.feas_tol && act[i] <= up_[sj] + opt_.feas_tol) continue;
      const double target = act[i] < lo_[sj] ? lo_[sj] : up_[sj];
      for (int t = prob_.row_start[i]; t < prob_.row_start[i + 1]; ++t) {
        const int j = prob_.col_index[t];
        if (col_nnz[j] != 1 || status_[j] == Status::Fixed) continue;
        const double a = prob_.coef[t];
        if (std::fabs(a) < 1e-12) continue;
        const double v = value_[j] + (target - act[i]) / a;
        if (v < lo_[j] - opt_.feas_tol || v > up_[j] + opt_.feas_tol) continue;
        act[i] = target;
        value_[j] = v;
        crash[i] = j;
        break;
      }
    }

    basic_var_.assign(m_, -1);
    art_row_.clear();
    art_sign_.clear();
    std::vector<double> art_lo, art_up, art_val;
    for (int i = 0; i < m_; ++i) {
      const int sj = nv_ + i;
      if (crash[i] >= 0) {
        basic_var_[i] = crash[i];
        status_[crash[i]] = Status::Basic;
        value_[sj] = act[i];
        status_[sj] = lo_[sj] == up_[sj] ? Status::Fixed
                      : (act[i] == lo_[sj] ? Status::AtLower : Status::AtUpper);
        continue;
      }
      if (act[i] >= lo_[sj] - opt_.feas_tol && act[i] <= up_[sj] + opt_.feas_tol) {
        basic_var_[i] = sj;
        value_[sj] = act[i];
        status_[sj] = Status::Basic;
      } else {
        const double target = act[i] < lo_[sj] ? lo_[sj] : up_[sj];
        value_[sj] = target;
        status_[sj] = lo_[sj] == up_[sj] ? Status::Fixed
                      : (target == lo_[sj] ? Status::AtLower : Status::AtUpper);
        // A x - s + d a = 0  =>  a = (s - act) / d, choose d so a >= 0
        const double resid = target - act[i];
        art_row_.push_back(i);
        art_sign_.push_back(resid >= 0.0 ? 1.0 : -1.0);
        art_lo.push_back(0.0);
        art_up.push_back(kInf);
        art_val.push_back(std::fabs(resid));
        basic_var_[i] = total_vars_ + static_cast<int>(art_row_.size()) - 1;
      }
    }
    num_artificials_ = static_cast<int>(art_row_.size());
    art_begin_ = total_vars_;
    total_vars_ += num_artificials_;
    lo_.insert(lo_.end(), art_lo.begin(), art_lo.end());
    up_.insert(up_.end(), art_up.begin(), art_up.end());
    cost_.resize(total_vars_, 0.0);
    value_.insert(value_.end(), art_val.begin(), art_val.end());
    status_.resize(total_vars_, Status::Basic);
    var_pos_.assign(total_vars_, -1);
    for (int i = 0; i < m_; ++i) var_pos_[basic_var_[i]] = i;
    banned_.assign(total_vars_, 0);
    banned_count_ = 0;

    refactor();
  }

  void set_phase_costs() {
    if (phase_ == 1) {
      std::fill(cost_.begin(), cost_.end(), 0.0);
      for (int j = art_begin_; j < total_vars_; ++j) cost_[j] = 1.0;
    } else {
      for (int j = 0; j < nv_; ++j) cost_[j] = prob_.obj[j];
      std::fill(cost_.begin() + nv_, cost_.end(), 0.0);
    }
  }

  void refactor() {
    std::vector<std::vector<std::pair<int, double>>> cols(m_);
    for (int r = 0; r < m_; ++r) {
      auto &c = cols[r];
      for_col(basic_var_[r], [&](int row, double v) { c.emplace_back(row, v); });
    }
    const int bad = lu_.factor(m_, cols);
    if (bad >= 0)
      throw std::runtime_error("solve_lp: numerically singular basis at factorization step " +
                               std::to_string(bad));
    etas_.clear();
    recompute_basics();
  }

  void recompute_basics() {
    work_.assign(m_, 0.0);
    for (int j = 0; j < total_vars_; ++j)
      if (status_[j] != Status::Basic && value_[j] != 0.0)
        for_col(j, [&](int row, double v) { work_[row] -= v * value_[j]; });
    ftran(work_);
    for (int r = 0; r < m_; ++r) value_[basic_var_[r]] = work_[r];
  }

  void ftran(std::vector<double> &v) {
    lu_.ftran(v, scratch_);
    for (const Eta &e : etas_) {
      const double piv = v[e.pos] / e.pivot;
      v[e.pos] = piv;
      if (piv != 0.0)
        for (const auto &[i, a] : e.rest) v[i] -= a * piv;
    }
  }

  void btran(std::vector<double> &v) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double acc = v[it->pos];
      for (const auto &[i, a] : it->rest) acc -= a * v[i];
      v[it->pos] = acc / it->pivot;
    }
    lu_.btran(v, scratch_);
  }

  void compute_duals() {
    y_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) y_[r] = cost_[basic_var_[r]];
    btran(y_);
  }

  double reduced_cost(int j) const {
    double d = cost_[j];
    if (j < nv_) {
      for (int t = col_start_[j]; t < col_start_[j + 1]; ++t)
        d -= y_[col_row_[t]] * col_val_[t];
    } else if (j < nv_ + m_) {
      d += y_[j - nv_];
    } else {
      d -= y_[art_row_[j - art_begin_]] * art_sign_[j - art_begin_];
    }
    return d;
  }

  int eligible_direction(int j, double d) const {
    const Status st = status_[j];
    if (st == Status::AtLower && d < -opt_.opt_tol) return 1;
    if (st == Status::AtUpper && d > opt_.opt_tol) return -1;
    if (st == Status::Free && std::fabs(d) > opt_.opt_tol) return d < 0 ? 1 : -1;
    return 0;
  }

  // Multiple pricing: a full Dantzig scan refills a candidate shortlist, then
  // minor iterations price only the shortlist until it holds nothing
  // attractive. Bland's rule always scans fully (lowest eligible index).
  std::vector<int> shortlist_;
  static constexpr int kShortlist = 256;

  int price_full(int &sigma_out) {
    shortlist_.clear();
    std::vector<std::pair<double, int>> scored;
    for (int j = 0; j < total_vars_; ++j) {
      const Status st = status_[j];
      if (st == Status::Basic || st == Status::Fixed || banned_[j]) continue;
      const double d = reduced_cost(j);
      const int sigma = eligible_direction(j, d);
      if (sigma == 0) continue;
      if (bland_) {
        sigma_out = sigma;
        return j;  // lowest index, loop order
      }
      scored.emplace_back(std::fabs(d), j);
    }
    if (scored.empty()) {
      sigma_out = 0;
      return -1;
    }
    auto better = [](const std::pair<double, int> &a, const std::pair<double, int> &b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    };
    const std::size_t keep = std::min<std::size_t>(kShortlist, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(), better);
    for (std::size_t t = 0; t < keep; ++t) shortlist_.push_back(scored[t].second);
    const int j = shortlist_.front();
    sigma_out = eligible_direction(j, reduced_cost(j));
    return j;
  }

  int price(int &sigma_out) {
    if (bland_) return price_full(sigma_out);
    int best = -1, best_sigma = 0;
    double best_score = opt_.opt_tol;
    for (const int j : shortlist_) {
      if (status_[j] == Status::Basic || status_[j] == Status::Fixed || banned_[j]) continue;
      const double d = reduced_cost(j);
      const int sigma = eligible_direction(j, d);
      if (sigma == 0) continue;
      if (std::fabs(d) > best_score || (std::fabs(d) == best_score && best >= 0 && j < best)) {
        best_score = std::fabs(d);
        best = j;
        best_sigma = sigma;
      }
    }
    if (best >= 0) {
      sigma_out = best_sigma;
      return best;
    }
    return price_full(sigma_out);
  }

  LpStatus iterate() {
    set_phase_costs();
    shortlist_.clear();
    int clean_rounds = 0;
    bool just_refactored = true;
    while (true) {
      if (iters_ >= opt_.iter_limit) return LpStatus::IterationLimit;
      compute_duals();
      int sigma;
      const int q = price(sigma);
      if (q < 0) {
        if (banned_count_ > 0) {
          // nothing attractive outside the set-aside columns; retry them
          clear_bans();
          if (!just_refactored) {
            refactor();
            just_refactored = true;
          }
          if (++clean_rounds >= 16) return LpStatus::Optimal;
          continue;
        }
        // confirm optimality on a fresh factorization
        if (just_refactored || clean_rounds >= 16) return LpStatus::Optimal;
        refactor();
        just_refactored = true;
        ++clean_rounds;
        continue;
      }

      alpha_.assign(m_, 0.0);
      for_col(q, [&](int row, double v) { alpha_[row] = v; });
      ftran(alpha_);

      // two-pass ratio test: exact minimum first, then the stablest pivot
      // (largest |alpha|) within a tolerance window of it
      auto ratio_of = [&](int r, double a) {
        const int bj = basic_var_[r];
        const double rate = -sigma * a;
        if (rate < 0.0) {
          if (lo_[bj] == -kInf) return kInf;
          return std::max(0.0, (value_[bj] - lo_[bj]) / (-rate));
        }
        if (up_[bj] == kInf) return kInf;
        return std::max(0.0, (up_[bj] - value_[bj]) / rate);
      };
      double t_min = kInf;
      for (int r = 0; r < m_; ++r) {
        const double a = alpha_[r];
        if (std::fabs(a) <= opt_.pivot_tol) continue;
        t_min = std::min(t_min, ratio_of(r, a));
      }
      int r_best = -1;
      double t_best = kInf;
      if (t_min < kInf) {
        const double window = t_min + 1e-9 * std::max(1.0, t_min);
        for (int r = 0; r < m_; ++r) {
          const double a = alpha_[r];
          if (std::fabs(a) <= opt_.pivot_tol) continue;
          const double t = ratio_of(r, a);
          if (t > window) continue;
          if (r_best < 0 ||
              (bland_ ? basic_var_[r] < basic_var_[r_best]
                      : std::fabs(a) > std::fabs(alpha_[r_best]))) {
            r_best = r;
            t_best = t;
          }
        }
      }

      double own = kInf;
      if (lo_[q] > -kInf && up_[q] < kInf) own = up_[q] - lo_[q];
      if (own <= t_best && own < kInf) {
        // bound flip, no basis change
        for (int r = 0; r < m_; ++r)
          if (alpha_[r] != 0.0) value_[basic_var_[r]] -= own * sigma * alpha_[r];
        value_[q] = sigma > 0 ? up_[q] : lo_[q];
        status_[q] = sigma > 0 ? Status::AtUpper : Status::AtLower;
        ++iters_;
        note_step(own);
        clear_bans();
        just_refactored = false;
        continue;
      }

      if (r_best < 0) {
        if (!just_refactored) {
          refactor();  // rule out a false unbounded ray from stale etas
          just_refactored = true;
          continue;
        }
        if (phase_ == 1)
          throw std::runtime_error("solve_lp: phase-1 objective unbounded (internal error)");
        return LpStatus::Unbounded;
      }

      // an unstable pivot poisons the factorization; retry on fresh factors,
      // then set the column aside until the basis changes
      if (std::fabs(alpha_[r_best]) < kStablePivot) {
        if (!just_refactored) {
          refactor();
          just_refactored = true;
          continue;
        }
        banned_[q] = 1;
        ++banned_count_;
        continue;
      }

      pivot(q, sigma, r_best, t_best);
      ++iters_;
      note_step(t_best);
      clear_bans();
      just_refactored = false;
      if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
        refactor();
        just_refactored = true;
      }
    }
  }

  void note_step(double t) {
    if (t <= 1e-12) {
      if (++stall_ >= opt_.stall_threshold && !bland_) {
        bland_ = true;
        engaged_anticycling_ = true;
      }
    } else {
      stall_ = 0;
      bland_ = opt_.force_bland;
    }
  }

  void pivot(int q, int sigma, int r, double t) {
    const int leaving = basic_var_[r];
    for (int rr = 0; rr < m_; ++rr)
      if (alpha_[rr] != 0.0) value_[basic_var_[rr]] -= t * sigma * alpha_[rr];
    value_[q] = value_[q] + sigma * t;

    // leaving variable lands on the bound that blocked
    const double rate = -sigma * alpha_[r];
    if (lo_[leaving] == up_[leaving]) {
      status_[leaving] = Status::Fixed;
      value_[leaving] = lo_[leaving];
    } else if (rate < 0.0) {
      status_[leaving] = Status::AtLower;
      value_[leaving] = lo_[leaving];
    } else {
      status_[leaving] = Status::AtUpper;
      value_[leaving] = up_[leaving];
    }
    var_pos_[leaving] = -1;

    Eta e;
    e.pos = r;
    e.pivot = alpha_[r];
    for (int rr = 0; rr < m_; ++rr)
      if (rr != r && alpha_[rr] != 0.0) e.rest.emplace_back(rr, alpha_[rr]);
    etas_.push_back(std::move(e));

    basic_var_[r] = q;
    var_pos_[q] = r;
    status_[q] = Status::Basic;
  }

  void finish(LpSolution &out) {
    out.iterations = iters_;
    out.anti_cycling_engaged = engaged_anticycling_;
    out.x.assign(prob_.lb.begin(), prob_.lb.end());
    out.y.assign(m_, 0.0);
    if (!bounds_consistent_) return;
    for (int j = 0; j < nv_; ++j) out.x[j] = value_[j];
    double obj = 0.0;
    for (int j = 0; j < nv_; ++j) obj += prob_.obj[j] * value_[j];
    out.objective = obj;
    if (out.status == LpStatus::Optimal) {
      phase_ = 2;
      set_phase_costs();
      compute_duals();
      out.y = y_;
    }
  }
};

}  // namespace detail

// Solves a continuous LP with the bounded-variable primal simplex.
// Deterministic for identical inputs. Optimal solutions satisfy bounds and
// row relations within feas_tol and the reduced-cost conditions within
// opt_tol. Pure in its inputs: distinct problems may be solved from distinct
// threads (the audit hook, when set, must then be re-entrant); a single solve
// is internally single-threaded.
inline LpSolution solve_lp(const LpProblem &prob, const SimplexOptions &opt = {}) {
  detail::Simplex s(prob, opt);
  LpSolution sol = s.run();
  if (LpAudit::hook()) LpAudit::hook()(prob, sol);
  return sol;
}

}  // namespace itlp
