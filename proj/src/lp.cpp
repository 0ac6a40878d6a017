#include "mvd/lp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <memory>
#include <set>

#include "mvd/metric.hpp"

namespace mvd {

double lp_default_tol() {
  static double tol = [] {
    if (const char* env = std::getenv("MVD_LP_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0) return v;
    }
    return 1e-9;
  }();
  return tol;
}

namespace {

// Dense-tableau two-phase simplex over variables x >= 0. Pricing is Dantzig's
// rule, switching to Bland's rule after a streak of degenerate pivots so that
// cycling cannot occur.
class Simplex {
 public:
  enum class Status { Optimal, Unbounded, Infeasible };

  Simplex(const LinearProgram& lp, double tol) : lp_(lp), tol_(tol) {}

  Status solve() {
    build();
    if (!phase1()) return Status::Infeasible;
    return phase2();
  }

  double value() const { return value_; }
  // Structural variable values at the final basic feasible solution.
  std::vector<double> point() const {
    std::vector<double> x(lp_.num_vars, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < lp_.num_vars) x[basis_[i]] = T(i, cols_ - 1);
    return x;
  }
  // Improving ray (structural components) when unbounded.
  std::vector<double> ray() const { return ray_; }

  // Append <= 0-rhs cuts to an optimal tableau and reoptimize with the dual
  // simplex (the old basis stays dual-feasible; only primal feasibility is
  // lost at the rows just added). Returns false on numerical trouble, in
  // which case the caller should rebuild cold.
  bool add_rows(const std::vector<LinearProgram::Constraint>& rows) {
    const int extra = static_cast<int>(rows.size());
    if (extra == 0) return true;
    const int old_cols = cols_, old_m = m_;
    const int new_cols = cols_ + extra, new_m = m_ + extra;
    std::vector<double> ntab(static_cast<size_t>(new_m + 1) * new_cols, 0.0);
    // rhs stays the last column; new slack columns sit just before it.
    for (int i = 0; i <= old_m; ++i) {
      const double* src = &tab_[static_cast<size_t>(i) * old_cols];
      double* dst = &ntab[static_cast<size_t>(i < old_m ? i : new_m) * new_cols];
      std::copy(src, src + old_cols - 1, dst);
      dst[new_cols - 1] = src[old_cols - 1];
    }
    tab_.swap(ntab);
    const int slack_base = old_cols - 1;
    cols_ = new_cols;
    is_art_.resize(new_cols, 0);
    basis_.resize(new_m, -1);
    for (int e = 0; e < extra; ++e) {
      double* row = &tab_[static_cast<size_t>(old_m + e) * new_cols];
      const auto& c = rows[e];
      for (int j = 0; j < lp_.num_vars && j < static_cast<int>(c.coeffs.size()); ++j)
        row[j] = c.coeffs[j];
      row[slack_base + e] = 1.0;
      row[new_cols - 1] = c.rhs;
      // Express through the current basis (each basic column is a unit vector,
      // so a single sweep eliminates them all).
      for (int i = 0; i < old_m; ++i) {
        double f = row[basis_[i]];
        if (f == 0.0) continue;
        const double* bi = &tab_[static_cast<size_t>(i) * new_cols];
        for (int j = 0; j < new_cols; ++j) row[j] -= f * bi[j];
      }
      basis_[old_m + e] = slack_base + e;
    }
    m_ = new_m;
    if (!dual_iterate()) return false;
    value_ = 0.0;
    auto x = point();
    for (int j = 0; j < lp_.num_vars; ++j) value_ += lp_.objective[j] * x[j];
    return true;
  }

 private:
  const LinearProgram& lp_;
  double tol_;
  int m_ = 0, cols_ = 0, nart_ = 0;
  std::vector<double> tab_;      // (m_+1) x cols_, objective in last row, rhs in last col
  std::vector<int> basis_;
  std::vector<char> is_art_;     // per column
  std::vector<double> ray_;
  double value_ = 0.0;

  double& T(int r, int c) { return tab_[static_cast<size_t>(r) * cols_ + c]; }
  double T(int r, int c) const { return tab_[static_cast<size_t>(r) * cols_ + c]; }

  void build() {
    m_ = static_cast<int>(lp_.rows.size());
    int nslack = 0;
    for (const auto& row : lp_.rows)
      if (row.rel == LinearProgram::Rel::LessEq) ++nslack;
    // Rows are normalized to rhs >= 0 first; <= rows that flip become >= rows
    // needing surplus + artificial, = rows always get an artificial.
    nart_ = 0;
    for (const auto& row : lp_.rows)
      if (row.rel == LinearProgram::Rel::Eq || row.rhs < 0) ++nart_;
    cols_ = lp_.num_vars + nslack + nart_ + 1;
    tab_.assign(static_cast<size_t>(m_ + 1) * cols_, 0.0);
    basis_.assign(m_, -1);
    is_art_.assign(cols_, 0);

    int slack_at = lp_.num_vars;
    int art_at = lp_.num_vars + nslack;
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp_.rows[i];
      double sign = row.rhs < 0 ? -1.0 : 1.0;
      for (int j = 0; j < lp_.num_vars && j < static_cast<int>(row.coeffs.size()); ++j)
        T(i, j) = sign * row.coeffs[j];
      T(i, cols_ - 1) = sign * row.rhs;
      if (row.rel == LinearProgram::Rel::LessEq) {
        T(i, slack_at) = sign;  // slack, or surplus when the row flipped
        if (sign > 0) basis_[i] = slack_at;
        ++slack_at;
      }
      if (basis_[i] < 0) {
        T(i, art_at) = 1.0;
        is_art_[art_at] = 1;
        basis_[i] = art_at;
        ++art_at;
      }
    }
  }

  // One pivot on (r, c).
  void pivot(int r, int c) {
    double* tr = &tab_[static_cast<size_t>(r) * cols_];
    double inv = 1.0 / tr[c];
    for (int j = 0; j < cols_; ++j) tr[j] *= inv;
    tr[c] = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double f = T(i, c);
      if (f == 0.0) continue;
      double* ti = &tab_[static_cast<size_t>(i) * cols_];
      for (int j = 0; j < cols_; ++j) ti[j] -= f * tr[j];
      ti[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Runs the simplex loop on the current objective row. allow_art: whether
  // artificial columns may enter (phase 1 only). Returns false on unbounded.
  bool iterate(bool allow_art) {
    int degenerate_streak = 0;
    const int bland_after = 40;
    for (;;) {
      bool bland = degenerate_streak >= bland_after;
      int enter = -1;
      double best = tol_;
      for (int j = 0; j < cols_ - 1; ++j) {
        if (!allow_art && is_art_[j]) continue;
        double rc = T(m_, j);
        if (rc > tol_) {
          if (bland) {
            enter = j;
            break;
          }
          if (rc > best) {
            best = rc;
            enter = j;
          }
        }
      }
      if (enter < 0) return true;  // optimal for this objective

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        double a = T(i, enter);
        if (a > tol_) {
          double ratio = T(i, cols_ - 1) / a;
          if (leave < 0 || ratio < best_ratio - tol_ ||
              (ratio < best_ratio + tol_ && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) {
        // Unbounded along the entering column.
        ray_.assign(lp_.num_vars, 0.0);
        if (enter < lp_.num_vars) ray_[enter] = 1.0;
        for (int i = 0; i < m_; ++i)
          if (basis_[i] < lp_.num_vars) ray_[basis_[i]] = -T(i, enter);
        return false;
      }
      double before = T(m_, cols_ - 1);
      pivot(leave, enter);
      degenerate_streak = std::abs(T(m_, cols_ - 1) - before) <= tol_ ? degenerate_streak + 1 : 0;
    }
  }

  // Dual simplex: drive negative-rhs rows out while keeping reduced costs
  // nonpositive. Used to reoptimize after add_rows. Returns false when no
  // entering column exists or the pivot budget runs out.
  bool dual_iterate() {
    const int max_pivots = 50000;
    for (int it = 0; it < max_pivots; ++it) {
      int leave = -1;
      double worst = -tol_;
      for (int i = 0; i < m_; ++i)
        if (T(i, cols_ - 1) < worst) {
          worst = T(i, cols_ - 1);
          leave = i;
        }
      if (leave < 0) return true;  // primal feasible again => optimal
      int enter = -1;
      double best_ratio = 0.0;
      for (int j = 0; j < cols_ - 1; ++j) {
        if (is_art_[j]) continue;
        double a = T(leave, j);
        if (a < -tol_) {
          double d = std::min(T(m_, j), 0.0);
          double ratio = d / a;  // >= 0
          if (enter < 0 || ratio < best_ratio - tol_ ||
              (ratio < best_ratio + tol_ && j < enter)) {
            enter = j;
            best_ratio = ratio;
          }
        }
      }
      if (enter < 0) return false;  // numerically stuck (full LP is feasible)
      pivot(leave, enter);
    }
    return false;
  }

  bool phase1() {
    if (nart_ == 0) return true;
    // Maximize -sum(artificials): express through the rows they are basic in.
    for (int j = 0; j < cols_; ++j) T(m_, j) = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (!is_art_[basis_[i]]) continue;
      for (int j = 0; j < cols_; ++j)
        if (!is_art_[j]) T(m_, j) += T(i, j);
    }
    iterate(false);
    if (T(m_, cols_ - 1) > tol_ * std::max(1, m_)) return false;
    // Pivot remaining zero-level artificials out where possible.
    for (int i = 0; i < m_; ++i) {
      if (!is_art_[basis_[i]]) continue;
      int c = -1;
      for (int j = 0; j < lp_.num_vars && c < 0; ++j)
        if (std::abs(T(i, j)) > tol_) c = j;
      if (c >= 0) pivot(i, c);
      // else: redundant row; the artificial stays basic at level ~0 and its
      // column is barred from re-entering, which keeps it harmless.
    }
    return true;
  }

  Status phase2() {
    for (int j = 0; j < cols_; ++j) T(m_, j) = 0.0;
    for (int j = 0; j < lp_.num_vars; ++j) T(m_, j) = lp_.objective[j];
    // Reduce the objective row against the current basis.
    for (int i = 0; i < m_; ++i) {
      int b = basis_[i];
      double f = T(m_, b);
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) T(m_, j) -= f * T(i, j);
    }
    if (!iterate(false)) return Status::Unbounded;
    // Read the value off the final point rather than the tableau's rhs cell;
    // this keeps the result independent of the objective-row sign convention.
    value_ = 0.0;
    auto x = point();
    for (int j = 0; j < lp_.num_vars; ++j) value_ += lp_.objective[j] * x[j];
    return Status::Optimal;
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, double tol) {
  if (static_cast<int>(lp.objective.size()) != lp.num_vars)
    throw BadParams("objective length != num_vars");
  Simplex s(lp, tol);
  LpResult out;
  switch (s.solve()) {
    case Simplex::Status::Infeasible:
      out.status = LpResult::Status::Infeasible;
      break;
    case Simplex::Status::Unbounded:
      out.status = LpResult::Status::Unbounded;
      break;
    case Simplex::Status::Optimal:
      out.status = LpResult::Status::Optimal;
      out.value = s.value();
      out.witness = s.point();
      break;
  }
  return out;
}

LinearProgram build_worstcase_lp(const VoteProfile& p_in, const CandidateDistribution& dist,
                                 CandidateId reference) {
  VoteProfile p = normalize_profile(p_in);
  const int m = p.num_ballots(), n = p.n;
  if (dist.n() != n) throw DimensionMismatch("distribution has wrong length");
  if (reference < 0 || reference >= n) throw BadParams("reference candidate out of range");

  LinearProgram lp;
  lp.num_vars = m * n;
  lp.objective.assign(lp.num_vars, 0.0);
  for (int v = 0; v < m; ++v) {
    double w = rat_to_double(p.ballots[v].weight);
    for (int x = 0; x < n; ++x)
      lp.objective[lp_var(n, v, x)] = w * rat_to_double(dist.probs[x]);
  }

  // consistency: d(v, r_i) - d(v, r_{i+1}) <= 0
  for (int v = 0; v < m; ++v) {
    const auto& ord = p.ballots[v].ranking.order;
    for (int i = 0; i + 1 < n; ++i) {
      LinearProgram::Constraint c;
      c.coeffs.assign(lp.num_vars, 0.0);
      c.coeffs[lp_var(n, v, ord[i])] += 1.0;
      c.coeffs[lp_var(n, v, ord[i + 1])] -= 1.0;
      lp.rows.push_back(std::move(c));
    }
  }
  // quadrilateral: d(v,x) - d(v,y) - d(v2,y) - d(v2,x) <= 0
  for (int v = 0; v < m; ++v)
    for (int v2 = 0; v2 < m; ++v2) {
      if (v == v2) continue;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (x == y) continue;
          LinearProgram::Constraint c;
          c.coeffs.assign(lp.num_vars, 0.0);
          c.coeffs[lp_var(n, v, x)] += 1.0;
          c.coeffs[lp_var(n, v, y)] -= 1.0;
          c.coeffs[lp_var(n, v2, y)] -= 1.0;
          c.coeffs[lp_var(n, v2, x)] -= 1.0;
          lp.rows.push_back(std::move(c));
        }
    }
  // normalization: sum_v w_v d(v, reference) = 1
  LinearProgram::Constraint norm;
  norm.coeffs.assign(lp.num_vars, 0.0);
  norm.rel = LinearProgram::Rel::Eq;
  norm.rhs = 1.0;
  for (int v = 0; v < m; ++v)
    norm.coeffs[lp_var(n, v, reference)] = rat_to_double(p.ballots[v].weight);
  lp.rows.push_back(std::move(norm));
  return lp;
}

namespace {

struct QuadRow {
  int v, v2, x, y;
};

// Worst-case LP for one reference candidate, solved by constraint generation:
// consistency + normalization always active, quadrilateral rows pulled from
// the pool as the current witness (or improving ray) violates them. The final
// answer is certified against the complete pool, so it equals the full LP's.
class ReferenceSolver {
 public:
  ReferenceSolver(const VoteProfile& p, const CandidateDistribution& dist, CandidateId ref,
                  double tol)
      : p_(p), dist_(dist), ref_(ref), tol_(tol), m_(p.num_ballots()), n_(p.n) {}

  LpResult solve() {
    const bool stats = std::getenv("MVD_LP_STATS") != nullptr;
    auto t0 = std::chrono::steady_clock::now();
    base_ = build_base();
    std::set<std::array<int, 4>> active;
    std::vector<QuadRow>& act_rows = act_rows_;
    act_rows.clear();
    const int max_rounds = 2 * m_ * m_ * n_ * n_ + 8;
    int round = 0;
    auto report_stats = [&](const char* how) {
      if (!stats) return;
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
      std::fprintf(stderr, "[lp] ref=%d rounds=%d quad_rows=%zu %s %.1fms\n", ref_, round + 1,
                   act_rows.size(), how, ms);
    };
    // While the relaxation keeps coming back unbounded we rebuild cold (there
    // is no basis worth keeping); once it turns optimal, later cuts reuse the
    // live tableau through Simplex::add_rows + dual simplex.
    std::unique_ptr<LinearProgram> lp_store;
    std::unique_ptr<Simplex> live;
    Simplex::Status st{};
    for (round = 0; round < max_rounds; ++round) {
      if (!live) {
        lp_store = std::make_unique<LinearProgram>(base_);
        for (const auto& q : act_rows) lp_store->rows.push_back(make_quad(q));
        live = std::make_unique<Simplex>(*lp_store, tol_);
        st = live->solve();
      }
      if (st == Simplex::Status::Infeasible) {
        // cannot happen: the all-ones point is feasible; treat as numerical failure
        LpResult r;
        r.status = LpResult::Status::Infeasible;
        return r;
      }
      if (st == Simplex::Status::Optimal) {
        auto x = live->point();
        auto viol = violated(x, 64);
        if (viol.empty()) {
          report_stats("optimal");
          LpResult r;
          r.status = LpResult::Status::Optimal;
          r.value = live->value();
          r.witness = std::move(x);
          return r;
        }
        if (!add_new(viol, active, act_rows)) {
          LpResult r;  // numerical stand-off; report the current relaxation
          r.status = LpResult::Status::Optimal;
          r.value = live->value();
          r.witness = std::move(x);
          return r;
        }
        std::vector<LinearProgram::Constraint> cuts;
        cuts.reserve(viol.size());
        for (const auto& q : viol) cuts.push_back(make_quad(q));
        if (live->add_rows(cuts)) {
          st = Simplex::Status::Optimal;
        } else {
          live.reset();  // rebuild cold next round with the grown pool
        }
        continue;
      }
      // Unbounded relaxation: first cut the ray, then double-check the point.
      auto ray = live->ray();
      double amp = 0.0;
      for (double c : ray) amp = std::max(amp, std::abs(c));
      if (amp > 0)
        for (double& c : ray) c /= amp;  // unit scale so the violation test is meaningful
      auto ray_viol = violated(ray, 64, /*rhs_zero_only=*/true);
      if (!ray_viol.empty() && add_new(ray_viol, active, act_rows)) {
        live.reset();
        continue;
      }
      auto pt_viol = violated(live->point(), 64);
      if (!pt_viol.empty() && add_new(pt_viol, active, act_rows)) {
        live.reset();
        continue;
      }
      report_stats("unbounded");
      LpResult r;  // ray violates no pool row: the full LP is unbounded
      r.status = LpResult::Status::Unbounded;
      return r;
    }
    throw Error("constraint generation failed to converge", 1);
  }

 private:
  const VoteProfile& p_;
  const CandidateDistribution& dist_;
  CandidateId ref_;
  double tol_;
  int m_, n_;
  LinearProgram base_;
  std::vector<QuadRow> act_rows_;

  LinearProgram build_base() {
    LinearProgram lp;
    lp.num_vars = m_ * n_;
    lp.objective.assign(lp.num_vars, 0.0);
    for (int v = 0; v < m_; ++v) {
      double w = rat_to_double(p_.ballots[v].weight);
      for (int x = 0; x < n_; ++x)
        lp.objective[lp_var(n_, v, x)] = w * rat_to_double(dist_.probs[x]);
    }
    for (int v = 0; v < m_; ++v) {
      const auto& ord = p_.ballots[v].ranking.order;
      for (int i = 0; i + 1 < n_; ++i) {
        LinearProgram::Constraint c;
        c.coeffs.assign(lp.num_vars, 0.0);
        c.coeffs[lp_var(n_, v, ord[i])] += 1.0;
        c.coeffs[lp_var(n_, v, ord[i + 1])] -= 1.0;
        lp.rows.push_back(std::move(c));
      }
    }
    LinearProgram::Constraint norm;
    norm.coeffs.assign(lp.num_vars, 0.0);
    norm.rel = LinearProgram::Rel::Eq;
    norm.rhs = 1.0;
    for (int v = 0; v < m_; ++v)
      norm.coeffs[lp_var(n_, v, ref_)] = rat_to_double(p_.ballots[v].weight);
    lp.rows.push_back(std::move(norm));
    return lp;
  }

  LinearProgram::Constraint make_quad(const QuadRow& q) const {
    LinearProgram::Constraint c;
    c.coeffs.assign(m_ * n_, 0.0);
    c.coeffs[lp_var(n_, q.v, q.x)] += 1.0;
    c.coeffs[lp_var(n_, q.v, q.y)] -= 1.0;
    c.coeffs[lp_var(n_, q.v2, q.y)] -= 1.0;
    c.coeffs[lp_var(n_, q.v2, q.x)] -= 1.0;
    return c;
  }

  // Most-violated pool rows at the given point (or direction), up to `cap`
  // overall and at most two per ordered ballot pair so the cuts spread out.
  std::vector<QuadRow> violated(const std::vector<double>& x, size_t cap,
                                bool rhs_zero_only = false) const {
    (void)rhs_zero_only;  // all quadrilateral rows have rhs 0
    std::vector<std::pair<double, QuadRow>> hits;
    std::pair<double, QuadRow> pair_best[2];
    for (int v = 0; v < m_; ++v)
      for (int v2 = 0; v2 < m_; ++v2) {
        if (v == v2) continue;
        int found = 0;
        for (int a = 0; a < n_; ++a)
          for (int b = 0; b < n_; ++b) {
            if (a == b) continue;
            double s = x[lp_var(n_, v, a)] - x[lp_var(n_, v, b)] - x[lp_var(n_, v2, b)] -
                       x[lp_var(n_, v2, a)];
            if (s <= 10 * tol_) continue;
            if (found == 0 || s > pair_best[0].first) {
              if (found > 0) pair_best[1] = pair_best[0];
              pair_best[0] = {s, {v, v2, a, b}};
              found = std::min(found + 1, 2);
            } else if (found == 1 || s > pair_best[1].first) {
              pair_best[1] = {s, {v, v2, a, b}};
              found = 2;
            }
          }
        for (int i = 0; i < found; ++i) hits.push_back(pair_best[i]);
      }
    if (hits.size() > cap) {
      std::partial_sort(hits.begin(), hits.begin() + cap, hits.end(),
                        [](const auto& l, const auto& r) { return l.first > r.first; });
      hits.resize(cap);
    }
    std::vector<QuadRow> out;
    out.reserve(hits.size());
    for (auto& h : hits) out.push_back(h.second);
    return out;
  }

  bool add_new(const std::vector<QuadRow>& rows, std::set<std::array<int, 4>>& active,
               std::vector<QuadRow>& act_rows) const {
    bool any = false;
    for (const auto& q : rows)
      if (active.insert({q.v, q.v2, q.x, q.y}).second) {
        act_rows.push_back(q);
        any = true;
      }
    return any;
  }
};

}  // namespace

DistortionReport distortion_report(const VoteProfile& p_in, const CandidateDistribution& dist,
                                   double tol) {
  VoteProfile p = normalize_profile(p_in);
  if (dist.n() != p.n) throw DimensionMismatch("distribution has wrong length");
  DistortionReport rep;
  double best = -1.0;
  // Point-mass references equal to the winner always give exactly 1
  // (the objective is the normalized quantity itself); skip them.
  int skip_ref = -1;
  for (int x = 0; x < p.n; ++x)
    if (dist.probs[x] == 1) skip_ref = x;

  for (CandidateId ref = 0; ref < p.n; ++ref) {
    if (ref == skip_ref) {
      if (best < 1.0) {
        best = 1.0;
        rep.worst_reference = ref;
      }
      continue;
    }
    ReferenceSolver solver(p, dist, ref, tol);
    LpResult res = solver.solve();
    if (res.status == LpResult::Status::Unbounded) {
      rep.distortion = Ratio::inf();
      rep.worst_reference = ref;
      rep.witness.reset();
      return rep;
    }
    if (res.status == LpResult::Status::Infeasible)
      throw Error("reference LP unexpectedly infeasible", 1);
    if (res.value > best) {
      best = res.value;
      rep.worst_reference = ref;
      std::vector<std::vector<double>> rows(p.num_ballots(), std::vector<double>(p.n, 0.0));
      for (int v = 0; v < p.num_ballots(); ++v)
        for (int x = 0; x < p.n; ++x) rows[v][x] = res.witness[lp_var(p.n, v, x)];
      rep.witness = Metric::approx(std::move(rows));
    }
  }
  rep.distortion = Ratio::finite(best);
  return rep;
}

Ratio distortion_of(const VoteProfile& p, const CandidateDistribution& dist, double tol) {
  return distortion_report(p, dist, tol).distortion;
}

}  // namespace mvd
