#pragma once

#include <optional>
#include <vector>

#include "mvd/core.hpp"

namespace mvd {

// LP solver tolerance; defaults to 1e-9, overridable via env MVD_LP_TOL.
double lp_default_tol();

struct LinearProgram {
  enum class Rel { LessEq, Eq };
  struct Constraint {
    std::vector<double> coeffs;
    Rel rel = Rel::LessEq;
    double rhs = 0.0;
  };

  int num_vars = 0;
  std::vector<double> objective;  // maximized; variables are >= 0
  std::vector<Constraint> rows;
};

struct LpResult {
  enum class Status { Optimal, Unbounded, Infeasible };
  Status status = Status::Infeasible;
  double value = 0.0;
  std::vector<double> witness;  // on Optimal
};

// Dense-tableau two-phase simplex. Anti-cycling: Dantzig pricing normally,
// Bland's rule during degenerate streaks.
LpResult solve_lp(const LinearProgram& lp, double tol = lp_default_tol());

// Variable index of d(ballot, candidate) in the worst-case LP.
inline int lp_var(int n, int ballot, CandidateId candidate) { return ballot * n + candidate; }

// Worst-case cost LP for a fixed winning distribution p and reference
// candidate: maximize sum_x p_x cost(x) subject to ranking consistency,
// all quadrilateral inequalities, and cost(reference) = 1.
// Rows: m(n-1) consistency, m(m-1)n(n-1) quadrilateral, 1 normalization.
LinearProgram build_worstcase_lp(const VoteProfile& p, const CandidateDistribution& dist,
                                 CandidateId reference);

struct DistortionReport {
  Ratio distortion;
  int worst_reference = -1;           // reference attaining the max (finite case)
  std::optional<Metric> witness;      // approximate metric attaining it
};

// Worst-case distortion of the distribution on this profile: max over
// reference candidates of the LP above; +infinity iff some reference LP is
// unbounded. Solved by constraint generation over the quadrilateral pool
// (every reported optimum/unboundedness is certified against the full pool).
DistortionReport distortion_report(const VoteProfile& p, const CandidateDistribution& dist,
                                   double tol = lp_default_tol());
Ratio distortion_of(const VoteProfile& p, const CandidateDistribution& dist,
                    double tol = lp_default_tol());

}  // namespace mvd
