#pragma once

#include <vector>

#include "mvd/core.hpp"

namespace mvd {

// One failed metric check. For Negative violations only (v, x) are meaningful.
// slack = lhs - rhs of the violated inequality (> 0 means violated).
struct MetricViolation {
  enum class Kind { Negative, Quadrilateral };
  Kind kind;
  int v = 0, v2 = 0;
  CandidateId x = 0, y = 0;
  double slack = 0.0;
};

// Checks non-negativity and the quadrilateral inequality
//   d(v,x) <= d(v,y) + d(v',y) + d(v',x)   for all v != v', x != y.
// Exact metrics are checked exactly; approximate ones with tolerance tol.
// Empty result iff the metric is a valid pseudo-metric on the instance.
std::vector<MetricViolation> validate_metric(const Metric& d, const VoteProfile& p,
                                             double tol = 0.0);

// Distances are non-decreasing along every ballot's ranking.
bool is_consistent(const Metric& d, const VoteProfile& p, double tol = 0.0);

// cost(x) = sum_v weight(v) * d(v, x).
double cost(const Metric& d, const VoteProfile& p, CandidateId x);
Rat cost_exact(const Metric& d, const VoteProfile& p, CandidateId x);  // requires exact metric

// argmin of cost, ties broken toward the lowest candidate index.
CandidateId optimal_candidate(const Metric& d, const VoteProfile& p);

// cost(winner) / cost(optimal_candidate). Infinite iff the optimum costs 0 and
// the winner does not; 1 if both cost 0. Exact path used when available.
Ratio ratio_of(const Instance& inst, CandidateId winner);

// Exact ratio when the metric is exact and the optimum cost is nonzero.
std::optional<Rat> ratio_of_exact(const Instance& inst, CandidateId winner);

}  // namespace mvd
