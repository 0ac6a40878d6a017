#include "mvd/metric.hpp"

namespace mvd {

static void check_shape(const Metric& d, const VoteProfile& p) {
  if (d.num_ballots() != p.num_ballots())
    throw DimensionMismatch("metric has " + std::to_string(d.num_ballots()) +
                            " rows for " + std::to_string(p.num_ballots()) + " ballots");
  for (int v = 0; v < d.num_ballots(); ++v)
    if (static_cast<int>(d.rows()[v].size()) != p.n)
      throw DimensionMismatch("metric row " + std::to_string(v) + " has " +
                              std::to_string(d.rows()[v].size()) + " entries for n=" +
                              std::to_string(p.n));
}

std::vector<MetricViolation> validate_metric(const Metric& d, const VoteProfile& p, double tol) {
  check_shape(d, p);
  std::vector<MetricViolation> out;
  const int m = d.num_ballots(), n = p.n;
  const bool ex = d.is_exact();

  for (int v = 0; v < m; ++v)
    for (int x = 0; x < n; ++x) {
      bool bad = ex ? d.at_exact(v, x) < 0 : d.at(v, x) < -tol;
      if (bad)
        out.push_back({MetricViolation::Kind::Negative, v, v, x, x, -d.at(v, x)});
    }

  // d(v,x) <= d(v,y) + d(v2,y) + d(v2,x) over ordered pairs
  for (int v = 0; v < m; ++v)
    for (int v2 = 0; v2 < m; ++v2) {
      if (v == v2) continue;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (x == y) continue;
          if (ex) {
            Rat slack = d.at_exact(v, x) - d.at_exact(v, y) - d.at_exact(v2, y) -
                        d.at_exact(v2, x);
            if (slack > 0)
              out.push_back({MetricViolation::Kind::Quadrilateral, v, v2, x, y,
                             rat_to_double(slack)});
          } else {
            double slack = d.at(v, x) - d.at(v, y) - d.at(v2, y) - d.at(v2, x);
            if (slack > tol)
              out.push_back({MetricViolation::Kind::Quadrilateral, v, v2, x, y, slack});
          }
        }
    }
  return out;
}

bool is_consistent(const Metric& d, const VoteProfile& p, double tol) {
  check_shape(d, p);
  for (int v = 0; v < p.num_ballots(); ++v) {
    const auto& ord = p.ballots[v].ranking.order;
    for (int i = 0; i + 1 < p.n; ++i) {
      if (d.is_exact()) {
        if (d.at_exact(v, ord[i]) > d.at_exact(v, ord[i + 1])) return false;
      } else {
        if (d.at(v, ord[i]) > d.at(v, ord[i + 1]) + tol) return false;
      }
    }
  }
  return true;
}

double cost(const Metric& d, const VoteProfile& p, CandidateId x) {
  check_shape(d, p);
  double c = 0;
  for (int v = 0; v < p.num_ballots(); ++v)
    c += rat_to_double(p.ballots[v].weight) * d.at(v, x);
  return c;
}

Rat cost_exact(const Metric& d, const VoteProfile& p, CandidateId x) {
  check_shape(d, p);
  Rat c(0);
  for (int v = 0; v < p.num_ballots(); ++v) c += p.ballots[v].weight * d.at_exact(v, x);
  c.canonicalize();
  return c;
}

CandidateId optimal_candidate(const Metric& d, const VoteProfile& p) {
  check_shape(d, p);
  if (d.is_exact()) {
    CandidateId best = 0;
    Rat bc = cost_exact(d, p, 0);
    for (CandidateId x = 1; x < p.n; ++x) {
      Rat c = cost_exact(d, p, x);
      if (c < bc) {
        bc = c;
        best = x;
      }
    }
    return best;
  }
  CandidateId best = 0;
  double bc = cost(d, p, 0);
  for (CandidateId x = 1; x < p.n; ++x) {
    double c = cost(d, p, x);
    if (c < bc) {
      bc = c;
      best = x;
    }
  }
  return best;
}

Ratio ratio_of(const Instance& inst, CandidateId winner) {
  if (!inst.metric) throw ValidationError("instance has no metric");
  const Metric& d = *inst.metric;
  const VoteProfile& p = inst.profile;
  if (winner < 0 || winner >= p.n) throw BadParams("winner out of range");
  CandidateId opt = optimal_candidate(d, p);
  if (d.is_exact()) {
    Rat cw = cost_exact(d, p, winner), co = cost_exact(d, p, opt);
    if (co == 0) return cw == 0 ? Ratio::finite(1.0) : Ratio::inf();
    Rat r = cw / co;
    r.canonicalize();
    return Ratio::finite(rat_to_double(r));
  }
  double cw = cost(d, p, winner), co = cost(d, p, opt);
  if (co == 0) return cw == 0 ? Ratio::finite(1.0) : Ratio::inf();
  return Ratio::finite(cw / co);
}

std::optional<Rat> ratio_of_exact(const Instance& inst, CandidateId winner) {
  if (!inst.metric || !inst.metric->is_exact()) return std::nullopt;
  const Metric& d = *inst.metric;
  const VoteProfile& p = inst.profile;
  CandidateId opt = optimal_candidate(d, p);
  Rat co = cost_exact(d, p, opt);
  if (co == 0) return std::nullopt;
  Rat r = cost_exact(d, p, winner) / co;
  r.canonicalize();
  return r;
}

}  // namespace mvd
