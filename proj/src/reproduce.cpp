#include "mvd/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>
#include <tuple>

#include "mvd/adversary.hpp"
#include "mvd/io.hpp"
#include "mvd/lp.hpp"
#include "mvd/metric.hpp"
#include "mvd/rules.hpp"
#include "mvd/sample.hpp"

namespace mvd {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ResultRow make_row(std::string table, std::string rule, int n, int param, std::string quantity,
                   Ratio value, double bound, bool lower, double runtime_ms) {
  ResultRow row;
  row.table = std::move(table);
  row.rule = std::move(rule);
  row.n = n;
  row.param = param;
  row.quantity = std::move(quantity);
  row.value = value;
  row.bound = bound;
  if (value.infinite)
    row.slack = lower ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  else
    row.slack = lower ? value.value - bound : bound - value.value;
  row.runtime_ms = runtime_ms;
  return row;
}

}  // namespace

std::vector<ResultRow> reproduce_bounds(const std::vector<int>& ns, const std::vector<int>& ks) {
  std::vector<ResultRow> rows;
  for (int n : ns)
    for (int k : ks) {
      if (k < 1 || k >= n) continue;
      std::vector<int> pos(k);
      for (int i = 0; i < k; ++i) pos[i] = i + 1;
      PositionSet K = PositionSet::of(pos);
      auto rule =
          bounded_from_rule(RuleSpec{RuleSpec::Kind::TopkCopeland, k}, k_entry_partition(n, K));

      auto t0 = Clock::now();
      auto rep = gen_k_entry_adversary(rule, n, K, Rat(1, 100000));
      double bound = (2.0 * n - k) / k;
      rows.push_back(make_row("bounds", rule.name, n, k, "certified-lower",
                              Ratio::finite(rep.certified_ratio), bound - 0.01, true,
                              ms_since(t0)));

      t0 = Clock::now();
      auto spec = RuleSpec{RuleSpec::Kind::TopkCopeland, k};
      CandidateId w = run_deterministic(spec, rep.instance.profile);
      auto lp = distortion_of(rep.instance.profile, CandidateDistribution::point_mass(
                                                        rep.instance.profile.n, w));
      rows.push_back(make_row("bounds", spec.to_string(), n, k, "lp-distortion", lp,
                              1.0 + 78.0 * n / k, false, ms_since(t0)));
      rows.push_back(make_row("bounds", spec.to_string(), n, k, "lp-distortion", lp,
                              79.0 * n / k, false, 0.0));
    }
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.n, a.param, a.quantity) < std::tie(b.n, b.param, b.quantity);
  });
  return rows;
}

std::vector<ResultRow> reproduce_randomized(int n, int max_voters) {
  std::vector<ResultRow> rows;
  struct Entry {
    RuleSpec spec;
    double bound;
  };
  std::vector<Entry> entries{
      {RuleSpec{RuleSpec::Kind::Mixed}, 3.0 - 2.0 / n},
      {RuleSpec{RuleSpec::Kind::RandomDictatorship}, 3.0},
      {RuleSpec{RuleSpec::Kind::RandomOligarchy}, 3.0},
  };
  auto profiles = enumerate_unit_profiles(n, max_voters);
  for (const auto& entry : entries) {
    auto t0 = Clock::now();
    Ratio worst = Ratio::finite(0.0);
    for (const auto& prof : profiles) {
      auto dist = run_rule(entry.spec, prof);
      Ratio d = distortion_of(prof, dist);
      if (d.infinite || (!worst.infinite && d.value > worst.value)) worst = d;
      if (worst.infinite) break;
    }
    rows.push_back(make_row("randomized", entry.spec.to_string(), n, max_voters,
                            "worst-lp-distortion", worst, entry.bound, false, ms_since(t0)));
  }
  return rows;
}

std::vector<ResultRow> reproduce_lemmas(const std::vector<int>& ns, double step) {
  std::vector<ResultRow> rows;
  for (int n : ns) {
    auto t0 = Clock::now();
    double best_f = -1.0, best_t = 0.0, min_g = std::numeric_limits<double>::infinity();
    for (double t = 0.0; t <= 1.0 + 1e-15; t += step) {
      double tt = std::min(t, 1.0);
      double f = technical_bound_f(tt, n);
      double g = technical_bound_g(tt, n);
      if (f > best_f) {
        best_f = f;
        best_t = tt;
      }
      min_g = std::min(min_g, g);
    }
    double elapsed = ms_since(t0);
    rows.push_back(make_row("lemmas", "f", n, 0, "grid-max-f", Ratio::finite(best_f),
                            1.0 - 1.0 / n, false, elapsed));
    rows.push_back(make_row("lemmas", "f", n, 0, "grid-argmax-t", Ratio::finite(best_t),
                            1.0 / n, false, 0.0));
    rows.push_back(make_row("lemmas", "g", n, 0, "grid-min-g", Ratio::finite(min_g),
                            (n - 1.0) / n, true, 0.0));
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "table,rule,n,param,quantity,value,bound,slack,runtime_ms\n";
  for (const auto& r : rows) {
    os << r.table << ',' << r.rule << ',' << r.n << ',' << r.param << ',' << r.quantity << ',';
    if (r.value.infinite)
      os << "inf";
    else
      os << format_decimal(r.value.value);
    os << ',' << format_decimal(r.bound) << ',' << format_decimal(r.slack) << ','
       << format_decimal(r.runtime_ms, 6) << '\n';
  }
  return os.str();
}

}  // namespace mvd
