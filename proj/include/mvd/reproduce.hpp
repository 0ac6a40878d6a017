#pragma once

#include <string>
#include <vector>

#include "mvd/core.hpp"

namespace mvd {

// One row of a reproduction table. slack = bound - value for upper bounds and
// value - bound for lower bounds, so slack >= 0 always means "claim holds".
struct ResultRow {
  std::string table;
  std::string rule;
  int n = 0;
  int param = 0;          // k, beta, or max-voters depending on the table
  std::string quantity;   // e.g. "certified-lower", "lp-distortion", "grid-max-f"
  Ratio value;
  double bound = 0.0;
  double slack = 0.0;
  double runtime_ms = 0.0;
};

// Adversary-certified lower bounds vs (2n-k)/k, plus the LP distortion of
// topk-copeland on the same instances vs 1 + 78n/k (and 79n/k).
std::vector<ResultRow> reproduce_bounds(const std::vector<int>& ns, const std::vector<int>& ks);

// Exhaustive unit-ballot profiles up to max_voters: worst LP distortion of the
// mixed mechanism vs 3 - 2/n, random dictatorship vs 3, random oligarchy vs 3.
std::vector<ResultRow> reproduce_randomized(int n, int max_voters);

// Grid maxima of f vs 1 - 1/n and grid minima of g vs (n-1)/n.
std::vector<ResultRow> reproduce_lemmas(const std::vector<int>& ns, double step);

std::string rows_to_csv(const std::vector<ResultRow>& rows);

}  // namespace mvd
