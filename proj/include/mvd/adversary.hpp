#pragma once

#include <optional>

#include <json.hpp>

#include "mvd/communication.hpp"
#include "mvd/core.hpp"

namespace mvd {

using Json = nlohmann::ordered_json;

struct AdversaryReport {
  std::string kind;  // "k-entry" | "general" | "unbounded"
  Instance instance;
  CandidateId winner = -1;
  Rat certified_exact;        // exact ratio_of(instance, winner)
  double certified_ratio = 0.0;
  double theoretical_limit = 0.0;
  Json parameters;            // construction trace: epsilon schedule, gamma, M, ...
};

// gamma = 1 - beta^(-1/(n-2)). Requires n >= 3, beta >= 1 (real beta allowed;
// the formula is also evaluated at non-integer points).
double gamma_of(int n, double beta);

// Lower-bound instance against a rule that only sees the ballot entries at
// positions K: a uniform profile over all (S, sigma) assignments to K, with
// ballot rankings re-derived from the case-split distances after querying the
// winner, so consistency and the quadrilateral inequality hold exactly.
// Positions containing n trigger the sacrificial recursion on n-1 candidates.
// Certifies cost(winner)/cost(opt) >= (2n-k)/k - O(eps).
// Requires 0 < eps < 1/8; NotKEntry if the rule's partition is finer than K allows.
AdversaryReport gen_k_entry_adversary(const BoundedRule& rule, int n, const PositionSet& K,
                                      const Rat& eps);

// Lower-bound instance against an arbitrary rule with beta message classes:
// walks the live-ranking/live-class recursion, either emitting the
// one-ballot-per-live-class instance (ambiguous-last case) or sacrificing a
// candidate and shrinking the live classes by a factor <= (1-gamma).
// Certifies >= 2/gamma - 1 - O(eps) >= (2n-4)/ln(beta) - 1 - O(eps).
AdversaryReport gen_general_adversary(const BoundedRule& rule, int n, int beta, const Rat& eps);

// If some message class contains two rankings with different tops, emits the
// one-ballot family whose ratio grows like 1/delta; none otherwise.
std::optional<AdversaryReport> gen_unbounded_adversary(const BoundedRule& rule, const Rat& delta);

}  // namespace mvd
