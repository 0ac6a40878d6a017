#pragma once

#include <optional>
#include <vector>

#include "mvd/errors.hpp"
#include "mvd/rational.hpp"

namespace mvd {

using CandidateId = int;

// A full strict ranking; order[i] is the candidate at (0-based) position i,
// position 0 being the top choice.
struct Ranking {
  std::vector<CandidateId> order;

  Ranking() = default;
  explicit Ranking(std::vector<CandidateId> ord);  // validates: permutation of 0..n-1

  int n() const { return static_cast<int>(order.size()); }
  CandidateId at(int pos) const { return order[pos]; }
  int position_of(CandidateId x) const;  // 0-based; throws if absent
  bool operator==(const Ranking&) const = default;
};

struct WeightedBallot {
  Ranking ranking;
  Rat weight;
};

struct VoteProfile {
  int n = 0;
  std::vector<WeightedBallot> ballots;

  int num_ballots() const { return static_cast<int>(ballots.size()); }
  Rat total_weight() const;
  // Checks ranking lengths against n, permutation property, weights >= 0.
  void validate() const;
};

// Scales weights to total 1. Idempotent; throws ZeroTotalWeight.
VoteProfile normalize_profile(const VoteProfile& p);

// Exact first-place weight share per candidate; entries sum to exactly 1.
// Tolerates unnormalized input by dividing by the total.
std::vector<Rat> first_place_shares(const VoteProfile& p);

// The top-k prefix of every ballot, in ballot order. Throws BadK unless 1 <= k <= n.
std::vector<std::vector<CandidateId>> top_k_view(const VoteProfile& p, int k);

// Distribution over candidates with exact probabilities summing to 1.
struct CandidateDistribution {
  std::vector<Rat> probs;

  CandidateDistribution() = default;
  explicit CandidateDistribution(std::vector<Rat> p);  // validates sum == 1, entries >= 0
  static CandidateDistribution point_mass(int n, CandidateId x);

  int n() const { return static_cast<int>(probs.size()); }
};

// Voter-to-candidate distances, one row per ballot. Entries are either exact
// rationals (adversarial constructions) or doubles (LP witnesses); the
// exactness flag records which. Only voter-candidate distances exist here --
// the pseudo-metric never needs voter-voter or candidate-candidate entries.
class Metric {
 public:
  Metric() = default;
  static Metric exact(std::vector<std::vector<Rat>> rows);
  static Metric approx(std::vector<std::vector<double>> rows);

  bool is_exact() const { return exact_; }
  int num_ballots() const { return static_cast<int>(dbl_.size()); }
  int n() const { return dbl_.empty() ? 0 : static_cast<int>(dbl_[0].size()); }

  double at(int v, int x) const { return dbl_[v][x]; }
  const Rat& at_exact(int v, int x) const;  // requires is_exact()
  const std::vector<std::vector<double>>& rows() const { return dbl_; }
  const std::vector<std::vector<Rat>>& exact_rows() const;

 private:
  bool exact_ = false;
  std::vector<std::vector<Rat>> rat_;
  std::vector<std::vector<double>> dbl_;  // always populated
};

struct Instance {
  VoteProfile profile;
  std::optional<Metric> metric;
};

// A cost ratio / distortion value that may be infinite. Infinity is an
// explicit tag, never a float sentinel.
struct Ratio {
  bool infinite = false;
  double value = 0.0;

  static Ratio inf() { return {true, 0.0}; }
  static Ratio finite(double v) { return {false, v}; }

  bool at_least(double bound) const { return infinite || value >= bound; }
  double as_double() const;  // +inf for the infinite tag (reporting only)
};

}  // namespace mvd
