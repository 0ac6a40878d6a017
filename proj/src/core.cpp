#include "mvd/core.hpp"

#include <algorithm>
#include <limits>

namespace mvd {

Ranking::Ranking(std::vector<CandidateId> ord) : order(std::move(ord)) {
  const int n = static_cast<int>(order.size());
  std::vector<char> seen(n, 0);
  for (CandidateId c : order) {
    if (c < 0 || c >= n || seen[c])
      throw ValidationError("ranking is not a permutation of 0.." + std::to_string(n - 1));
    seen[c] = 1;
  }
}

int Ranking::position_of(CandidateId x) const {
  for (int i = 0; i < n(); ++i)
    if (order[i] == x) return i;
  throw ValidationError("candidate " + std::to_string(x) + " not in ranking");
}

Rat VoteProfile::total_weight() const {
  Rat t(0);
  for (const auto& b : ballots) t += b.weight;
  return t;
}

void VoteProfile::validate() const {
  if (n <= 0) throw ValidationError("profile needs n >= 1 candidates");
  for (const auto& b : ballots) {
    if (b.ranking.n() != n)
      throw DimensionMismatch("ballot ranking has " + std::to_string(b.ranking.n()) +
                              " entries, expected " + std::to_string(n));
    Ranking check(b.ranking.order);  // re-validates permutation
    if (b.weight < 0) throw ValidationError("negative ballot weight");
  }
}

VoteProfile normalize_profile(const VoteProfile& p) {
  p.validate();
  Rat total = p.total_weight();
  if (total == 0) throw ZeroTotalWeight();
  VoteProfile out = p;
  for (auto& b : out.ballots) {
    b.weight /= total;
    b.weight.canonicalize();
  }
  return out;
}

std::vector<Rat> first_place_shares(const VoteProfile& p) {
  p.validate();
  Rat total = p.total_weight();
  if (total == 0) throw ZeroTotalWeight();
  std::vector<Rat> shares(p.n, Rat(0));
  for (const auto& b : p.ballots) shares[b.ranking.at(0)] += b.weight;
  for (auto& s : shares) {
    s /= total;
    s.canonicalize();
  }
  return shares;
}

std::vector<std::vector<CandidateId>> top_k_view(const VoteProfile& p, int k) {
  if (k < 1 || k > p.n)
    throw BadK("must satisfy 1 <= k <= n, got k=" + std::to_string(k) +
               " with n=" + std::to_string(p.n));
  std::vector<std::vector<CandidateId>> out;
  out.reserve(p.ballots.size());
  for (const auto& b : p.ballots)
    out.emplace_back(b.ranking.order.begin(), b.ranking.order.begin() + k);
  return out;
}

CandidateDistribution::CandidateDistribution(std::vector<Rat> p) : probs(std::move(p)) {
  Rat sum(0);
  for (const auto& q : probs) {
    if (q < 0) throw ValidationError("negative probability in candidate distribution");
    sum += q;
  }
  if (sum != 1) throw ValidationError("candidate distribution sums to " + rat_to_string(sum) +
                                      ", expected exactly 1");
}

CandidateDistribution CandidateDistribution::point_mass(int n, CandidateId x) {
  if (x < 0 || x >= n) throw BadParams("point mass candidate out of range");
  std::vector<Rat> p(n, Rat(0));
  p[x] = 1;
  return CandidateDistribution(std::move(p));
}

Metric Metric::exact(std::vector<std::vector<Rat>> rows) {
  Metric m;
  m.exact_ = true;
  m.rat_ = std::move(rows);
  m.dbl_.reserve(m.rat_.size());
  for (const auto& row : m.rat_) {
    std::vector<double> d;
    d.reserve(row.size());
    for (const auto& e : row) d.push_back(rat_to_double(e));
    m.dbl_.push_back(std::move(d));
  }
  return m;
}

Metric Metric::approx(std::vector<std::vector<double>> rows) {
  Metric m;
  m.exact_ = false;
  m.dbl_ = std::move(rows);
  return m;
}

const Rat& Metric::at_exact(int v, int x) const {
  if (!exact_) throw ValidationError("metric has no exact entries");
  return rat_[v][x];
}

const std::vector<std::vector<Rat>>& Metric::exact_rows() const {
  if (!exact_) throw ValidationError("metric has no exact entries");
  return rat_;
}

double Ratio::as_double() const {
  return infinite ? std::numeric_limits<double>::infinity() : value;
}

}  // namespace mvd
