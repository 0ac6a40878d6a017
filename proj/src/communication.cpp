#include "mvd/communication.hpp"

#include <algorithm>
#include <map>

namespace mvd {

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

static void check_enum_cap(int n) {
  if (n < 1) throw BadN("must be >= 1");
  if (n > kMaxEnumerationN)
    throw CapExceeded("ranking enumeration is capped at n = " +
                      std::to_string(kMaxEnumerationN) + " (n! messages), got n = " +
                      std::to_string(n));
}

std::vector<Ranking> all_rankings(int n) {
  check_enum_cap(n);
  std::vector<CandidateId> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<Ranking> out;
  out.reserve(factorial(n));
  do {
    Ranking r;
    r.order = perm;
    out.push_back(std::move(r));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

long lex_rank(const Ranking& r) {
  const int n = r.n();
  check_enum_cap(n);
  long rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (r.order[j] < r.order[i]) ++smaller;
    rank += smaller * factorial(n - 1 - i);
  }
  return rank;
}

Ranking ranking_from_rank(int n, long rank) {
  check_enum_cap(n);
  if (rank < 0 || rank >= factorial(n)) throw BadParams("lexicographic rank out of range");
  std::vector<CandidateId> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<CandidateId> ord;
  for (int i = n - 1; i >= 0; --i) {
    long f = factorial(i);
    long idx = rank / f;
    rank %= f;
    ord.push_back(pool[idx]);
    pool.erase(pool.begin() + idx);
  }
  return Ranking(std::move(ord));
}

void MessagePartition::validate() const {
  check_enum_cap(n);
  if (static_cast<long>(labels.size()) != factorial(n))
    throw ValidationError("partition must label all " + std::to_string(factorial(n)) +
                          " rankings");
  if (beta < 1) throw ValidationError("partition needs beta >= 1");
  std::vector<char> hit(beta, 0);
  for (int id : labels) {
    if (id < 1 || id > beta)
      throw ValidationError("message id " + std::to_string(id) + " outside 1.." +
                            std::to_string(beta));
    hit[id - 1] = 1;
  }
  for (int i = 0; i < beta; ++i)
    if (!hit[i]) throw ValidationError("message id " + std::to_string(i + 1) + " never used");
}

PositionSet PositionSet::of(std::vector<int> pos) {
  std::sort(pos.begin(), pos.end());
  for (size_t i = 0; i < pos.size(); ++i) {
    if (pos[i] < 1) throw BadPositions("positions are 1-based and must be >= 1");
    if (i > 0 && pos[i] == pos[i - 1]) throw BadPositions("contains duplicates");
  }
  PositionSet k;
  k.positions = std::move(pos);
  return k;
}

bool PositionSet::contains(int p) const {
  return std::binary_search(positions.begin(), positions.end(), p);
}

std::string PositionSet::to_string() const {
  std::string s = "{";
  for (size_t i = 0; i < positions.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(positions[i]);
  }
  return s + "}";
}

MessagePartition k_entry_partition(int n, const PositionSet& K) {
  check_enum_cap(n);
  if (!K.positions.empty() && K.positions.back() > n)
    throw BadPositions("contains a position beyond n");
  const int k = K.k();
  long beta = 1;
  for (int i = 0; i < k; ++i) beta *= n - i;  // n! / (n-k)!

  MessagePartition part;
  part.n = n;
  part.beta = static_cast<int>(beta);
  auto rankings = all_rankings(n);
  part.labels.resize(rankings.size());

  // Message id = 1 + lexicographic rank of the revealed tuple
  // (candidates at the positions of K, in K order) among injective tuples.
  for (size_t t = 0; t < rankings.size(); ++t) {
    const auto& r = rankings[t];
    std::vector<CandidateId> revealed;
    revealed.reserve(k);
    for (int pos : K.positions) revealed.push_back(r.at(pos - 1));
    long rank = 0;
    std::vector<char> used(n, 0);
    for (int i = 0; i < k; ++i) {
      int smaller = 0;
      for (CandidateId c = 0; c < revealed[i]; ++c)
        if (!used[c]) ++smaller;
      long tail = 1;
      for (int j = i + 1; j < k; ++j) tail *= n - 1 - i - (j - i - 1);
      rank += smaller * tail;
      used[revealed[i]] = 1;
    }
    part.labels[t] = static_cast<int>(rank) + 1;
  }
  part.validate();
  return part;
}

int message_of(const MessagePartition& part, const Ranking& r) {
  if (r.n() != part.n) throw DimensionMismatch("ranking length != partition n");
  return part.labels[lex_rank(r)];
}

bool is_k_entry(const MessagePartition& part, const PositionSet& K) {
  part.validate();
  if (!K.positions.empty() && K.positions.back() > part.n) return false;
  // Group rankings by their K-revealed tuple; labels must be constant per group.
  std::map<std::vector<CandidateId>, int> group_label;
  auto rankings = all_rankings(part.n);
  for (size_t t = 0; t < rankings.size(); ++t) {
    std::vector<CandidateId> key;
    for (int pos : K.positions) key.push_back(rankings[t].at(pos - 1));
    auto [it, inserted] = group_label.try_emplace(key, part.labels[t]);
    if (!inserted && it->second != part.labels[t]) return false;
  }
  return true;
}

std::optional<AmbiguousTop> has_ambiguous_top(const MessagePartition& part) {
  part.validate();
  auto rankings = all_rankings(part.n);
  std::vector<long> first_seen(part.beta + 1, -1);
  for (size_t t = 0; t < rankings.size(); ++t) {
    int id = part.labels[t];
    if (first_seen[id] < 0) {
      first_seen[id] = static_cast<long>(t);
      continue;
    }
    const Ranking& a = rankings[first_seen[id]];
    if (a.at(0) != rankings[t].at(0)) return AmbiguousTop{id, a, rankings[t]};
  }
  return std::nullopt;
}

CandidateId apply_bounded_rule(const BoundedRule& rule, const VoteProfile& p_in) {
  VoteProfile p = normalize_profile(p_in);
  if (p.n != rule.partition.n) throw DimensionMismatch("profile n != partition n");
  std::vector<Rat> weights(rule.partition.beta, Rat(0));
  for (const auto& b : p.ballots) weights[message_of(rule.partition, b.ranking) - 1] += b.weight;
  CandidateId w = rule.aggregator(weights);
  if (w < 0 || w >= p.n) throw ValidationError("aggregator returned an invalid candidate");
  return w;
}

BoundedRule bounded_from_rule(const RuleSpec& spec, MessagePartition part) {
  part.validate();
  if (spec.randomized())
    throw BadParams("bounded adaptor needs a deterministic rule, got " + spec.to_string());
  // Lexicographically least ranking per message id.
  auto rankings = all_rankings(part.n);
  std::vector<long> rep(part.beta + 1, -1);
  for (size_t t = 0; t < rankings.size(); ++t)
    if (rep[part.labels[t]] < 0) rep[part.labels[t]] = static_cast<long>(t);

  BoundedRule rule;
  rule.name = spec.to_string() + "-on-messages";
  rule.partition = part;
  int n = part.n;
  std::vector<Ranking> reps;
  reps.reserve(part.beta);
  for (int id = 1; id <= part.beta; ++id) reps.push_back(rankings[rep[id]]);
  rule.aggregator = [spec, n, reps](const std::vector<Rat>& weights) {
    VoteProfile decoded;
    decoded.n = n;
    for (size_t i = 0; i < weights.size(); ++i)
      if (weights[i] > 0) decoded.ballots.push_back({reps[i], weights[i]});
    return run_deterministic(spec, decoded);
  };
  return rule;
}

MessagePartition contiguous_partition(int n, int beta) {
  check_enum_cap(n);
  long nf = factorial(n);
  if (beta < 1 || beta > nf)
    throw BadParams("beta must be in 1..n! for the contiguous partition");
  MessagePartition part;
  part.n = n;
  part.beta = beta;
  part.labels.resize(nf);
  for (long t = 0; t < nf; ++t)
    part.labels[t] = static_cast<int>(t * beta / nf) + 1;
  part.validate();
  return part;
}

}  // namespace mvd
