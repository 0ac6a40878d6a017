#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mvd/core.hpp"
#include "mvd/rules.hpp"

namespace mvd {

// Everything here enumerates all n! rankings explicitly.
inline constexpr int kMaxEnumerationN = 8;

long factorial(int n);

// All rankings of 0..n-1 in lexicographic order. CapExceeded beyond n = 8.
std::vector<Ranking> all_rankings(int n);

// Lexicographic rank (0-based) via the factoradic / Lehmer code.
long lex_rank(const Ranking& r);
Ranking ranking_from_rank(int n, long rank);

// Total labeling of all n! rankings with message ids 1..beta; rankings with
// the same label are indistinguishable to a communication-bounded rule.
struct MessagePartition {
  int n = 0;
  int beta = 0;
  std::vector<int> labels;  // labels[lex_rank(pi)] in {1..beta}

  void validate() const;  // size n!, every id in 1..beta hit at least once
};

// Sorted distinct 1-based ballot positions. May be empty (a rule that sees
// nothing); validated against n at the point of use.
struct PositionSet {
  std::vector<int> positions;

  static PositionSet of(std::vector<int> pos);  // sorts, rejects dups/nonpositive
  int k() const { return static_cast<int>(positions.size()); }
  bool contains(int p) const;
  std::string to_string() const;
};

// Messages reveal exactly the candidates at the positions in K.
// beta = n (n-1) ... (n-k+1) = n!/(n-k)!; ids follow the lexicographic order
// of the revealed candidate tuples.
MessagePartition k_entry_partition(int n, const PositionSet& K);

int message_of(const MessagePartition& part, const Ranking& r);

// True iff rankings agreeing on all positions in K always share a label
// (the rule may still be coarser than the K-partition).
bool is_k_entry(const MessagePartition& part, const PositionSet& K);

struct AmbiguousTop {
  int message = 0;
  Ranking a, b;  // two same-message rankings with different top choices
};

// First (in lexicographic scan order) message class containing two rankings
// with different top choices, if any.
std::optional<AmbiguousTop> has_ambiguous_top(const MessagePartition& part);

// A communication-bounded rule: the aggregator sees only the total weight per
// message id (index id-1) -- it cannot depend on anything else by construction.
struct BoundedRule {
  std::string name;
  MessagePartition partition;
  std::function<CandidateId(const std::vector<Rat>&)> aggregator;
};

CandidateId apply_bounded_rule(const BoundedRule& rule, const VoteProfile& p);

// Canonical-completion adaptor: each message id is decoded to the
// lexicographically least ranking in its class and the named deterministic
// rule is run on the resulting profile. For k_entry_partition({1..k}) this
// reproduces plurality (k=1) and topk-copeland exactly, since those rules
// only read the top-k prefix, which canonical completion preserves.
BoundedRule bounded_from_rule(const RuleSpec& spec, MessagePartition part);

// beta contiguous lexicographic blocks of near-equal size (the CLI's default
// partition when only --beta is given); label = floor(rank * beta / n!) + 1.
MessagePartition contiguous_partition(int n, int beta);

}  // namespace mvd
