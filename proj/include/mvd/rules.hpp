#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mvd/core.hpp"

namespace mvd {

// What a ballot's top-k prefix reveals about x vs y.
enum class TopkPreference { PrefersX, PrefersY, Unknown };

// Known-preference test from top-k information only: decided if x is ranked
// in the top k above y, or x is in the top k and y is not (and symmetrically).
TopkPreference prefers_topk(const Ranking& r, int k, CandidateId x, CandidateId y);

struct ComparisonGraph {
  int n = 0;
  int k = 0;
  Rat alpha;  // k / (3n)
  std::vector<std::vector<char>> adj;  // adj[x][y] != 0  <=>  edge x -> y

  bool has_edge(CandidateId x, CandidateId y) const { return adj[x][y] != 0; }
};

// Edge (x,y) iff the exact weight of ballots whose top-k prefix shows a
// preference for x over y is >= alpha = k/(3n). The threshold comparison is
// exact rational arithmetic; no floating-point mass is ever compared.
ComparisonGraph build_comparison_graph(const VoteProfile& p, int k);

struct TopkCopelandResult {
  CandidateId winner = -1;
  ComparisonGraph graph;
  std::vector<Rat> topk_mass;   // top-k appearance mass per candidate
  std::vector<char> in_s2;      // mass >= 2*alpha
  std::vector<char> in_s3;      // mass >= 3*alpha
  std::vector<int> outdegree;   // within S2; -1 for non-members
};

// Winner = member of S2 with the most outgoing edges inside the induced
// subgraph on S2 (edges leaving S2 do not count), ties toward lower index.
TopkCopelandResult topk_copeland_full(const VoteProfile& p, int k);
CandidateId topk_copeland(const VoteProfile& p, int k);

// Classic Copeland == topk_copeland with k = n.
CandidateId copeland(const VoteProfile& p);

CandidateId plurality(const VoteProfile& p);

// Candidates that reach every other candidate in at most 2 hops.
std::vector<CandidateId> uncovered_set(const ComparisonGraph& g);

// BFS hop counts from src (-1 when unreachable).
std::vector<int> graph_distances_from(const ComparisonGraph& g, CandidateId src);

CandidateDistribution random_dictatorship(const VoteProfile& p);
CandidateDistribution proportional_to_squares(const VoteProfile& p);
// (1/(n-1)) * proportional_to_squares + ((n-2)/(n-1)) * random_dictatorship; BadN if n < 2.
CandidateDistribution mixed_mechanism(const VoteProfile& p);
// Three i.i.d. voters by weight; majority top choice wins, otherwise uniform
// over the three drawn tops. Exact distribution via the 27-triple sum.
CandidateDistribution random_oligarchy(const VoteProfile& p);

// 1 + 2 * max over grid points nu and candidates x of q_x(nu) * (1-nu_x) / nu_x,
// with q_x = prob_bound(nu, x); a term with q_x <= 0 contributes 0.
double gax_bound(const std::function<double(const std::vector<double>&, int)>& prob_bound,
                 const std::vector<std::vector<double>>& nu_grid);

// f(t) = (1 - 1/(n-1))(1-t) + t(1-t) / ((n-1)t^2 + (1-t)^2), the per-share
// bound whose maximum over [0,1] is 1 - 1/n. BadDomain unless t in [0,1], n >= 2.
double technical_bound_f(double t, int n);
// g(t) = (n-1)t^2 + (1-t)^2, minimized at t = 1/n with value (n-1)/n.
double technical_bound_g(double t, int n);

struct RuleSpec {
  enum class Kind {
    Plurality,
    Copeland,
    TopkCopeland,
    RandomDictatorship,
    PropSquares,
    Mixed,
    RandomOligarchy,
    Constant,
  };

  Kind kind = Kind::Plurality;
  int k = 0;          // TopkCopeland
  CandidateId c = 0;  // Constant

  // Grammar: plurality | copeland | topk-copeland:k=<int> | random-dictatorship
  //        | prop-squares | mixed | random-oligarchy | constant:c=<int>
  static RuleSpec parse(const std::string& s);
  std::string to_string() const;
  bool randomized() const;
};

CandidateId run_deterministic(const RuleSpec& spec, const VoteProfile& p);
// Point mass for deterministic rules.
CandidateDistribution run_rule(const RuleSpec& spec, const VoteProfile& p);

}  // namespace mvd
