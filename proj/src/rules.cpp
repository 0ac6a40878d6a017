#include "mvd/rules.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace mvd {

TopkPreference prefers_topk(const Ranking& r, int k, CandidateId x, CandidateId y) {
  if (k < 1 || k > r.n()) throw BadK("must satisfy 1 <= k <= n");
  if (x == y) throw BadParams("prefers_topk needs distinct candidates");
  int px = -1, py = -1;
  for (int i = 0; i < k; ++i) {
    if (r.order[i] == x) px = i;
    if (r.order[i] == y) py = i;
  }
  if (px >= 0 && py >= 0) return px < py ? TopkPreference::PrefersX : TopkPreference::PrefersY;
  if (px >= 0) return TopkPreference::PrefersX;
  if (py >= 0) return TopkPreference::PrefersY;
  return TopkPreference::Unknown;
}

ComparisonGraph build_comparison_graph(const VoteProfile& p_in, int k) {
  VoteProfile p = normalize_profile(p_in);
  if (k < 1 || k > p.n) throw BadK("must satisfy 1 <= k <= n");
  ComparisonGraph g;
  g.n = p.n;
  g.k = k;
  g.alpha = Rat(k, 3 * p.n);
  g.alpha.canonicalize();
  g.adj.assign(p.n, std::vector<char>(p.n, 0));
  for (CandidateId x = 0; x < p.n; ++x)
    for (CandidateId y = 0; y < p.n; ++y) {
      if (x == y) continue;
      Rat mass(0);
      for (const auto& b : p.ballots)
        if (prefers_topk(b.ranking, k, x, y) == TopkPreference::PrefersX) mass += b.weight;
      g.adj[x][y] = mass >= g.alpha ? 1 : 0;  // exact comparison
    }
  return g;
}

TopkCopelandResult topk_copeland_full(const VoteProfile& p_in, int k) {
  VoteProfile p = normalize_profile(p_in);
  if (k < 1 || k > p.n) throw BadK("must satisfy 1 <= k <= n");
  TopkCopelandResult res;
  res.graph = build_comparison_graph(p, k);
  const Rat& alpha = res.graph.alpha;

  res.topk_mass.assign(p.n, Rat(0));
  for (const auto& b : p.ballots)
    for (int i = 0; i < k; ++i) res.topk_mass[b.ranking.at(i)] += b.weight;

  res.in_s2.assign(p.n, 0);
  res.in_s3.assign(p.n, 0);
  for (CandidateId x = 0; x < p.n; ++x) {
    if (res.topk_mass[x] >= 2 * alpha) res.in_s2[x] = 1;
    if (res.topk_mass[x] >= 3 * alpha) res.in_s3[x] = 1;
  }

  // Total top-k mass is k, so some candidate has mass >= k/n = 3*alpha; S3
  // (hence S2) is never empty.
  res.outdegree.assign(p.n, -1);
  int best_deg = -1;
  for (CandidateId x = 0; x < p.n; ++x) {
    if (!res.in_s2[x]) continue;
    int deg = 0;
    for (CandidateId y = 0; y < p.n; ++y)
      if (y != x && res.in_s2[y] && res.graph.has_edge(x, y)) ++deg;
    res.outdegree[x] = deg;
    if (deg > best_deg) {
      best_deg = deg;
      res.winner = x;
    }
  }
  return res;
}

CandidateId topk_copeland(const VoteProfile& p, int k) { return topk_copeland_full(p, k).winner; }

CandidateId copeland(const VoteProfile& p) { return topk_copeland(p, p.n); }

CandidateId plurality(const VoteProfile& p) {
  auto shares = first_place_shares(p);
  CandidateId best = 0;
  for (CandidateId x = 1; x < p.n; ++x)
    if (shares[x] > shares[best]) best = x;
  return best;
}

std::vector<int> graph_distances_from(const ComparisonGraph& g, CandidateId src) {
  std::vector<int> dist(g.n, -1);
  std::deque<CandidateId> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    CandidateId u = q.front();
    q.pop_front();
    for (CandidateId v = 0; v < g.n; ++v)
      if (v != u && g.has_edge(u, v) && dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
  return dist;
}

std::vector<CandidateId> uncovered_set(const ComparisonGraph& g) {
  std::vector<CandidateId> out;
  for (CandidateId x = 0; x < g.n; ++x) {
    auto dist = graph_distances_from(g, x);
    bool ok = true;
    for (CandidateId y = 0; y < g.n && ok; ++y)
      if (dist[y] < 0 || dist[y] > 2) ok = false;
    if (ok) out.push_back(x);
  }
  return out;
}

CandidateDistribution random_dictatorship(const VoteProfile& p) {
  return CandidateDistribution(first_place_shares(p));
}

CandidateDistribution proportional_to_squares(const VoteProfile& p) {
  auto nu = first_place_shares(p);
  Rat denom(0);
  for (const auto& v : nu) denom += v * v;
  // denom == 0 is impossible: shares sum to 1
  std::vector<Rat> probs(nu.size());
  for (size_t i = 0; i < nu.size(); ++i) {
    probs[i] = nu[i] * nu[i] / denom;
    probs[i].canonicalize();
  }
  return CandidateDistribution(std::move(probs));
}

CandidateDistribution mixed_mechanism(const VoteProfile& p) {
  if (p.n < 2) throw BadN("mixed mechanism needs n >= 2");
  auto pts = proportional_to_squares(p);
  auto rd = random_dictatorship(p);
  Rat w1(1, p.n - 1), w2(p.n - 2, p.n - 1);
  std::vector<Rat> probs(p.n);
  for (int i = 0; i < p.n; ++i) {
    probs[i] = w1 * pts.probs[i] + w2 * rd.probs[i];
    probs[i].canonicalize();
  }
  return CandidateDistribution(std::move(probs));
}

CandidateDistribution random_oligarchy(const VoteProfile& p) {
  auto nu = first_place_shares(p);
  const int n = p.n;
  std::vector<Rat> probs(n, Rat(0));
  // Exact sum over all ordered triples of i.i.d. top choices: a repeated
  // choice wins outright, a three-way split elects each drawn top with 1/3.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Rat w = nu[a] * nu[b] * nu[c];
        if (w == 0) continue;
        if (a == b || a == c)
          probs[a] += w;
        else if (b == c)
          probs[b] += w;
        else {
          Rat third = w / 3;
          probs[a] += third;
          probs[b] += third;
          probs[c] += third;
        }
      }
  for (auto& q : probs) q.canonicalize();
  return CandidateDistribution(std::move(probs));
}

double gax_bound(const std::function<double(const std::vector<double>&, int)>& prob_bound,
                 const std::vector<std::vector<double>>& nu_grid) {
  double worst = 0.0;
  for (const auto& nu : nu_grid)
    for (size_t x = 0; x < nu.size(); ++x) {
      double q = prob_bound(nu, static_cast<int>(x));
      if (q <= 0) continue;  // q_x = 0 contributes 0 regardless of nu_x
      double term = nu[x] > 0 ? q * (1.0 - nu[x]) / nu[x]
                              : std::numeric_limits<double>::infinity();
      worst = std::max(worst, term);
    }
  return 1.0 + 2.0 * worst;
}

double technical_bound_f(double t, int n) {
  if (n < 2) throw BadDomain("f needs n >= 2");
  if (t < 0.0 || t > 1.0) throw BadDomain("f needs t in [0,1]");
  double lead = (1.0 - 1.0 / (n - 1)) * (1.0 - t);
  return lead + t * (1.0 - t) / technical_bound_g(t, n);
}

double technical_bound_g(double t, int n) {
  if (n < 2) throw BadDomain("g needs n >= 2");
  if (t < 0.0 || t > 1.0) throw BadDomain("g needs t in [0,1]");
  return (n - 1) * t * t + (1.0 - t) * (1.0 - t);
}

RuleSpec RuleSpec::parse(const std::string& s) {
  RuleSpec spec;
  auto parse_int_param = [&s](const std::string& prefix, char name) {
    std::string rest = s.substr(prefix.size());
    std::string expect = std::string(1, name) + "=";
    if (rest.size() < 3 || rest.substr(0, 2) != expect)
      throw BadParams("expected " + prefix + expect + "<int>, got '" + s + "'");
    try {
      size_t used = 0;
      int v = std::stoi(rest.substr(2), &used);
      if (used != rest.size() - 2) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw BadParams("bad integer in rule spec '" + s + "'");
    }
  };
  if (s == "plurality")
    spec.kind = Kind::Plurality;
  else if (s == "copeland")
    spec.kind = Kind::Copeland;
  else if (s.rfind("topk-copeland:", 0) == 0) {
    spec.kind = Kind::TopkCopeland;
    spec.k = parse_int_param("topk-copeland:", 'k');
    if (spec.k < 1) throw BadK("must be >= 1");
  } else if (s == "random-dictatorship")
    spec.kind = Kind::RandomDictatorship;
  else if (s == "prop-squares")
    spec.kind = Kind::PropSquares;
  else if (s == "mixed")
    spec.kind = Kind::Mixed;
  else if (s == "random-oligarchy")
    spec.kind = Kind::RandomOligarchy;
  else if (s.rfind("constant:", 0) == 0) {
    spec.kind = Kind::Constant;
    spec.c = parse_int_param("constant:", 'c');
    if (spec.c < 0) throw BadParams("constant candidate must be >= 0");
  } else
    throw UnknownRule(s);
  return spec;
}

std::string RuleSpec::to_string() const {
  switch (kind) {
    case Kind::Plurality: return "plurality";
    case Kind::Copeland: return "copeland";
    case Kind::TopkCopeland: return "topk-copeland:k=" + std::to_string(k);
    case Kind::RandomDictatorship: return "random-dictatorship";
    case Kind::PropSquares: return "prop-squares";
    case Kind::Mixed: return "mixed";
    case Kind::RandomOligarchy: return "random-oligarchy";
    case Kind::Constant: return "constant:c=" + std::to_string(c);
  }
  return "?";
}

bool RuleSpec::randomized() const {
  switch (kind) {
    case Kind::RandomDictatorship:
    case Kind::PropSquares:
    case Kind::Mixed:
    case Kind::RandomOligarchy: return true;
    default: return false;
  }
}

CandidateId run_deterministic(const RuleSpec& spec, const VoteProfile& p) {
  switch (spec.kind) {
    case RuleSpec::Kind::Plurality: return plurality(p);
    case RuleSpec::Kind::Copeland: return copeland(p);
    case RuleSpec::Kind::TopkCopeland: return topk_copeland(p, spec.k);
    case RuleSpec::Kind::Constant:
      if (spec.c >= p.n) throw BadParams("constant candidate out of range");
      return spec.c;
    default: throw BadParams("rule '" + spec.to_string() + "' is randomized");
  }
}

CandidateDistribution run_rule(const RuleSpec& spec, const VoteProfile& p) {
  switch (spec.kind) {
    case RuleSpec::Kind::RandomDictatorship: return random_dictatorship(p);
    case RuleSpec::Kind::PropSquares: return proportional_to_squares(p);
    case RuleSpec::Kind::Mixed: return mixed_mechanism(p);
    case RuleSpec::Kind::RandomOligarchy: return random_oligarchy(p);
    default: return CandidateDistribution::point_mass(p.n, run_deterministic(spec, p));
  }
}

}  // namespace mvd
