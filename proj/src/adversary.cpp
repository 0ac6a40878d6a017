#include "mvd/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mvd/metric.hpp"

namespace mvd {

double gamma_of(int n, double beta) {
  if (n < 3) throw BadN("gamma is defined for n >= 3");
  if (beta < 1.0) throw BadParams("gamma needs beta >= 1");
  return 1.0 - std::pow(beta, -1.0 / (n - 2));
}

namespace {

// Position-indexed tie-break offsets: off(i) = eps * i / (n+1) for 1-based
// position i, so every small distance lies strictly inside (eps, 2*eps).
Rat offset(const Rat& eps, int pos1, int n) {
  Rat o = eps * Rat(pos1, n + 1);
  o.canonicalize();
  return o;
}

void check_eps(const Rat& eps) {
  if (eps <= 0 || eps >= Rat(1, 8)) throw BadEpsilon("must lie in (0, 1/8)");
}

// Exact test of  cnt / live  >=  beta^(-1/(n-2)),  i.e.  cnt^(n-2) * beta >= live^(n-2).
bool frac_at_least_one_minus_gamma(long cnt, long live, long beta, int n) {
  mpz_class lhs, rhs;
  mpz_class c(static_cast<long>(cnt)), l(static_cast<long>(live));
  mpz_pow_ui(lhs.get_mpz_t(), c.get_mpz_t(), n - 2);
  lhs *= beta;
  mpz_pow_ui(rhs.get_mpz_t(), l.get_mpz_t(), n - 2);
  return lhs >= rhs;
}

struct Builder {
  int n = 0;
  std::vector<WeightedBallot> ballots;
  std::vector<std::vector<Rat>> rows;

  void add(Ranking r, Rat w, std::vector<Rat> dist) {
    ballots.push_back({std::move(r), std::move(w)});
    rows.push_back(std::move(dist));
  }

  Instance finish() const {
    Instance inst;
    inst.profile.n = n;
    inst.profile.ballots = ballots;
    inst.metric = Metric::exact(rows);
    return inst;
  }
};

// Distances for one ballot laid out along its own ranking: the first
// `active_count` positions get the supplied values, the tail gets the shared
// sacrificial levels M, 2M, 3M, ...
std::vector<Rat> distances_for(const Ranking& r, const std::vector<Rat>& active_values,
                               const Rat& m_base) {
  const int n = r.n();
  const int ac = static_cast<int>(active_values.size());
  std::vector<Rat> d(n);
  for (int i = 0; i < n; ++i) {
    Rat val = i < ac ? active_values[i] : m_base * Rat(i - ac + 1);
    val.canonicalize();
    d[r.at(i)] = val;
  }
  return d;
}

Rat certified_of(const Instance& inst, CandidateId w) {
  auto exact = ratio_of_exact(inst, w);
  if (!exact) throw Error("adversary instance has no exact finite ratio", 1);
  return *exact;
}

AdversaryReport finish_report(std::string kind, Builder b, const BoundedRule& rule,
                              CandidateId w, double limit, Json params) {
  AdversaryReport rep;
  rep.kind = std::move(kind);
  rep.instance = b.finish();
  rep.instance.profile = normalize_profile(rep.instance.profile);
  rep.winner = w;
  rep.certified_exact = certified_of(rep.instance, w);
  rep.certified_ratio = rat_to_double(rep.certified_exact);
  rep.theoretical_limit = limit;
  params["rule"] = rule.name;
  rep.parameters = std::move(params);
  return rep;
}

}  // namespace

AdversaryReport gen_k_entry_adversary(const BoundedRule& rule, int n, const PositionSet& K,
                                      const Rat& eps) {
  check_eps(eps);
  rule.partition.validate();
  if (rule.partition.n != n) throw DimensionMismatch("rule partition is for a different n");
  if (!K.positions.empty() && K.positions.back() > n)
    throw BadPositions("contains a position beyond n");
  if (!is_k_entry(rule.partition, K))
    throw NotKEntry("partition distinguishes rankings that agree on " + K.to_string());

  const int k_orig = K.k();
  const double limit = k_orig > 0 ? (2.0 * n - k_orig) / k_orig : 1.0 / rat_to_double(eps);

  std::vector<CandidateId> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  std::vector<int> kpos = K.positions;        // positions still carrying information
  std::vector<CandidateId> tail;              // tail[j] sits at position r+1+j (0-based j)
  Json trace = Json::array();

  auto make_ranking = [&](const std::vector<CandidateId>& prefix) {
    std::vector<CandidateId> ord = prefix;
    ord.insert(ord.end(), tail.begin(), tail.end());
    return Ranking(std::move(ord));
  };

  for (;;) {
    const int r = static_cast<int>(active.size());

    // A revealed last-among-active position forces the sacrifice recursion.
    if (std::find(kpos.begin(), kpos.end(), r) != kpos.end() && r > 1) {
      CandidateId sac = active.back();
      active.pop_back();
      kpos.erase(std::remove(kpos.begin(), kpos.end(), r), kpos.end());
      tail.insert(tail.begin(), sac);
      trace.push_back({{"action", "sacrifice"}, {"position", r}, {"candidate", sac}});
      continue;
    }

    if (r == 1) {
      // Everything is pinned down; emit the trivial single-ballot instance.
      Builder b;
      b.n = n;
      std::vector<Rat> vals{eps + offset(eps, 1, n)};
      Rat m_base = Rat(1000000) * 2 * eps;
      Ranking rk = make_ranking({active[0]});
      b.add(rk, Rat(1), distances_for(rk, vals, m_base));
      VoteProfile prof;
      prof.n = n;
      prof.ballots = b.ballots;
      CandidateId w = apply_bounded_rule(rule, prof);
      Json params{{"epsilon", rat_to_string(eps)}, {"positions", K.positions},
                  {"trace", trace},               {"degenerate", true}};
      return finish_report("k-entry", std::move(b), rule, w, limit, std::move(params));
    }

    if (kpos.empty()) {
      // The rule learns nothing about the active prefix: ambiguous-top family
      // at scale eps. One ballot; swapping the two top actives cannot change
      // the message, so the winner stays fixed while the optimum moves.
      std::vector<CandidateId> pref = active;
      VoteProfile prof;
      prof.n = n;
      prof.ballots.push_back({make_ranking(pref), Rat(1)});
      CandidateId w = apply_bounded_rule(rule, prof);
      if (w == pref[0]) std::swap(pref[0], pref[1]);
      Ranking chosen = make_ranking(pref);
      std::vector<Rat> vals(r);
      vals[0] = eps;
      for (int i = 1; i < r; ++i) vals[i] = 1 + offset(eps, i + 1, n);
      Rat m_base = Rat(1000000) * (1 + offset(eps, r, n));
      Builder b;
      b.n = n;
      b.add(chosen, Rat(1), distances_for(chosen, vals, m_base));
      Json params{{"epsilon", rat_to_string(eps)}, {"positions", K.positions},
                  {"trace", trace},               {"family", true},
                  {"family_scale", rat_to_string(eps)}};
      return finish_report("k-entry", std::move(b), rule, w, limit, std::move(params));
    }

    // Main construction: one type per injective assignment of candidates to
    // the informative positions; everything else completes lexicographically.
    const int ka = static_cast<int>(kpos.size());
    std::vector<std::vector<CandidateId>> tuples;
    std::vector<CandidateId> cur;
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, int depth) -> void {
      if (depth == ka) {
        tuples.push_back(cur);
        return;
      }
      for (CandidateId c : active)
        if (!used[c]) {
          used[c] = 1;
          cur.push_back(c);
          self(self, depth + 1);
          cur.pop_back();
          used[c] = 0;
        }
    };
    rec(rec, 0);
    const long t = static_cast<long>(tuples.size());

    auto complete = [&](const std::vector<CandidateId>& tuple,
                        CandidateId last_among_active) -> std::vector<CandidateId> {
      // Build the active prefix: tuple entries at kpos, optional forced last,
      // remaining actives ascending in the remaining positions.
      std::vector<CandidateId> prefix(r, -1);
      std::vector<char> taken(n, 0);
      for (int i = 0; i < ka; ++i) {
        prefix[kpos[i] - 1] = tuple[i];
        taken[tuple[i]] = 1;
      }
      if (last_among_active >= 0) {
        prefix[r - 1] = last_among_active;
        taken[last_among_active] = 1;
      }
      std::vector<CandidateId> rest;
      for (CandidateId c : active)
        if (!taken[c]) rest.push_back(c);
      size_t at = 0;
      for (int i = 0; i < r; ++i)
        if (prefix[i] < 0) prefix[i] = rest[at++];
      return prefix;
    };

    const Rat type_weight = Rat(1) / t;
    VoteProfile prof;
    prof.n = n;
    for (const auto& tuple : tuples)
      prof.ballots.push_back({make_ranking(complete(tuple, -1)), type_weight});
    CandidateId w = apply_bounded_rule(rule, prof);

    Builder b;
    b.n = n;
    Json params{{"epsilon", rat_to_string(eps)}, {"positions", K.positions},
                {"trace", trace},               {"types", t},
                {"active", r},                  {"informative", ka}};

    if (std::find(active.begin(), active.end(), w) == active.end()) {
      // The rule elected a sacrificed candidate; every ballot keeps its
      // ranking and the shared sacrificial levels dominate the ratio.
      Rat m_base = Rat(1000000) * 2 * eps;
      for (const auto& ballot : prof.ballots) {
        std::vector<Rat> vals(r);
        for (int i = 0; i < r; ++i) vals[i] = eps + offset(eps, i + 1, n);
        b.add(ballot.ranking, ballot.weight, distances_for(ballot.ranking, vals, m_base));
      }
      params["sacrificed_winner"] = true;
      return finish_report("k-entry", std::move(b), rule, w, limit, std::move(params));
    }

    // Re-derive each ballot from its own distances. Winner types keep their
    // ranking at half-scale distances; other types move the winner to the
    // last active position at distance 1.
    Rat m_base(1000000);
    long winner_types = 0;
    Rat half(1, 2);
    for (long i = 0; i < t; ++i) {
      const auto& tuple = tuples[i];
      bool w_in_s = std::find(tuple.begin(), tuple.end(), w) != tuple.end();
      Ranking rk = w_in_s ? prof.ballots[i].ranking : make_ranking(complete(tuple, w));
      if (message_of(rule.partition, rk) != message_of(rule.partition, prof.ballots[i].ranking))
        throw Error("internal: rebuilt ballot changed its message", 1);
      std::vector<Rat> vals(r);
      if (w_in_s) {
        ++winner_types;
        for (int j = 0; j < r; ++j) vals[j] = half + eps + offset(eps, j + 1, n);
      } else {
        for (int j = 0; j + 1 < r; ++j) vals[j] = eps + offset(eps, j + 1, n);
        vals[r - 1] = Rat(1);
      }
      std::vector<Rat> dist = distances_for(rk, vals, m_base);
      b.add(std::move(rk), type_weight, std::move(dist));
    }
    params["winner_types"] = winner_types;
    params["sub_limit"] = ka > 0 ? (2.0 * r - ka) / ka : 0.0;
    return finish_report("k-entry", std::move(b), rule, w, limit, std::move(params));
  }
}

AdversaryReport gen_general_adversary(const BoundedRule& rule, int n, int beta, const Rat& eps) {
  check_eps(eps);
  rule.partition.validate();
  if (n < 3) throw BadN("general adversary needs n >= 3");
  if (rule.partition.n != n) throw DimensionMismatch("rule partition is for a different n");
  if (rule.partition.beta != beta)
    throw BadParams("rule has " + std::to_string(rule.partition.beta) +
                    " message classes, expected " + std::to_string(beta));

  const double gamma = gamma_of(n, beta);
  double limit;
  bool family_limit = false;
  if (beta == 1) {
    limit = 1.0 / (2.0 * rat_to_double(eps));  // no information: family scale
    family_limit = true;
  } else {
    limit = std::max(2.0 / gamma - 1.0, (2.0 * n - 4.0) / std::log(static_cast<double>(beta)) - 1.0);
  }

  auto rankings = all_rankings(n);
  std::vector<CandidateId> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  std::vector<CandidateId> tail;
  Json trace = Json::array();

  for (;;) {
    const int r = static_cast<int>(active.size());
    // Live rankings: tail fixed in positions r+1..n. Per class, remember the
    // lexicographically least live member and the least x-last live member.
    std::map<int, long> first_live;                       // class -> ranking index
    std::map<int, std::vector<long>> xlast;              // class -> per-candidate index
    for (long idx = 0; idx < static_cast<long>(rankings.size()); ++idx) {
      const Ranking& rk = rankings[idx];
      bool live = true;
      for (size_t j = 0; j < tail.size() && live; ++j)
        if (rk.at(r + static_cast<int>(j)) != tail[j]) live = false;
      if (!live) continue;
      int cls = rule.partition.labels[idx];
      first_live.try_emplace(cls, idx);
      auto [it, inserted] = xlast.try_emplace(cls, std::vector<long>(n, -1));
      CandidateId last_active = rk.at(r - 1);
      if (it->second[last_active] < 0) it->second[last_active] = idx;
    }
    const long live_classes = static_cast<long>(first_live.size());

    std::vector<long> cnt(n, 0);
    for (const auto& [cls, per] : xlast)
      for (CandidateId x : active)
        if (per[x] >= 0) ++cnt[x];

    CandidateId violator = -1;
    for (CandidateId x : active)
      if (!frac_at_least_one_minus_gamma(cnt[x], live_classes, beta, n)) {
        violator = x;
        break;
      }

    if (violator >= 0 && r > 2) {
      active.erase(std::remove(active.begin(), active.end(), violator), active.end());
      tail.insert(tail.begin(), violator);
      trace.push_back({{"action", "sacrifice"},
                       {"candidate", violator},
                       {"live_classes", live_classes},
                       {"classes_with_candidate_last", cnt[violator]}});
      // live-class shrink factor <= (1-gamma) holds by the violated threshold
      continue;
    }
    if (violator >= 0)
      throw Error("internal: live-class recursion reached r=2 with a violated threshold", 1);

    // Ambiguous-last case: one ballot per live class. Query first, then pick
    // each class's ranking (a winner-last live member where one exists) and
    // lay distances along it.
    const Rat class_weight = Rat(1) / live_classes;
    VoteProfile prof;
    prof.n = n;
    std::vector<int> classes;
    for (const auto& [cls, idx] : first_live) {
      classes.push_back(cls);
      prof.ballots.push_back({rankings[idx], class_weight});
    }
    CandidateId w = apply_bounded_rule(rule, prof);

    Builder b;
    b.n = n;
    Json params{{"epsilon", rat_to_string(eps)},
                {"beta", beta},
                {"gamma", gamma},
                {"trace", trace},
                {"live_classes", live_classes},
                {"remaining", r}};

    bool w_active = std::find(active.begin(), active.end(), w) != active.end();
    if (!w_active) {
      Rat m_base = Rat(1000000) * 2 * eps;
      for (long i = 0; i < live_classes; ++i) {
        const Ranking& rk = prof.ballots[i].ranking;
        std::vector<Rat> vals(r);
        for (int j = 0; j < r; ++j) vals[j] = eps + offset(eps, j + 1, n);
        b.add(rk, class_weight, distances_for(rk, vals, m_base));
      }
      params["sacrificed_winner"] = true;
      return finish_report("general", std::move(b), rule, w, limit, std::move(params));
    }

    Rat m_base(1000000);
    Rat half(1, 2);
    long type1 = 0;
    for (long i = 0; i < live_classes; ++i) {
      int cls = classes[i];
      long widx = xlast[cls][w];
      if (widx >= 0) {
        ++type1;
        const Ranking& rk = rankings[widx];  // winner last among active
        std::vector<Rat> vals(r);
        for (int j = 0; j + 1 < r; ++j) vals[j] = eps + offset(eps, j + 1, n);
        vals[r - 1] = Rat(1);
        b.add(rk, class_weight, distances_for(rk, vals, m_base));
      } else {
        const Ranking& rk = prof.ballots[i].ranking;
        std::vector<Rat> vals(r);
        for (int j = 0; j < r; ++j) vals[j] = half + eps + offset(eps, j + 1, n);
        b.add(rk, class_weight, distances_for(rk, vals, m_base));
      }
    }
    if (!family_limit && !frac_at_least_one_minus_gamma(type1, live_classes, beta, n))
      throw Error("internal: winner-last class fraction fell below 1-gamma", 1);
    params["winner_last_classes"] = type1;
    return finish_report("general", std::move(b), rule, w, limit, std::move(params));
  }
}

std::optional<AdversaryReport> gen_unbounded_adversary(const BoundedRule& rule, const Rat& delta) {
  check_eps(delta);
  auto amb = has_ambiguous_top(rule.partition);
  if (!amb) return std::nullopt;

  const int n = rule.partition.n;
  VoteProfile prof;
  prof.n = n;
  prof.ballots.push_back({amb->a, Rat(1)});
  CandidateId w = apply_bounded_rule(rule, prof);
  // If the rule elects the probe ranking's top, the voter "was" the other one.
  const Ranking& chosen = (w == amb->a.at(0)) ? amb->b : amb->a;

  std::vector<Rat> vals(n);
  vals[0] = delta;
  for (int i = 1; i < n; ++i) vals[i] = 1 + offset(delta, i + 1, n);

  Builder b;
  b.n = n;
  b.add(chosen, Rat(1), distances_for(chosen, vals, Rat(1)));
  Json params{{"delta", rat_to_string(delta)},
              {"message", amb->message},
              {"family", true},
              {"top_pair", Json::array({amb->a.at(0), amb->b.at(0)})}};
  return finish_report("unbounded", std::move(b), rule, w, 1.0 / rat_to_double(delta),
                       std::move(params));
}

}  // namespace mvd
