#include "mvd/sample.hpp"

#include <numeric>

#include "mvd/communication.hpp"

namespace mvd {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Ranking sample_ranking(int n, std::uint64_t& state) {
  std::vector<CandidateId> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i >= 1; --i) {
    std::uint64_t j = splitmix64_next(state) % static_cast<std::uint64_t>(i + 1);
    std::swap(order[i], order[j]);
  }
  return Ranking(std::move(order));
}

Instance sample_instance(std::uint64_t seed, int n, int m) {
  if (n < 1 || n > kMaxSampleN) throw CapExceeded("sampling supports 1 <= n <= 7");
  if (m < 1 || m > kMaxSampleM) throw CapExceeded("sampling supports 1 <= m <= 30");
  std::uint64_t state = seed;
  Instance inst;
  inst.profile.n = n;
  for (int v = 0; v < m; ++v) inst.profile.ballots.push_back({sample_ranking(n, state), Rat(1)});
  return inst;
}

std::vector<VoteProfile> enumerate_unit_profiles(int n, int max_voters) {
  auto rankings = all_rankings(n);
  const int total = static_cast<int>(rankings.size());
  std::vector<VoteProfile> out;
  // Multisets of ranking indices in non-decreasing order, sizes 1..max_voters.
  std::vector<int> pick;
  auto emit = [&] {
    VoteProfile p;
    p.n = n;
    for (int idx : pick) p.ballots.push_back({rankings[idx], Rat(1)});
    out.push_back(std::move(p));
  };
  auto rec = [&](auto&& self, int from, int remaining) -> void {
    if (!pick.empty()) emit();
    if (remaining == 0) return;
    for (int idx = from; idx < total; ++idx) {
      pick.push_back(idx);
      self(self, idx, remaining - 1);
      pick.pop_back();
    }
  };
  rec(rec, 0, max_voters);
  return out;
}

}  // namespace mvd
