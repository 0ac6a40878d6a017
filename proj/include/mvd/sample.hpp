#pragma once

#include <cstdint>
#include <vector>

#include "mvd/core.hpp"

namespace mvd {

// Caps for randomly sampled instances (LP desk scale).
inline constexpr int kMaxSampleN = 7;
inline constexpr int kMaxSampleM = 30;

// SplitMix64: state += 0x9E3779B97F4A7C15; z = state;
// z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB;
// return z ^ z>>31.  This exact sequence is part of the reproducibility
// contract: same seed => byte-identical instance on every platform.
std::uint64_t splitmix64_next(std::uint64_t& state);

// Fisher-Yates over splitmix64: start from the identity; for i = n-1 .. 1,
// swap positions i and next() % (i+1).
Ranking sample_ranking(int n, std::uint64_t& state);

// m unit-weight ballots with independently sampled rankings, no metric.
// CapExceeded beyond n=7 / m=30.
Instance sample_instance(std::uint64_t seed, int n, int m);

// All distinct multisets of rankings of sizes 1..max_voters as unit-weight
// profiles (lexicographic combination order). Used by exhaustive sweeps.
std::vector<VoteProfile> enumerate_unit_profiles(int n, int max_voters);

}  // namespace mvd
