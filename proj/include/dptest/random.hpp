#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <unordered_set>
#include <vector>

namespace dptest {

/// 64-bit seed. Identical seed and parameters give identical results.
struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(Seed, Seed) = default;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent child seed for stream `index`.
inline Seed split(Seed parent, std::uint64_t index) {
  return Seed{splitmix64(parent.value ^ splitmix64(index + 0x632be59bd9b4e019ULL))};
}

using Rng = std::mt19937_64;

inline Rng make_rng(Seed s) { return Rng(splitmix64(s.value)); }

inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

inline bool coin(Rng& rng, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return std::bernoulli_distribution(p)(rng);
}

inline std::uint64_t binomial(Rng& rng, std::uint64_t trials, double p) {
  if (p <= 0.0 || trials == 0) return 0;
  if (p >= 1.0) return trials;
  return std::binomial_distribution<std::uint64_t>(trials, p)(rng);
}

/**
 * k distinct values drawn uniformly from [0, universe), in draw order.
 * Together with a Binomial(universe, p) draw for k this is distributed
 * exactly like independent Bernoulli(p) inclusion of every element.
 */
inline std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t universe,
                                                  std::uint64_t k) {
  k = std::min(k, universe);
  std::vector<std::uint64_t> out;
  out.reserve(k);
  if (k * 2 > universe) {
    std::vector<std::uint64_t> all(universe);
    std::iota(all.begin(), all.end(), 0);
    for (std::uint64_t i = 0; i < k; ++i) {
      std::swap(all[i], all[i + uniform_index(rng, universe - i)]);
      out.push_back(all[i]);
    }
    return out;
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(k * 2);
  while (out.size() < k) {
    const auto x = uniform_index(rng, universe);
    if (seen.insert(x).second) out.push_back(x);
  }
  return out;
}

}  // namespace dptest
