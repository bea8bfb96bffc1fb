#ifndef FMTK_RANDOM_HPP
#define FMTK_RANDOM_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "fmtk/measure.hpp"

namespace fmtk {

struct GeneratorConfig {
  int n = 4;
  std::uint64_t seed = 0;
  int count = 1;
};

namespace detail {

/// splitmix64 finalizer; used to derive per-item seeds so batch items are
/// independent of generation order.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

} // namespace detail

/// Seed for batch item k: seed ^ mix64(k + 1).
inline std::uint64_t derived_seed(std::uint64_t seed, int item) {
  return seed ^ detail::mix64(static_cast<std::uint64_t>(item) + 1);
}

/// Draws one random fuzzy measure: the nonempty proper subsets are visited in
/// a uniformly shuffled order and each value is sampled uniformly between the
/// largest already-assigned subset value and the smallest already-assigned
/// superset value. Monotone by construction (validates at zero tolerance);
/// the distribution is not uniform over the order polytope.
inline FuzzyMeasure random_measure(int n, std::uint64_t seed) {
  if (n > 10) throw std::invalid_argument("random_measure: n capped at 10");
  Universe u(n);
  const Mask full = u.full_mask();
  std::mt19937_64 rng(seed);

  std::vector<Mask> order(full - 1);
  std::iota(order.begin(), order.end(), Mask{1});
  std::shuffle(order.begin(), order.end(), rng);

  SetFunction sf(u);
  std::vector<bool> assigned(u.subset_count(), false);
  assigned[0] = true;
  assigned[full] = true;
  sf[full] = 1.0;

  for (Mask a : order) {
    double lo = 0.0, hi = 1.0;
    for_each_proper_subset(a, [&](Mask s) {
      if (assigned[s]) lo = std::max(lo, sf[s]);
    });
    const Mask comp = full & ~a;
    for_each_subset(comp, [&](Mask t) {
      const Mask sup = a | t;
      if (sup != a && assigned[sup]) hi = std::min(hi, sf[sup]);
    });
    sf[a] = std::uniform_real_distribution<double>(lo, hi)(rng);
    assigned[a] = true;
  }
  return FuzzyMeasure::checked(std::move(sf), 0.0);
}

inline FuzzyMeasure random_measure(const GeneratorConfig& cfg) {
  return random_measure(cfg.n, cfg.seed);
}

inline std::vector<FuzzyMeasure> random_batch(const GeneratorConfig& cfg) {
  if (cfg.count < 1) throw std::invalid_argument("random_batch: count must be >= 1");
  std::vector<FuzzyMeasure> out;
  out.reserve(cfg.count);
  for (int k = 0; k < cfg.count; ++k)
    out.push_back(random_measure(cfg.n, derived_seed(cfg.seed, k)));
  return out;
}

} // namespace fmtk

#endif // FMTK_RANDOM_HPP
