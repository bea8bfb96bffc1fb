#ifndef FMTK_FAMILIES_HPP
#define FMTK_FAMILIES_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fmtk/measure.hpp"
#include "fmtk/transforms.hpp"

namespace fmtk {

/// Smallest k such that the Moebius mass vanishes (within tol) above
/// cardinality k. Every measure is trivially n-additive, so the result is in
/// [1, n].
inline int additivity_order(const FuzzyMeasure& mu, double tol = default_tolerance) {
  const IndexVector m = mobius(mu);
  int top = 1;
  for (Mask a = 0; a <= mu.full_mask(); ++a)
    if (std::abs(m[a]) > tol) top = std::max(top, cardinality(a));
  return top;
}

/// mu saturates at 1 from cardinality k upward, and not from k-1.
inline bool is_k_tolerant(const FuzzyMeasure& mu, int k, double tol = default_tolerance) {
  const int n = mu.n();
  if (k < 1 || k > n) throw std::invalid_argument("is_k_tolerant: k out of [1, n]");
  bool below_not_one = false;
  for (Mask a = 0; a <= mu.full_mask(); ++a) {
    const int c = cardinality(a);
    if (c >= k && std::abs(mu[a] - 1.0) > tol) return false;
    if (c == k - 1 && std::abs(mu[a] - 1.0) > tol) below_not_one = true;
  }
  return below_not_one;
}

/// mu vanishes up to cardinality n-k, and not up to n-k+1.
inline bool is_k_intolerant(const FuzzyMeasure& mu, int k, double tol = default_tolerance) {
  const int n = mu.n();
  if (k < 1 || k > n) throw std::invalid_argument("is_k_intolerant: k out of [1, n]");
  bool above_nonzero = false;
  for (Mask a = 0; a <= mu.full_mask(); ++a) {
    const int c = cardinality(a);
    if (c <= n - k && std::abs(mu[a]) > tol) return false;
    if (c == n - k + 1 && std::abs(mu[a]) > tol) above_nonzero = true;
  }
  return above_nonzero;
}

/// Unique k with is_k_tolerant; always in [1, n] for a valid measure.
inline int tolerant_order(const FuzzyMeasure& mu, double tol = default_tolerance) {
  for (int k = 1; k <= mu.n(); ++k)
    if (is_k_tolerant(mu, k, tol)) return k;
  return mu.n();
}

inline int intolerant_order(const FuzzyMeasure& mu, double tol = default_tolerance) {
  for (int k = 1; k <= mu.n(); ++k)
    if (is_k_intolerant(mu, k, tol)) return k;
  return mu.n();
}

/// mu(A) equals the maximum over proper subsets for every |A| >= k+1.
/// By monotonicity the maximum over proper subsets is attained on a covered
/// subset A\{i}, which is what gets checked.
inline bool is_k_maxitive(const FuzzyMeasure& mu, int k, double tol = default_tolerance) {
  const int n = mu.n();
  if (k < 1 || k > n - 1) throw std::invalid_argument("is_k_maxitive: k out of [1, n-1]");
  for (Mask a = 0; a <= mu.full_mask(); ++a) {
    if (cardinality(a) < k + 1) continue;
    double best = 0.0;
    for (int i : members(a)) best = std::max(best, mu[a & ~singleton(i)]);
    if (std::abs(mu[a] - best) > tol) return false;
  }
  return true;
}

/// mu(A) equals the minimum over proper supersets for every |A| <= n-k-1.
inline bool is_k_minitive(const FuzzyMeasure& mu, int k, double tol = default_tolerance) {
  const int n = mu.n();
  if (k < 1 || k > n - 1) throw std::invalid_argument("is_k_minitive: k out of [1, n-1]");
  for (Mask a = 0; a <= mu.full_mask(); ++a) {
    if (cardinality(a) > n - k - 1) continue;
    double best = 1.0;
    for (int i = 1; i <= n; ++i)
      if (!(a & singleton(i))) best = std::min(best, mu[a | singleton(i)]);
    if (std::abs(mu[a] - best) > tol) return false;
  }
  return true;
}

/// Smallest qualifying k in [1, n-1]; n when even k = n-1 fails (every measure
/// is vacuously n-maxitive).
inline int maxitive_order(const FuzzyMeasure& mu, double tol = default_tolerance) {
  for (int k = 1; k <= mu.n() - 1; ++k)
    if (is_k_maxitive(mu, k, tol)) return k;
  return mu.n();
}

inline int minitive_order(const FuzzyMeasure& mu, double tol = default_tolerance) {
  for (int k = 1; k <= mu.n() - 1; ++k)
    if (is_k_minitive(mu, k, tol)) return k;
  return mu.n();
}

/// Builds a k-interactive measure: values up to cardinality k are taken from
/// `lower`, levels above k follow the affine interpolation from K at level
/// k+1 to 1 at level n, in equal steps of (1-K)/(n-k-1). The lower part must
/// be monotone, vanish at {} and stay below K at level k.
inline FuzzyMeasure make_k_interactive(const SetFunction& lower, int k, double K,
                                       double tol = default_tolerance) {
  const int n = lower.n();
  if (K < 0.0 || K > 1.0) throw std::invalid_argument("make_k_interactive: K out of [0, 1]");
  if (k < 0 || k > n - 2) throw std::invalid_argument("make_k_interactive: k out of [0, n-2]");
  SetFunction sf(lower.universe());
  const double step = (1.0 - K) / static_cast<double>(n - k - 1);
  for (Mask a = 0; a <= sf.full_mask(); ++a) {
    const int c = cardinality(a);
    if (c <= k) {
      sf[a] = lower[a];
      if (c == k && lower[a] > K + tol)
        throw construction_error("make_k_interactive: lower part exceeds K at " +
                                 subset_label(a));
    } else {
      sf[a] = K + static_cast<double>(c - k - 1) * step;
    }
  }
  return FuzzyMeasure::checked(std::move(sf), tol);
}

/// Recovers K when all levels above k match the k-interactive pattern within
/// tol; empty otherwise. K is read off level k+1 and the remaining levels are
/// checked against the interpolation it implies.
inline std::optional<double> is_k_interactive(const FuzzyMeasure& mu, int k,
                                              double tol = default_tolerance) {
  const int n = mu.n();
  if (k < 0 || k > n - 2) throw std::invalid_argument("is_k_interactive: k out of [0, n-2]");
  double K = -1.0;
  for (Mask a = 0; a <= mu.full_mask(); ++a) {
    if (cardinality(a) == k + 1) { K = mu[a]; break; }
  }
  const double step = (1.0 - K) / static_cast<double>(n - k - 1);
  for (Mask a = 0; a <= mu.full_mask(); ++a) {
    const int c = cardinality(a);
    if (c <= k) continue;
    if (std::abs(mu[a] - (K + static_cast<double>(c - k - 1) * step)) > tol)
      return std::nullopt;
  }
  return K;
}

/// Partition of N into subsets of indifference, plus the vector encoding.
struct PartitionEncoding {
  std::vector<Mask> blocks; // disjoint, union = N, ordered by smallest member

  std::size_t size() const { return blocks.size(); }

  /// b_S = (|S n A_1|, ..., |S n A_p|).
  std::vector<int> encode(Mask s) const {
    std::vector<int> b(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) b[i] = cardinality(s & blocks[i]);
    return b;
  }

  /// Number of coefficients a p-symmetric measure with this basis needs.
  std::uint64_t coefficient_count() const {
    std::uint64_t c = 1;
    for (Mask b : blocks) c *= static_cast<std::uint64_t>(cardinality(b) + 1);
    return c;
  }
};

namespace detail {

inline bool exchangeable(const FuzzyMeasure& mu, int i, int j, double tol) {
  const Mask bi = singleton(i), bj = singleton(j);
  const Mask rest = mu.full_mask() & ~(bi | bj);
  bool ok = true;
  for_each_subset(rest, [&](Mask c) {
    if (std::abs(mu[c | bi] - mu[c | bj]) > tol) ok = false;
  });
  return ok;
}

} // namespace detail

/// Coarsest partition into subsets of indifference: criteria i, j land in one
/// block iff mu(Cu{i}) = mu(Cu{j}) for every C avoiding both. Merging is done
/// by connected components of the pairwise relation and the full definitional
/// condition is re-verified per block; a failure of either transitivity or
/// the block condition raises ambiguity_error.
inline PartitionEncoding indifference_partition(const FuzzyMeasure& mu,
                                                double tol = default_tolerance) {
  const int n = mu.n();
  std::vector<std::vector<bool>> ex(n + 1, std::vector<bool>(n + 1, false));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      ex[i][j] = ex[j][i] = detail::exchangeable(mu, i, j, tol);

  // connected components
  std::vector<int> comp(n + 1, -1);
  int ncomp = 0;
  for (int i = 1; i <= n; ++i) {
    if (comp[i] >= 0) continue;
    const int c = ncomp++;
    std::vector<int> stack{i};
    comp[i] = c;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 1; v <= n; ++v)
        if (ex[u][v] && comp[v] < 0) { comp[v] = c; stack.push_back(v); }
    }
  }

  // transitivity: every pair inside a component must be directly exchangeable
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (comp[i] == comp[j] && !ex[i][j]) {
        int mid = 0;
        for (int m = 1; m <= n; ++m)
          if (m != i && m != j && comp[m] == comp[i] && ex[i][m]) { mid = m; break; }
        throw ambiguity_error("indifference_partition: criteria " + std::to_string(i) + " ~ " +
                              std::to_string(mid) + " ~ " + std::to_string(j) +
                              " but " + std::to_string(i) + " !~ " + std::to_string(j));
      }

  PartitionEncoding part;
  part.blocks.assign(ncomp, 0);
  for (int i = 1; i <= n; ++i) part.blocks[comp[i]] |= singleton(i);

  // full definitional check: equal-size sub-selections of a block are
  // interchangeable for every context C outside the block
  for (Mask block : part.blocks) {
    const Mask outside = mu.full_mask() & ~block;
    for_each_subset(outside, [&](Mask c) {
      std::vector<double> lo(cardinality(block) + 1, 2.0), hi(cardinality(block) + 1, -1.0);
      for_each_subset(block, [&](Mask b) {
        const int s = cardinality(b);
        lo[s] = std::min(lo[s], mu[c | b]);
        hi[s] = std::max(hi[s], mu[c | b]);
      });
      for (std::size_t s = 0; s < lo.size(); ++s)
        if (hi[s] - lo[s] > tol * static_cast<double>(n))
          throw ambiguity_error("indifference_partition: block " + subset_label(block) +
                                " fails the indifference condition for context " +
                                subset_label(c));
    });
  }
  return part;
}

/// True when mu(S) depends only on the block-intersection counts b_S.
inline bool respects_partition(const FuzzyMeasure& mu, const PartitionEncoding& part,
                               double tol = default_tolerance) {
  std::vector<std::pair<std::vector<int>, double>> seen;
  for (Mask s = 0; s <= mu.full_mask(); ++s) {
    auto b = part.encode(s);
    bool found = false;
    for (auto& [key, val] : seen)
      if (key == b) {
        if (std::abs(val - mu[s]) > tol) return false;
        found = true;
        break;
      }
    if (!found) seen.emplace_back(std::move(b), mu[s]);
  }
  return true;
}

/// One-stop structural classification.
struct FamilyReport {
  int additivity_order = 0;
  int maxitive_order = 0;
  int minitive_order = 0;
  int tolerant_order = 0;
  int intolerant_order = 0;
  std::optional<std::pair<int, double>> interactive; // smallest (k, K) if any
  int symmetry_p = 0;
  PartitionEncoding basis;
};

inline FamilyReport family_report(const FuzzyMeasure& mu, double tol = default_tolerance) {
  FamilyReport r;
  r.additivity_order = additivity_order(mu, tol);
  r.maxitive_order = maxitive_order(mu, tol);
  r.minitive_order = minitive_order(mu, tol);
  r.tolerant_order = tolerant_order(mu, tol);
  r.intolerant_order = intolerant_order(mu, tol);
  for (int k = 0; k <= mu.n() - 2; ++k) {
    if (auto K = is_k_interactive(mu, k, tol)) {
      r.interactive = std::make_pair(k, *K);
      break;
    }
  }
  r.basis = indifference_partition(mu, tol);
  r.symmetry_p = static_cast<int>(r.basis.size());
  return r;
}

} // namespace fmtk

#endif // FMTK_FAMILIES_HPP
