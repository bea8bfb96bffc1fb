#ifndef FMTK_TRANSFORMS_HPP
#define FMTK_TRANSFORMS_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fmtk/measure.hpp"

namespace fmtk {

enum class IndexKind { mobius, shapley_comprehensive, nonadditivity, nonmodularity };

inline std::string to_string(IndexKind k) {
  switch (k) {
    case IndexKind::mobius: return "mobius";
    case IndexKind::shapley_comprehensive: return "shapley_comprehensive";
    case IndexKind::nonadditivity: return "nonadditivity";
    case IndexKind::nonmodularity: return "nonmodularity";
  }
  return "?";
}

/// A per-subset index derived from a measure, stored as a plain set function.
struct IndexVector {
  IndexKind kind;
  SetFunction values;

  double operator[](Mask a) const { return values[a]; }
  int n() const { return values.n(); }
};

/// Moebius transform m(A) = sum_{C subseteq A} (-1)^{|A\C|} mu(C), computed by
/// the in-place subset-lattice butterfly in O(n 2^n).
inline IndexVector mobius(const FuzzyMeasure& mu) {
  SetFunction m = mu.as_set_function();
  const Mask full = m.full_mask();
  for (int i = 1; i <= m.n(); ++i) {
    const Mask bit = singleton(i);
    for (Mask a = 0; a <= full; ++a)
      if (a & bit) m[a] -= m[a ^ bit];
  }
  return {IndexKind::mobius, std::move(m)};
}

/// Inverse of mobius: mu(A) = sum_{C subseteq A} m(C). Throws validation_error
/// when the image violates monotonicity or the boundaries.
inline FuzzyMeasure zeta(const IndexVector& m, double tol = default_tolerance) {
  if (m.kind != IndexKind::mobius)
    throw std::invalid_argument("zeta: expected a mobius vector, got " + to_string(m.kind));
  SetFunction v = m.values;
  const Mask full = v.full_mask();
  for (int i = 1; i <= v.n(); ++i) {
    const Mask bit = singleton(i);
    for (Mask a = 0; a <= full; ++a)
      if (a & bit) v[a] += v[a ^ bit];
  }
  return FuzzyMeasure::checked(std::move(v), tol);
}

/// Shapley comprehensive importance of every subset:
///   k(A) = sum_{B subseteq N\A} [ (|B|! (n-|A|-|B|)!) / (n-|A|+1)! ] * (mu(AuB) - mu(B))
/// with the weight written as 1/(n-|A|+1) * 1/binom(n-|A|, |B|).
/// The result is itself a fuzzy measure; k({i}) is the Shapley value of i.
inline IndexVector shapley_comprehensive(const FuzzyMeasure& mu) {
  const Mask full = mu.full_mask();
  const int n = mu.n();
  SetFunction k(mu.universe());
  for (Mask a = 0; a <= full; ++a) {
    const int rest = n - cardinality(a);
    const Mask comp = full & ~a;
    double acc = 0.0;
    for_each_subset(comp, [&](Mask b) {
      const double w = 1.0 / (static_cast<double>(rest + 1) *
                              static_cast<double>(binomial(rest, cardinality(b))));
      acc += w * (mu[a | b] - mu[b]);
    });
    k[a] = acc;
  }
  return {IndexKind::shapley_comprehensive, std::move(k)};
}

/// Shapley values of the singletons; sums to 1.
inline std::vector<double> shapley_values(const FuzzyMeasure& mu) {
  IndexVector k = shapley_comprehensive(mu);
  std::vector<double> out(mu.n());
  for (int i = 1; i <= mu.n(); ++i) out[i - 1] = k[singleton(i)];
  return out;
}

/// n(A) = mu(A) - average over complementary proper-subset pairs of
/// (mu(C) + mu(A\C)); zero at singletons and the empty set by convention.
inline IndexVector nonadditivity_index(const FuzzyMeasure& mu) {
  SetFunction idx(mu.universe());
  for (Mask a = 1; a <= mu.full_mask(); ++a) {
    const int c = cardinality(a);
    if (c < 2) continue;
    double sum = 0.0;
    for_each_proper_subset(a, [&](Mask s) { sum += mu[s]; });
    const double pairs = std::ldexp(1.0, c - 1) - 1.0; // 2^(c-1) - 1
    idx[a] = mu[a] - sum / pairs;
  }
  return {IndexKind::nonadditivity, std::move(idx)};
}

/// d(A) = mu(A) - (1/|A|) sum_{i in A} [mu({i}) + mu(A\{i})]; vanishes at
/// singletons since mu({i}) + mu({}) = mu({i}).
inline IndexVector nonmodularity_index(const FuzzyMeasure& mu) {
  SetFunction idx(mu.universe());
  for (Mask a = 1; a <= mu.full_mask(); ++a) {
    double sum = 0.0;
    for (int i : members(a)) sum += mu[singleton(i)] + mu[a & ~singleton(i)];
    idx[a] = mu[a] - sum / cardinality(a);
  }
  return {IndexKind::nonmodularity, std::move(idx)};
}

inline IndexVector compute_index(const FuzzyMeasure& mu, IndexKind kind) {
  switch (kind) {
    case IndexKind::mobius: return mobius(mu);
    case IndexKind::shapley_comprehensive: return shapley_comprehensive(mu);
    case IndexKind::nonadditivity: return nonadditivity_index(mu);
    case IndexKind::nonmodularity: return nonmodularity_index(mu);
  }
  throw std::invalid_argument("compute_index: unknown kind");
}

/// Mean of mu over each cardinality level, entries 0..n.
inline std::vector<double> level_means(const FuzzyMeasure& mu) {
  const int n = mu.n();
  std::vector<double> sum(n + 1, 0.0);
  for (Mask a = 0; a <= mu.full_mask(); ++a) sum[cardinality(a)] += mu[a];
  for (int s = 0; s <= n; ++s) sum[s] /= static_cast<double>(binomial(n, s));
  return sum;
}

/// Average interior level mean; equals the normalized expectation of the
/// Choquet integral under i.i.d. uniform inputs. 0 for the minimum measure,
/// 1 for the maximum measure, 1/2 for any symmetric additive measure.
inline double orness(const FuzzyMeasure& mu) {
  const int n = mu.n();
  const std::vector<double> m = level_means(mu);
  double acc = 0.0;
  for (int s = 1; s <= n - 1; ++s) acc += m[s];
  return acc / static_cast<double>(n - 1);
}

/// Permutation-weighted entropy of the marginal contributions,
///   H(mu) = sum_i sum_{A subseteq N\{i}} gamma_{|A|}(n) * h(mu(Au{i}) - mu(A)),
/// gamma_s(n) = (n-s-1)! s! / n!, h(x) = -x ln x. Maximal (ln n) exactly at
/// the uniform additive measure; zero for any {0,1}-valued measure.
inline double entropy(const FuzzyMeasure& mu, double tol = default_tolerance) {
  const int n = mu.n();
  const Mask full = mu.full_mask();
  std::vector<double> gamma(n);
  for (int s = 0; s < n; ++s)
    gamma[s] = static_cast<double>(factorial(n - s - 1)) * static_cast<double>(factorial(s)) /
               static_cast<double>(factorial(n));
  double h = 0.0;
  for (int i = 1; i <= n; ++i) {
    const Mask bit = singleton(i);
    for (Mask a = 0; a <= full; ++a) {
      if (a & bit) continue;
      const double d = mu[a | bit] - mu[a];
      if (d < -tol)
        throw validation_error("entropy: negative marginal at " + subset_label(a) +
                               " + {" + std::to_string(i) + "}");
      if (d > 0.0) h -= gamma[cardinality(a)] * d * std::log(d);
    }
  }
  return h;
}

/// Measure-level summary used by the comparison plots.
struct MeasureSummary {
  double entropy = 0.0;
  double orness = 0.0;
  std::vector<double> level_means;
};

inline MeasureSummary summarize(const FuzzyMeasure& mu) {
  return {entropy(mu), orness(mu), level_means(mu)};
}

} // namespace fmtk

#endif // FMTK_TRANSFORMS_HPP
