#ifndef FMTK_INTEGRALS_HPP
#define FMTK_INTEGRALS_HPP

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmtk/measure.hpp"

namespace fmtk {

namespace detail {

inline void check_dimension(const FuzzyMeasure& mu, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != mu.n())
    throw std::invalid_argument("integral: input has " + std::to_string(x.size()) +
                                " components, measure has n = " + std::to_string(mu.n()));
}

inline void check_nonnegative(const std::vector<double>& x) {
  for (double xi : x)
    if (xi < 0.0) throw std::invalid_argument("integral: negative input component");
}

inline void check_unit_range(const std::vector<double>& x) {
  for (double xi : x)
    if (xi < 0.0 || xi > 1.0)
      throw std::invalid_argument("integral: input component outside [0, 1]");
}

/// Criteria indices (1-based) ordered by ascending input value, ties broken
/// by criterion index. Both orderings give the same integral values; the
/// fixed rule keeps derived artifacts (LP rows) deterministic.
inline std::vector<int> ascending_order(const std::vector<double>& x) {
  std::vector<int> ord(x.size());
  std::iota(ord.begin(), ord.end(), 1);
  std::stable_sort(ord.begin(), ord.end(),
                   [&](int a, int b) { return x[a - 1] < x[b - 1]; });
  return ord;
}

/// min over A of x, or +inf for the empty set.
inline double min_over(const std::vector<double>& x, Mask a) {
  double m = std::numeric_limits<double>::infinity();
  for (int i : members(a)) m = std::min(m, x[i - 1]);
  return m;
}

/// max over A of x, or 0 for the empty set (the convention that makes the
/// Choquet basis expansion telescope to the ordered form).
inline double max_over_or_zero(const std::vector<double>& x, Mask a) {
  double m = 0.0;
  for (int i : members(a)) m = std::max(m, x[i - 1]);
  return m;
}

} // namespace detail

/// Ordered form: sum_i (x_(i) - x_(i-1)) mu({(i),...,(n)}), x_(0) = 0.
inline double choquet(const FuzzyMeasure& mu, const std::vector<double>& x) {
  detail::check_dimension(mu, x);
  detail::check_nonnegative(x);
  const std::vector<int> ord = detail::ascending_order(x);
  Mask tail = mu.full_mask();
  double acc = 0.0, prev = 0.0;
  for (int i : ord) {
    acc += (x[i - 1] - prev) * mu[tail];
    prev = x[i - 1];
    tail &= ~singleton(i);
  }
  return acc;
}

/// Basis form: sum_A mu(A) * max(0, min_{i in A} x_i - max_{i notin A} x_i).
inline double choquet_basis(const FuzzyMeasure& mu, const std::vector<double>& x) {
  detail::check_dimension(mu, x);
  detail::check_nonnegative(x);
  const Mask full = mu.full_mask();
  double acc = 0.0;
  for (Mask a = 1; a <= full; ++a) {
    const double hat = detail::min_over(x, a) - detail::max_over_or_zero(x, full & ~a);
    if (hat > 0.0) acc += mu[a] * hat;
  }
  return acc;
}

/// Ordered form: max_i min(x_(i), mu({(i),...,(n)})).
inline double sugeno(const FuzzyMeasure& mu, const std::vector<double>& x) {
  detail::check_dimension(mu, x);
  detail::check_unit_range(x);
  const std::vector<int> ord = detail::ascending_order(x);
  Mask tail = mu.full_mask();
  double acc = 0.0;
  for (int i : ord) {
    acc = std::max(acc, std::min(x[i - 1], mu[tail]));
    tail &= ~singleton(i);
  }
  return acc;
}

/// Basis form: max_A min(mu(A), min_{i in A} x_i).
inline double sugeno_basis(const FuzzyMeasure& mu, const std::vector<double>& x) {
  detail::check_dimension(mu, x);
  detail::check_unit_range(x);
  double acc = 0.0;
  for (Mask a = 1; a <= mu.full_mask(); ++a)
    acc = std::max(acc, std::min(mu[a], detail::min_over(x, a)));
  return acc;
}

/// Ordered form: max_i x_(i) * mu({(i),...,(n)}).
inline double pan(const FuzzyMeasure& mu, const std::vector<double>& x) {
  detail::check_dimension(mu, x);
  detail::check_unit_range(x);
  const std::vector<int> ord = detail::ascending_order(x);
  Mask tail = mu.full_mask();
  double acc = 0.0;
  for (int i : ord) {
    acc = std::max(acc, x[i - 1] * mu[tail]);
    tail &= ~singleton(i);
  }
  return acc;
}

/// Basis form: max_A mu(A) * min_{i in A} x_i. Shares the Sugeno basis
/// functions, whence pan <= sugeno pointwise.
inline double pan_basis(const FuzzyMeasure& mu, const std::vector<double>& x) {
  detail::check_dimension(mu, x);
  detail::check_unit_range(x);
  double acc = 0.0;
  for (Mask a = 1; a <= mu.full_mask(); ++a)
    acc = std::max(acc, mu[a] * detail::min_over(x, a));
  return acc;
}

} // namespace fmtk

#endif // FMTK_INTEGRALS_HPP
