#ifndef FMTK_MEASURE_HPP
#define FMTK_MEASURE_HPP

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fmtk/errors.hpp"
#include "fmtk/subsets.hpp"

namespace fmtk {

/// Dense table of 2^n reals indexed by subset bitmask.
class SetFunction {
public:
  SetFunction(Universe u, std::vector<double> values) : u_(u), v_(std::move(values)) {
    if (v_.size() != u_.subset_count())
      throw std::invalid_argument("SetFunction: expected " + std::to_string(u_.subset_count()) +
                                  " values, got " + std::to_string(v_.size()));
    for (double x : v_)
      if (!std::isfinite(x)) throw std::invalid_argument("SetFunction: values must be finite");
  }

  explicit SetFunction(Universe u) : u_(u), v_(u.subset_count(), 0.0) {}

  Universe universe() const { return u_; }
  int n() const { return u_.n(); }
  Mask full_mask() const { return u_.full_mask(); }
  std::size_t size() const { return v_.size(); }

  double operator[](Mask a) const { return v_[a]; }
  double& operator[](Mask a) { return v_[a]; }

  const std::vector<double>& values() const { return v_; }

private:
  Universe u_;
  std::vector<double> v_;
};

struct BoundaryViolation {
  Mask subset;      // 0 or the full mask
  double value;     // observed value
  double expected;  // 0 or 1
};

struct EdgeViolation {
  Mask from;       // A
  int criterion;   // i, with A u {i} the upper endpoint
  double deficit;  // mu(A) - mu(A u {i}), positive when monotonicity fails
};

struct ValidationReport {
  std::vector<BoundaryViolation> boundary_violations;
  std::vector<EdgeViolation> edge_violations;

  bool ok() const { return boundary_violations.empty() && edge_violations.empty(); }

  std::string summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& b : boundary_violations)
      os << "boundary " << subset_label(b.subset) << ": " << b.value
         << " (expected " << b.expected << ")\n";
    for (const auto& e : edge_violations)
      os << "edge " << subset_label(e.from) << " -> "
         << subset_label(e.from | singleton(e.criterion)) << ": deficit " << e.deficit << "\n";
    return os.str();
  }
};

/// Checks the boundary condition and all n*2^(n-1) covering-edge heights.
/// Covering edges suffice: full monotonicity follows by chaining them.
inline ValidationReport validate(const SetFunction& sf, double tol = default_tolerance) {
  if (tol < 0) throw std::invalid_argument("validate: tol must be >= 0");
  ValidationReport rep;
  const Mask full = sf.full_mask();
  if (std::abs(sf[0]) > tol) rep.boundary_violations.push_back({0, sf[0], 0.0});
  if (std::abs(sf[full] - 1.0) > tol) rep.boundary_violations.push_back({full, sf[full], 1.0});
  for (Mask a = 0; a <= full; ++a) {
    for (int i = 1; i <= sf.n(); ++i) {
      const Mask bit = singleton(i);
      if (a & bit) continue;
      const double height = sf[a | bit] - sf[a];
      if (height < -tol) rep.edge_violations.push_back({a, i, -height});
    }
  }
  return rep;
}

/// A validated fuzzy measure: boundaries pinned to exactly 0 and 1, all
/// covering edges nonnegative within the construction tolerance.
class FuzzyMeasure {
public:
  /// Validates and normalizes the boundary values. Throws validation_error
  /// when the table is not a fuzzy measure at the given tolerance.
  static FuzzyMeasure checked(SetFunction sf, double tol = default_tolerance) {
    ValidationReport rep = validate(sf, tol);
    if (!rep.ok())
      throw validation_error("not a fuzzy measure:\n" + rep.summary());
    sf[0] = 0.0;
    sf[sf.full_mask()] = 1.0;
    return FuzzyMeasure(std::move(sf));
  }

  /// Escape hatch for data loaded with validation switched off. Downstream
  /// results are only meaningful when the table really is a fuzzy measure.
  static FuzzyMeasure trusted(SetFunction sf) { return FuzzyMeasure(std::move(sf)); }

  Universe universe() const { return sf_.universe(); }
  int n() const { return sf_.n(); }
  Mask full_mask() const { return sf_.full_mask(); }
  std::size_t size() const { return sf_.size(); }

  double operator[](Mask a) const { return sf_[a]; }
  const SetFunction& as_set_function() const { return sf_; }
  const std::vector<double>& values() const { return sf_.values(); }

private:
  explicit FuzzyMeasure(SetFunction sf) : sf_(std::move(sf)) {}
  SetFunction sf_;
};

/// mu(A u {i}) - mu(A); requires i not in A.
inline double marginal(const FuzzyMeasure& mu, Mask a, int i) {
  const Mask bit = singleton(i);
  if (a & bit)
    throw std::invalid_argument("marginal: criterion " + std::to_string(i) +
                                " already in " + subset_label(a));
  return mu[a | bit] - mu[a];
}

/// dual(mu)[A] = mu(N) - mu(N \ A).
inline FuzzyMeasure dual(const FuzzyMeasure& mu) {
  const Mask full = mu.full_mask();
  SetFunction out(mu.universe());
  for (Mask a = 0; a <= full; ++a) out[a] = mu[full] - mu[full & ~a];
  return FuzzyMeasure::checked(std::move(out));
}

/// mu(A) depends only on |A|.
inline bool is_symmetric(const FuzzyMeasure& mu, double tol = default_tolerance) {
  const int n = mu.n();
  std::vector<double> lo(n + 1, 2.0), hi(n + 1, -1.0);
  for (Mask a = 0; a <= mu.full_mask(); ++a) {
    const int c = cardinality(a);
    lo[c] = std::min(lo[c], mu[a]);
    hi[c] = std::max(hi[c], mu[a]);
  }
  for (int c = 0; c <= n; ++c)
    if (hi[c] - lo[c] > tol) return false;
  return true;
}

namespace detail {

// Applies pred(mu(AuB), mu(A), mu(B)) over all disjoint nonempty pairs.
template <typename Pred>
bool all_disjoint_pairs(const FuzzyMeasure& mu, Pred&& pred) {
  const Mask full = mu.full_mask();
  for (Mask a = 1; a <= full; ++a) {
    const Mask comp = full & ~a;
    Mask b = comp;
    while (b != 0) {
      if (!pred(mu[a | b], mu[a], mu[b])) return false;
      b = (b - 1) & comp;
    }
  }
  return true;
}

} // namespace detail

inline bool is_additive(const FuzzyMeasure& mu, double tol = default_tolerance) {
  return detail::all_disjoint_pairs(
      mu, [tol](double u, double a, double b) { return std::abs(u - a - b) <= tol; });
}

inline bool is_superadditive(const FuzzyMeasure& mu, double tol = default_tolerance) {
  return detail::all_disjoint_pairs(
      mu, [tol](double u, double a, double b) { return u >= a + b - tol; });
}

inline bool is_subadditive(const FuzzyMeasure& mu, double tol = default_tolerance) {
  return detail::all_disjoint_pairs(
      mu, [tol](double u, double a, double b) { return u <= a + b + tol; });
}

namespace detail {

// Pairwise form: mu(Au{i,j}) + mu(A) vs mu(Au{i}) + mu(Au{j}) for all A and
// i,j outside A. Equivalent to the quantifier over arbitrary pairs (A,B);
// the unit tests cross-check that equivalence by brute force.
template <typename Pred>
bool all_pairwise_exchanges(const FuzzyMeasure& mu, Pred&& pred) {
  const int n = mu.n();
  for (Mask a = 0; a <= mu.full_mask(); ++a) {
    for (int i = 1; i <= n; ++i) {
      if (a & singleton(i)) continue;
      for (int j = i + 1; j <= n; ++j) {
        if (a & singleton(j)) continue;
        const Mask ai = a | singleton(i);
        const Mask aj = a | singleton(j);
        if (!pred(mu[ai | singleton(j)] + mu[a], mu[ai] + mu[aj])) return false;
      }
    }
  }
  return true;
}

} // namespace detail

inline bool is_supermodular(const FuzzyMeasure& mu, double tol = default_tolerance) {
  return detail::all_pairwise_exchanges(
      mu, [tol](double joined, double split) { return joined >= split - tol; });
}

inline bool is_submodular(const FuzzyMeasure& mu, double tol = default_tolerance) {
  return detail::all_pairwise_exchanges(
      mu, [tol](double joined, double split) { return joined <= split + tol; });
}

/// mu(A) = 0 except mu(N) = 1.
inline FuzzyMeasure min_measure(int n) {
  Universe u(n);
  SetFunction sf(u);
  sf[u.full_mask()] = 1.0;
  return FuzzyMeasure::checked(std::move(sf), 0.0);
}

/// mu(A) = 1 except mu({}) = 0.
inline FuzzyMeasure max_measure(int n) {
  Universe u(n);
  SetFunction sf(u);
  for (Mask a = 1; a <= u.full_mask(); ++a) sf[a] = 1.0;
  return FuzzyMeasure::checked(std::move(sf), 0.0);
}

/// mu(A) = sum of w_i over i in A; weights must be nonnegative and sum to 1.
inline FuzzyMeasure additive_from_weights(const std::vector<double>& w,
                                          double tol = default_tolerance) {
  Universe u(static_cast<int>(w.size()));
  double sum = 0.0;
  for (double wi : w) {
    if (wi < 0) throw std::invalid_argument("additive_from_weights: negative weight");
    sum += wi;
  }
  if (std::abs(sum - 1.0) > tol)
    throw std::invalid_argument("additive_from_weights: weights sum to " + std::to_string(sum) +
                                ", expected 1");
  SetFunction sf(u);
  for (Mask a = 1; a <= u.full_mask(); ++a) {
    double v = 0.0;
    for (int i : members(a)) v += w[i - 1];
    sf[a] = v;
  }
  sf[u.full_mask()] = 1.0;
  return FuzzyMeasure::checked(std::move(sf));
}

inline FuzzyMeasure uniform_additive(int n) {
  return additive_from_weights(std::vector<double>(n, 1.0 / n));
}

} // namespace fmtk

#endif // FMTK_MEASURE_HPP
