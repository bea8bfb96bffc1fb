#ifndef FMTK_FITTING_HPP
#define FMTK_FITTING_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fmtk/errors.hpp"
#include "fmtk/integrals.hpp"
#include "fmtk/measure.hpp"
#include "fmtk/simplex.hpp"
#include "fmtk/subsets.hpp"

namespace fmtk {

struct DataSample {
  std::string id;
  std::vector<double> scores;
  double desired = 0.0;
};

struct Dataset {
  int n = 0;
  std::vector<DataSample> samples;
};

/// Affine map u = (v - offset) / scale applied to every partial score and
/// every desired evaluation.
struct Normalization {
  double offset = 0.0;
  double scale = 1.0;

  double apply(double v) const { return (v - offset) / scale; }
  double invert(double u) const { return offset + u * scale; }
};

/// Offset = smallest partial score, scale = score range. Desired values ride
/// along on the same map.
inline Normalization default_normalization(const Dataset& ds) {
  if (ds.samples.empty()) throw std::invalid_argument("default_normalization: empty dataset");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : ds.samples)
    for (double v : s.scores) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!(hi > lo)) throw std::invalid_argument("default_normalization: zero score range");
  return {lo, hi - lo};
}

/// Variable layout of the LAD program: one variable per proper nonempty
/// subset in ascending mask order, then (d+, d-) pairs per alternative.
struct LadLayout {
  int n = 0;
  int mu_count = 0;
  int sample_count = 0;

  int var_of(Mask a) const { return static_cast<int>(a) - 1; }
  Mask mask_of(int var) const { return static_cast<Mask>(var + 1); }
  int dev_plus(int sample) const { return mu_count + 2 * sample; }
  int dev_minus(int sample) const { return mu_count + 2 * sample + 1; }
  int total() const { return mu_count + 2 * sample_count; }
};

inline LadLayout lad_layout(int n, int samples) {
  Universe u(n);
  return {n, static_cast<int>(u.subset_count()) - 2, samples};
}

namespace detail {

// Choquet value of a normalized alternative as an affine function of the
// measure variables: constant + sum of coeffs[mask - 1] * mu(mask).
struct ChoquetRow {
  double constant = 0.0;
  std::vector<double> coeffs;
};

inline ChoquetRow choquet_row(const Universe& u, const std::vector<double>& x) {
  ChoquetRow row;
  row.coeffs.assign(u.subset_count() - 2, 0.0);
  const auto ord = ascending_order(x);
  Mask rest = u.full_mask();
  double prev = 0.0;
  for (int t = 0; t < u.n(); ++t) {
    const double xi = x[ord[t] - 1];
    const double delta = xi - prev;
    prev = xi;
    if (rest == u.full_mask())
      row.constant += delta;
    else
      row.coeffs[rest - 1] += delta;
    rest &= ~singleton(ord[t]);
  }
  return row;
}

inline std::vector<double> normalized_scores(const DataSample& s, const Normalization& nm) {
  std::vector<double> x;
  x.reserve(s.scores.size());
  for (double v : s.scores) {
    const double t = nm.apply(v);
    if (!(t >= -1e-12 && t <= 1.0 + 1e-12))
      throw std::invalid_argument("build_lad_lp: normalized score outside [0, 1]");
    x.push_back(std::clamp(t, 0.0, 1.0));
  }
  return x;
}

} // namespace detail

/// Least-absolute-deviation program: minimize the summed deviations subject
/// to monotonicity on every covering pair (with mu(empty) = 0 and mu(N) = 1
/// substituted) and one Choquet equality per alternative.
inline LinearProgram build_lad_lp(const Dataset& ds, const Normalization& nm) {
  if (ds.samples.empty()) throw std::invalid_argument("build_lad_lp: empty dataset");
  if (!(nm.scale > 0)) throw std::invalid_argument("build_lad_lp: scale must be positive");
  Universe u(ds.n);
  for (const auto& s : ds.samples)
    if (static_cast<int>(s.scores.size()) != ds.n)
      throw std::invalid_argument("build_lad_lp: alternative arity mismatch");
  const LadLayout layout = lad_layout(ds.n, static_cast<int>(ds.samples.size()));

  LinearProgram lp;
  const int nv = layout.total();
  lp.objective.assign(nv, 0.0);
  for (int j = 0; j < layout.sample_count; ++j) {
    lp.objective[layout.dev_plus(j)] = 1.0;
    lp.objective[layout.dev_minus(j)] = 1.0;
  }
  lp.bounds.assign(nv, LpBounds{});
  for (int v = 0; v < layout.mu_count; ++v) lp.bounds[v] = {0.0, 1.0};

  const Mask full = u.full_mask();
  for (Mask a = 0; a < full; ++a) {
    for (int i = 1; i <= u.n(); ++i) {
      const Mask bit = singleton(i);
      if (a & bit) continue;
      const Mask b = a | bit;
      LpConstraint row;
      row.coeffs.assign(nv, 0.0);
      row.rel = LpRelation::ge;
      row.rhs = 0.0;
      if (b == full)
        row.rhs = -1.0; // mu(N) = 1 moved to the right side
      else
        row.coeffs[layout.var_of(b)] = 1.0;
      if (a != 0) row.coeffs[layout.var_of(a)] -= 1.0;
      lp.constraints.push_back(std::move(row));
    }
  }

  for (int j = 0; j < layout.sample_count; ++j) {
    const auto x = detail::normalized_scores(ds.samples[j], nm);
    const auto cr = detail::choquet_row(u, x);
    LpConstraint row;
    row.coeffs.assign(nv, 0.0);
    for (int v = 0; v < layout.mu_count; ++v) row.coeffs[v] = cr.coeffs[v];
    row.coeffs[layout.dev_plus(j)] = 1.0;
    row.coeffs[layout.dev_minus(j)] = -1.0;
    row.rel = LpRelation::eq;
    row.rhs = nm.apply(ds.samples[j].desired) - cr.constant;
    lp.constraints.push_back(std::move(row));
  }
  return lp;
}

struct FitOptions {
  double lp_tolerance = 1e-9;
  double stage_tolerance = 1e-12; // slack granted on the stage-one optimum
  bool minimal = true;           // stage two: smallest measure among optima
  double validation_tolerance = 1e-6;
  /// Optional decision-preference rows over the measure variables (one
  /// coefficient per nonempty proper subset, ascending mask order).
  std::vector<LpConstraint> preference_rows;
};

struct FitResult {
  FuzzyMeasure measure;
  Normalization normalization;
  double objective = 0.0;        // summed absolute deviation, normalized scale
  std::vector<double> fitted;    // normalized Choquet outputs
  std::vector<double> residuals; // fitted minus desired, normalized scale
  int iterations = 0;
};

/// Round t holds the fit on alternatives 1..t.
struct FitTrace {
  std::vector<FitResult> rounds;
};

/// Fits a fuzzy measure by least absolute deviation of the Choquet integral.
/// Stage one minimizes the summed deviation; stage two, when enabled,
/// re-solves for the smallest total measure among (near-)optimal solutions,
/// which keeps every value not demanded by the data at the lowest level
/// monotonicity allows.
inline FitResult fit(const Dataset& ds, const Normalization& nm, const FitOptions& opt = {}) {
  LinearProgram lp = build_lad_lp(ds, nm);
  const LadLayout layout = lad_layout(ds.n, static_cast<int>(ds.samples.size()));
  for (const auto& pref : opt.preference_rows) {
    if (static_cast<int>(pref.coeffs.size()) != layout.mu_count)
      throw std::invalid_argument("fit: preference row arity mismatch");
    LpConstraint row = pref;
    row.coeffs.resize(layout.total(), 0.0);
    lp.constraints.push_back(std::move(row));
  }

  LpSolution first = solve(lp, opt.lp_tolerance);
  if (first.status != LpStatus::optimal)
    throw solver_error("fit: deviation stage not optimal");

  LpSolution final = first;
  if (opt.minimal) {
    LpConstraint budget;
    budget.coeffs = lp.objective;
    budget.rel = LpRelation::le;
    budget.rhs = first.objective + opt.stage_tolerance;
    lp.constraints.push_back(std::move(budget));
    for (int v = 0; v < layout.mu_count; ++v) lp.objective[v] = 1.0;
    for (int j = 0; j < layout.sample_count; ++j) {
      lp.objective[layout.dev_plus(j)] = 0.0;
      lp.objective[layout.dev_minus(j)] = 0.0;
    }
    LpSolution second = solve(lp, opt.lp_tolerance);
    if (second.status != LpStatus::optimal)
      throw solver_error("fit: minimality stage not optimal");
    second.iterations += first.iterations;
    final = std::move(second);
  }

  Universe u(layout.n);
  SetFunction sf(u);
  sf[0] = 0.0;
  sf[u.full_mask()] = 1.0;
  for (int v = 0; v < layout.mu_count; ++v)
    sf[layout.mask_of(v)] = std::clamp(final.x[v], 0.0, 1.0);

  FitResult out{FuzzyMeasure::checked(sf, opt.validation_tolerance),
                nm,
                0.0,
                {},
                {},
                final.iterations};
  for (const auto& s : ds.samples) {
    const auto x = detail::normalized_scores(s, nm);
    const double value = choquet(out.measure, x);
    const double want = nm.apply(s.desired);
    out.fitted.push_back(value);
    out.residuals.push_back(value - want);
    out.objective += std::abs(value - want);
  }
  return out;
}

/// Refits after each added alternative, in dataset order, recording how the
/// optimal measure evolves as evidence accumulates.
inline FitTrace fit_incremental(const Dataset& ds, const Normalization& nm,
                                const FitOptions& opt = {}) {
  if (ds.samples.empty()) throw std::invalid_argument("fit_incremental: empty dataset");
  FitTrace trace;
  Dataset prefix;
  prefix.n = ds.n;
  for (const auto& s : ds.samples) {
    prefix.samples.push_back(s);
    trace.rounds.push_back(fit(prefix, nm, opt));
  }
  return trace;
}

} // namespace fmtk

#endif // FMTK_FITTING_HPP
