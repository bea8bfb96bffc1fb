#ifndef FMTK_SIMPLEX_HPP
#define FMTK_SIMPLEX_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fmtk/errors.hpp"

namespace fmtk {

enum class LpRelation { le, eq, ge };
enum class LpStatus { optimal, infeasible, unbounded };

struct LpConstraint {
  std::vector<double> coeffs;
  LpRelation rel = LpRelation::le;
  double rhs = 0.0;
};

struct LpBounds {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Dense LP, min c.x subject to rows and per-variable bounds
/// (default [0, +inf)).
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;
  std::vector<LpBounds> bounds; // empty means all defaults

  int num_vars() const { return static_cast<int>(objective.size()); }
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

namespace detail {

// Full-tableau simplex core. Bland's rule (smallest eligible index both for
// entering and, on ratio ties, for leaving) guarantees termination; the
// iteration cap is a backstop only.
class Tableau {
public:
  Tableau(int rows, int cols) : m_(rows), ncols_(cols), t_(rows, std::vector<double>(cols + 1, 0.0)), basis_(rows, -1) {}

  double& at(int i, int j) { return t_[i][j]; }
  double& rhs(int i) { return t_[i][ncols_]; }
  int rows() const { return m_; }
  int cols() const { return ncols_; }
  int basis(int i) const { return basis_[i]; }
  void set_basis(int i, int j) { basis_[i] = j; }

  void pivot(int row, int col) {
    const double p = t_[row][col];
    for (int j = 0; j <= ncols_; ++j) t_[row][j] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols_; ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  /// Runs the simplex loop for the given cost vector, entering only columns
  /// with allowed[j]. Returns false when the objective is unbounded below.
  bool iterate(const std::vector<double>& cost, const std::vector<bool>& allowed, double tol,
               int max_iters, int& iters) {
    while (true) {
      if (iters >= max_iters)
        throw solver_error("simplex: iteration cap exceeded (" + std::to_string(max_iters) + ")");
      // reduced costs r_j = c_j - c_B . column_j
      int enter = -1;
      for (int j = 0; j < ncols_; ++j) {
        if (!allowed[j]) continue;
        double r = cost[j];
        for (int i = 0; i < m_; ++i) {
          const double cb = cost[basis_[i]];
          if (cb != 0.0) r -= cb * t_[i][j];
        }
        if (r < -tol) { enter = j; break; } // Bland: first eligible index
      }
      if (enter < 0) return true;

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (t_[i][enter] <= tol) continue;
        const double ratio = t_[i][ncols_] / t_[i][enter];
        if (leave < 0 || ratio < best_ratio - tol ||
            (std::abs(ratio - best_ratio) <= tol && basis_[i] < basis_[leave]))
          { leave = i; best_ratio = ratio; }
      }
      if (leave < 0) return false;

      pivot(leave, enter);
      ++iters;
    }
  }

private:
  int m_, ncols_;
  std::vector<std::vector<double>> t_;
  std::vector<int> basis_;
};

// How an original variable maps onto the nonnegative standard variables.
struct VarMap {
  int pos = -1;      // y+ column
  int neg = -1;      // y- column (free variables only)
  double offset = 0; // x = offset + y+ - y-  (or offset - y+ when mirrored)
  bool mirrored = false;
};

} // namespace detail

/// Two-phase dense simplex. Returns optimal/infeasible/unbounded; throws
/// std::invalid_argument on malformed input and solver_error when the
/// iteration cap 50*(rows+cols) is hit.
inline LpSolution solve(const LinearProgram& lp, double tol = 1e-9) {
  const int nvars = lp.num_vars();
  if (nvars == 0) throw std::invalid_argument("solve: empty objective");
  for (const auto& row : lp.constraints)
    if (static_cast<int>(row.coeffs.size()) != nvars)
      throw std::invalid_argument("solve: constraint arity mismatch");
  if (!lp.bounds.empty() && static_cast<int>(lp.bounds.size()) != nvars)
    throw std::invalid_argument("solve: bounds arity mismatch");
  for (const auto& row : lp.constraints)
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("solve: non-finite rhs");

  auto bound = [&](int j) { return lp.bounds.empty() ? LpBounds{} : lp.bounds[j]; };

  // Shift/split variables to y >= 0; finite upper bounds become explicit rows.
  std::vector<detail::VarMap> vmap(nvars);
  int ny = 0;
  for (int j = 0; j < nvars; ++j) {
    const LpBounds b = bound(j);
    if (b.lo > b.hi) return {LpStatus::infeasible, {}, 0.0, 0};
    if (std::isfinite(b.lo)) {
      vmap[j] = {ny++, -1, b.lo, false};
    } else if (std::isfinite(b.hi)) {
      vmap[j] = {ny++, -1, b.hi, true}; // x = hi - y
    } else {
      vmap[j].pos = ny++;
      vmap[j].neg = ny++;
    }
  }

  struct Row {
    std::vector<double> a;
    LpRelation rel;
    double b;
  };
  std::vector<Row> rows;
  auto add_row = [&](const std::vector<double>& coeffs, LpRelation rel, double rhs) {
    Row r{std::vector<double>(ny, 0.0), rel, rhs};
    for (int j = 0; j < nvars; ++j) {
      const double c = coeffs[j];
      if (c == 0.0) continue;
      const auto& v = vmap[j];
      r.b -= c * v.offset;
      const double sign = v.mirrored ? -c : c;
      r.a[v.pos] += sign;
      if (v.neg >= 0) r.a[v.neg] -= c;
    }
    rows.push_back(std::move(r));
  };
  for (const auto& row : lp.constraints) add_row(row.coeffs, row.rel, row.rhs);
  for (int j = 0; j < nvars; ++j) {
    const LpBounds b = bound(j);
    if (std::isfinite(b.lo) && std::isfinite(b.hi)) {
      std::vector<double> e(nvars, 0.0);
      e[j] = 1.0;
      add_row(e, LpRelation::le, b.hi);
    }
  }

  for (auto& r : rows)
    if (r.b < 0) {
      for (double& a : r.a) a = -a;
      r.b = -r.b;
      r.rel = r.rel == LpRelation::le ? LpRelation::ge
            : r.rel == LpRelation::ge ? LpRelation::le
                                      : LpRelation::eq;
    }

  const int m = static_cast<int>(rows.size());
  int nslack = 0, nart = 0;
  for (const auto& r : rows) {
    if (r.rel != LpRelation::eq) ++nslack;
    if (r.rel != LpRelation::le) ++nart;
  }
  const int ncols = ny + nslack + nart;
  const int max_iters = 50 * (m + ncols);

  detail::Tableau tab(m, ncols);
  int slack_at = ny, art_at = ny + nslack;
  const int art_begin = art_at;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < ny; ++j) tab.at(i, j) = rows[i].a[j];
    tab.rhs(i) = rows[i].b;
    switch (rows[i].rel) {
      case LpRelation::le:
        tab.at(i, slack_at) = 1.0;
        tab.set_basis(i, slack_at++);
        break;
      case LpRelation::ge:
        tab.at(i, slack_at++) = -1.0;
        tab.at(i, art_at) = 1.0;
        tab.set_basis(i, art_at++);
        break;
      case LpRelation::eq:
        tab.at(i, art_at) = 1.0;
        tab.set_basis(i, art_at++);
        break;
    }
  }

  LpSolution sol;
  std::vector<bool> allowed(ncols, true);

  // Phase 1: drive the artificials to zero.
  if (nart > 0) {
    std::vector<double> cost1(ncols, 0.0);
    for (int j = art_begin; j < ncols; ++j) cost1[j] = 1.0;
    tab.iterate(cost1, allowed, tol, max_iters, sol.iterations);
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i)
      if (tab.basis(i) >= art_begin) art_sum += tab.rhs(i);
    if (art_sum > tol) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    // Pivot lingering zero-level artificials out where a structural column
    // allows it; rows that offer none are redundant and stay inert.
    for (int i = 0; i < m; ++i) {
      if (tab.basis(i) < art_begin) continue;
      for (int j = 0; j < art_begin; ++j)
        if (std::abs(tab.at(i, j)) > tol) {
          tab.pivot(i, j);
          break;
        }
    }
    for (int j = art_begin; j < ncols; ++j) allowed[j] = false;
  }

  // Phase 2: original objective on the transformed variables.
  std::vector<double> cost2(ncols, 0.0);
  for (int j = 0; j < nvars; ++j) {
    const auto& v = vmap[j];
    const double c = lp.objective[j];
    cost2[v.pos] += v.mirrored ? -c : c;
    if (v.neg >= 0) cost2[v.neg] -= c;
  }
  if (!tab.iterate(cost2, allowed, tol, max_iters, sol.iterations)) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  std::vector<double> y(ncols, 0.0);
  for (int i = 0; i < m; ++i) y[tab.basis(i)] = tab.rhs(i);
  sol.x.assign(nvars, 0.0);
  for (int j = 0; j < nvars; ++j) {
    const auto& v = vmap[j];
    double val = v.offset + (v.mirrored ? -y[v.pos] : y[v.pos]);
    if (v.neg >= 0) val -= y[v.neg];
    sol.x[j] = val;
  }
  sol.objective = 0.0;
  for (int j = 0; j < nvars; ++j) sol.objective += lp.objective[j] * sol.x[j];

  // Post-hoc feasibility audit of the reported optimum.
  for (std::size_t r = 0; r < lp.constraints.size(); ++r) {
    const auto& row = lp.constraints[r];
    double ax = 0.0, scale = 1.0;
    for (int j = 0; j < nvars; ++j) {
      ax += row.coeffs[j] * sol.x[j];
      scale += std::abs(row.coeffs[j] * sol.x[j]);
    }
    const double slack = ax - row.rhs;
    const double feas = 1e4 * tol * scale;
    const bool bad = (row.rel == LpRelation::le && slack > feas) ||
                     (row.rel == LpRelation::ge && slack < -feas) ||
                     (row.rel == LpRelation::eq && std::abs(slack) > feas);
    if (bad)
      throw solver_error("simplex: optimum violates constraint " + std::to_string(r) +
                         " by " + std::to_string(slack));
  }

  sol.status = LpStatus::optimal;
  return sol;
}

} // namespace fmtk

#endif // FMTK_SIMPLEX_HPP
