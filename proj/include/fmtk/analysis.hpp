#ifndef FMTK_ANALYSIS_HPP
#define FMTK_ANALYSIS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmtk/errors.hpp"
#include "fmtk/families.hpp"
#include "fmtk/fitting.hpp"
#include "fmtk/integrals.hpp"
#include "fmtk/measure.hpp"
#include "fmtk/random.hpp"
#include "fmtk/subsets.hpp"
#include "fmtk/transforms.hpp"

namespace fmtk {

struct FeatureMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> cells; // row-major
  std::vector<bool> standardized;         // per column

  int rows() const { return static_cast<int>(cells.size()); }
  int cols() const { return static_cast<int>(columns.size()); }
};

/// One row per subset (ascending mask order), one column per requested
/// feature: "mu" or any index name ("mobius", "shapley_comprehensive",
/// "nonadditivity", "nonmodularity"; "shapley" is accepted as shorthand).
inline FeatureMatrix subset_features(const FuzzyMeasure& mu, const std::vector<std::string>& features) {
  if (features.empty()) throw std::invalid_argument("subset_features: no features requested");
  const Universe& u = mu.universe();
  const Mask count = u.subset_count();

  FeatureMatrix fm;
  fm.row_labels.reserve(count);
  for (Mask a = 0; a < count; ++a) fm.row_labels.push_back(subset_label(a));
  fm.cells.assign(count, std::vector<double>(features.size(), 0.0));
  fm.standardized.assign(features.size(), false);

  for (std::size_t c = 0; c < features.size(); ++c) {
    const std::string& f = features[c];
    fm.columns.push_back(f);
    if (f == "mu") {
      for (Mask a = 0; a < count; ++a) fm.cells[a][c] = mu[a];
      continue;
    }
    IndexKind kind;
    if (f == "mobius") kind = IndexKind::mobius;
    else if (f == "shapley" || f == "shapley_comprehensive") kind = IndexKind::shapley_comprehensive;
    else if (f == "nonadditivity") kind = IndexKind::nonadditivity;
    else if (f == "nonmodularity") kind = IndexKind::nonmodularity;
    else throw std::invalid_argument("subset_features: unknown feature " + f);
    const IndexVector iv = compute_index(mu, kind);
    for (Mask a = 0; a < count; ++a) fm.cells[a][c] = iv.values[a];
  }
  return fm;
}

/// Z-scores every non-constant column (population standard deviation) and
/// flags it; constant columns pass through unscaled with the flag left false.
inline FeatureMatrix standardize(const FeatureMatrix& fm) {
  FeatureMatrix out = fm;
  const int r = fm.rows();
  if (r == 0) throw std::invalid_argument("standardize: empty matrix");
  for (int c = 0; c < fm.cols(); ++c) {
    double mean = 0.0;
    for (int i = 0; i < r; ++i) mean += fm.cells[i][c];
    mean /= r;
    double var = 0.0;
    for (int i = 0; i < r; ++i) {
      const double d = fm.cells[i][c] - mean;
      var += d * d;
    }
    const double sd = std::sqrt(var / r);
    if (sd > 0.0) {
      for (int i = 0; i < r; ++i) out.cells[i][c] = (fm.cells[i][c] - mean) / sd;
      out.standardized[c] = true;
    }
  }
  return out;
}

struct MergeStep {
  int left = 0;   // cluster ids; leaves are 0..rows-1, merges continue upward
  int right = 0;
  double height = 0.0;
  int size = 0;
};

struct Dendrogram {
  std::vector<MergeStep> merges;
  std::vector<int> leaf_order;
};

/// Average-linkage agglomerative clustering with Euclidean distance on the
/// standardized columns. Ties broken toward the lexicographically smallest
/// cluster-id pair, so the result is a pure function of the matrix.
inline Dendrogram hierarchical_cluster(const FeatureMatrix& fm) {
  const int r = fm.rows();
  if (r < 2) throw std::invalid_argument("hierarchical_cluster: need at least 2 rows");
  if (r > 4096) throw std::length_error("hierarchical_cluster: too many rows");
  const FeatureMatrix z = standardize(fm);

  const int total = 2 * r - 1;
  std::vector<std::vector<double>> dist(total, std::vector<double>(total, 0.0));
  std::vector<int> size(total, 1);
  std::vector<bool> alive(total, false);
  for (int i = 0; i < r; ++i) alive[i] = true;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      double s = 0.0;
      for (int c = 0; c < z.cols(); ++c) {
        const double d = z.cells[i][c] - z.cells[j][c];
        s += d * d;
      }
      dist[i][j] = dist[j][i] = std::sqrt(s);
    }

  Dendrogram out;
  for (int step = 0; step < r - 1; ++step) {
    int a = -1, b = -1;
    double best = 0.0;
    for (int i = 0; i < r + step; ++i) {
      if (!alive[i]) continue;
      for (int j = i + 1; j < r + step; ++j) {
        if (!alive[j]) continue;
        if (a < 0 || dist[i][j] < best) {
          a = i;
          b = j;
          best = dist[i][j];
        }
      }
    }
    const int id = r + step;
    size[id] = size[a] + size[b];
    for (int k = 0; k < id; ++k) {
      if (!alive[k] || k == a || k == b) continue;
      const double d = (size[a] * dist[k][a] + size[b] * dist[k][b]) / size[id];
      dist[k][id] = dist[id][k] = d;
    }
    alive[a] = alive[b] = false;
    alive[id] = true;
    out.merges.push_back({a, b, best, size[id]});
  }

  // Leaf order by depth-first traversal of the merge tree, left child first.
  std::vector<int> stack{total - 1};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (id < r) {
      out.leaf_order.push_back(id);
    } else {
      const MergeStep& m = out.merges[id - r];
      stack.push_back(m.right);
      stack.push_back(m.left);
    }
  }
  return out;
}

/// Height at which each pair of leaves first shares a cluster.
inline std::vector<std::vector<double>> cophenetic(const Dendrogram& d, int leaves) {
  std::vector<std::vector<double>> coph(leaves, std::vector<double>(leaves, 0.0));
  std::vector<std::vector<int>> members(2 * leaves - 1);
  for (int i = 0; i < leaves; ++i) members[i] = {i};
  for (std::size_t s = 0; s < d.merges.size(); ++s) {
    const MergeStep& m = d.merges[s];
    for (int u : members[m.left])
      for (int v : members[m.right]) coph[u][v] = coph[v][u] = m.height;
    auto& dst = members[leaves + static_cast<int>(s)];
    dst = members[m.left];
    dst.insert(dst.end(), members[m.right].begin(), members[m.right].end());
  }
  return coph;
}

struct MeasureReport {
  MeasureSummary summary;
  FamilyReport families;
  bool additive = false;
  bool symmetric = false;
  bool superadditive = false;
  bool subadditive = false;
  bool supermodular = false;
  bool submodular = false;
};

inline MeasureReport measure_report(const FuzzyMeasure& mu, double tol = default_tolerance) {
  MeasureReport r;
  r.summary = summarize(mu);
  r.families = family_report(mu, tol);
  r.additive = is_additive(mu, tol);
  r.symmetric = is_symmetric(mu, tol);
  r.superadditive = is_superadditive(mu, tol);
  r.subadditive = is_subadditive(mu, tol);
  r.supermodular = is_supermodular(mu, tol);
  r.submodular = is_submodular(mu, tol);
  return r;
}

namespace detail {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

} // namespace detail

struct IntegralComparison {
  std::vector<std::array<double, 3>> rows; // choquet, sugeno, pan per sample
  double median_choquet = 0.0;
  double median_sugeno = 0.0;
  double median_pan = 0.0;
  double fraction_choquet_ge_sugeno = 0.0;
  double fraction_sugeno_ge_pan = 0.0;
};

/// Evaluates all three integrals of x under config.count sampled measures.
inline IntegralComparison integral_comparison(const std::vector<double>& x, const GeneratorConfig& cfg) {
  if (static_cast<int>(x.size()) != cfg.n)
    throw std::invalid_argument("integral_comparison: input arity mismatch");
  IntegralComparison out;
  std::vector<double> c, s, p;
  int cs = 0, sn = 0;
  for (const FuzzyMeasure& mu : random_batch(cfg)) {
    const double vc = choquet(mu, x);
    const double vs = sugeno(mu, x);
    const double vp = pan(mu, x);
    out.rows.push_back({vc, vs, vp});
    c.push_back(vc);
    s.push_back(vs);
    p.push_back(vp);
    if (vc >= vs) ++cs;
    if (vs >= vp) ++sn;
  }
  out.median_choquet = detail::median(std::move(c));
  out.median_sugeno = detail::median(std::move(s));
  out.median_pan = detail::median(std::move(p));
  out.fraction_choquet_ge_sugeno = static_cast<double>(cs) / out.rows.size();
  out.fraction_sugeno_ge_pan = static_cast<double>(sn) / out.rows.size();
  return out;
}

struct AlternativesProfile {
  std::vector<std::vector<double>> series; // [alternative][sample]
  std::vector<double> medians;             // per alternative
};

/// Choquet value of every (normalized) alternative under config.count sampled
/// measures, with the per-alternative median.
inline AlternativesProfile alternatives_choquet_profile(const Dataset& ds, const GeneratorConfig& cfg) {
  if (ds.n != cfg.n) throw std::invalid_argument("alternatives_choquet_profile: arity mismatch");
  if (ds.samples.empty()) throw std::invalid_argument("alternatives_choquet_profile: empty dataset");
  const auto batch = random_batch(cfg);
  AlternativesProfile out;
  for (const auto& alt : ds.samples) {
    std::vector<double> row;
    row.reserve(batch.size());
    for (const FuzzyMeasure& mu : batch) row.push_back(choquet(mu, alt.scores));
    out.medians.push_back(detail::median(row));
    out.series.push_back(std::move(row));
  }
  return out;
}

} // namespace fmtk

#endif // FMTK_ANALYSIS_HPP
