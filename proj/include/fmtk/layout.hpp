#ifndef FMTK_LAYOUT_HPP
#define FMTK_LAYOUT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fmtk/measure.hpp"
#include "fmtk/subsets.hpp"
#include "fmtk/transforms.hpp"

namespace fmtk {

enum class GraphStyle { topological, height_on };
enum class OverlayKind { none, mobius, nonadditivity, nonmodularity, shapley_comprehensive };

struct StyleConfig {
  GraphStyle style = GraphStyle::topological;
  OverlayKind overlay = OverlayKind::none;
  double canvas_width = 800.0;
  double canvas_height = 600.0;
  double margin = 40.0;
  double base_width = 0.0; // 0 selects canvas_width - 2 * margin
  double stroke_min = 0.5;
  double stroke_max = 4.0;
  LabelMode label_mode = LabelMode::canonical;
};

struct LayoutVertex {
  Mask mask = 0;
  double x = 0.0; // centered: 0 is the horizontal middle of the canvas
  double y = 0.0; // 0 bottom (empty set) to 1 top (universe)
  std::string label;
  double overlay_radius = 0.0;
  std::string overlay_color;
  std::string value_text;
};

struct LayoutEdge {
  Mask from = 0;
  Mask to = 0;
  double height = 0.0; // marginal contribution mu(to) - mu(from)
  double stroke_width = 0.0;
  std::string stroke_color;
};

struct LayoutGraph {
  int n = 0;
  GraphStyle style = GraphStyle::topological;
  double base_width = 0.0;
  std::vector<LayoutVertex> vertices; // index == mask
  std::vector<LayoutEdge> edges;
};

namespace detail {

inline std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v + 0.0); // +0.0 folds -0 into 0
  return buf;
}

inline std::string rgb(double r, double g, double b) {
  auto ch = [](double v) { return std::clamp(static_cast<int>(std::lround(v)), 0, 255); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X", ch(r), ch(g), ch(b));
  return buf;
}

/// Red at -1, gray at 0, green at +1, linear in RGB, clamped.
inline std::string diverging_color(double v) {
  v = std::clamp(v, -1.0, 1.0);
  if (v < 0.0) return rgb(128 + 127 * -v, 128 * (1 + v), 128 * (1 + v));
  return rgb(128 * (1 - v), 128, 128 * (1 - v));
}

/// Gray at 0 to black at 1, linear in RGB, clamped.
inline std::string gray_to_black(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double c = 128 * (1 - t);
  return rgb(c, c, c);
}

} // namespace detail

/// Places every subset on the Boolean lattice: height is |A|/n (topological)
/// or mu(A) (height_on); level r spans width C(n,r) * l / C(n, round(n/2))
/// with evenly spaced slots; the top half mirrors the bottom half so that
/// x(A) = -x(complement) holds exactly, and at the middle level of an even n
/// the pair member containing criterion 1 takes the left slot.
inline LayoutGraph layout(const FuzzyMeasure& mu, const StyleConfig& cfg = {}) {
  if (!(cfg.stroke_min < cfg.stroke_max))
    throw std::invalid_argument("layout: stroke range must satisfy w_min < w_max");
  if (!(cfg.margin >= 0) || !(cfg.canvas_width > 2 * cfg.margin) ||
      !(cfg.canvas_height > 2 * cfg.margin))
    throw std::invalid_argument("layout: canvas does not fit the margins");

  const Universe& u = mu.universe();
  const int n = u.n();
  const Mask full = u.full_mask();
  const double l = cfg.base_width > 0 ? cfg.base_width : cfg.canvas_width - 2 * cfg.margin;
  const int mid = static_cast<int>(std::nearbyint(n / 2.0));
  const double denom = static_cast<double>(binomial(n, mid));

  LayoutGraph g;
  g.n = n;
  g.style = cfg.style;
  g.base_width = l;
  g.vertices.resize(u.subset_count());

  std::vector<double> overlay;
  if (cfg.overlay != OverlayKind::none) {
    IndexKind kind;
    switch (cfg.overlay) {
      case OverlayKind::mobius: kind = IndexKind::mobius; break;
      case OverlayKind::nonadditivity: kind = IndexKind::nonadditivity; break;
      case OverlayKind::nonmodularity: kind = IndexKind::nonmodularity; break;
      default: kind = IndexKind::shapley_comprehensive; break;
    }
    const IndexVector iv = compute_index(mu, kind);
    overlay.reserve(u.subset_count());
    for (Mask a = 0; a < u.subset_count(); ++a) overlay.push_back(iv.values[a]);
  }

  std::vector<std::vector<Mask>> by_level(n + 1);
  for (Mask a = 0; a <= full; ++a) by_level[cardinality(a)].push_back(a);

  auto slot_x = [&](int r, int j, int count) {
    const double w = static_cast<double>(binomial(n, r)) * l / denom;
    return w * ((j + 0.5) / count - 0.5);
  };

  for (int r = 0; r <= n; ++r) {
    const auto& level = by_level[r];
    const int count = static_cast<int>(level.size());
    if (2 * r < n) {
      for (int j = 0; j < count; ++j) g.vertices[level[j]].x = slot_x(r, j, count);
    } else if (2 * r == n) {
      int j = 0;
      for (Mask a : level) {
        if (!(a & singleton(1))) continue;
        g.vertices[a].x = slot_x(r, j, count);
        g.vertices[full ^ a].x = -g.vertices[a].x;
        ++j;
      }
    } else {
      for (Mask a : level) g.vertices[a].x = -g.vertices[full ^ a].x;
    }
  }

  for (Mask a = 0; a <= full; ++a) {
    LayoutVertex& v = g.vertices[a];
    v.mask = a;
    v.y = cfg.style == GraphStyle::height_on ? mu[a] : static_cast<double>(cardinality(a)) / n;
    v.label = subset_label(a, cfg.label_mode);
    v.value_text = detail::fmt4(mu[a]);
    if (!overlay.empty()) {
      const double val = std::clamp(overlay[a], -1.0, 1.0);
      v.overlay_radius = 10.0 * std::abs(val);
      v.overlay_color = detail::diverging_color(val);
    }
  }

  for (Mask a = 0; a < full; ++a) {
    for (int i = 1; i <= n; ++i) {
      const Mask bit = singleton(i);
      if (a & bit) continue;
      LayoutEdge e;
      e.from = a;
      e.to = a | bit;
      e.height = mu[e.to] - mu[a];
      const double d = std::clamp(e.height, 0.0, 1.0);
      e.stroke_width = cfg.stroke_min + d * (cfg.stroke_max - cfg.stroke_min);
      e.stroke_color = detail::gray_to_black(d);
      g.edges.push_back(std::move(e));
    }
  }
  return g;
}

} // namespace fmtk

#endif // FMTK_LAYOUT_HPP
