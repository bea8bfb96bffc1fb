#ifndef FMTK_RENDER_HPP
#define FMTK_RENDER_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fmtk/analysis.hpp"
#include "fmtk/layout.hpp"
#include "fmtk/measure.hpp"
#include "fmtk/subsets.hpp"

namespace fmtk {

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class SvgBuilder {
public:
  SvgBuilder(double w, double h) {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt4(w) +
            "\" height=\"" + fmt4(h) + "\" viewBox=\"0 0 " + fmt4(w) + " " + fmt4(h) + "\">\n";
    rect(0, 0, w, h, "#FFFFFF");
  }

  void line(double x1, double y1, double x2, double y2, const std::string& color, double width) {
    out_ += "<line x1=\"" + fmt4(x1) + "\" y1=\"" + fmt4(y1) + "\" x2=\"" + fmt4(x2) +
            "\" y2=\"" + fmt4(y2) + "\" stroke=\"" + color + "\" stroke-width=\"" + fmt4(width) +
            "\"/>\n";
  }

  void circle(double cx, double cy, double r, const std::string& fill, const std::string& title = "") {
    out_ += "<circle cx=\"" + fmt4(cx) + "\" cy=\"" + fmt4(cy) + "\" r=\"" + fmt4(r) +
            "\" fill=\"" + fill + "\"";
    if (title.empty()) {
      out_ += "/>\n";
    } else {
      out_ += "><title>" + xml_escape(title) + "</title></circle>\n";
    }
  }

  void text(double x, double y, const std::string& anchor, double size, const std::string& content) {
    out_ += "<text x=\"" + fmt4(x) + "\" y=\"" + fmt4(y) + "\" text-anchor=\"" + anchor +
            "\" font-family=\"monospace\" font-size=\"" + fmt4(size) + "\">" +
            xml_escape(content) + "</text>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill) {
    out_ += "<rect x=\"" + fmt4(x) + "\" y=\"" + fmt4(y) + "\" width=\"" + fmt4(w) +
            "\" height=\"" + fmt4(h) + "\" fill=\"" + fill + "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                double width) {
    out_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt4(width) +
            "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ += " ";
      out_ += fmt4(pts[i].first) + "," + fmt4(pts[i].second);
    }
    out_ += "\"/>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

private:
  std::string out_;
};

inline std::string sequential_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return rgb(255 + t * (8 - 255), 255 + t * (81 - 255), 255 + t * (156 - 255));
}

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> p = {"#1F77B4", "#FF7F0E", "#2CA02C", "#9467BD",
                                             "#8C564B", "#17BECF", "#BCBD22", "#7F7F7F"};
  return p;
}

} // namespace detail

/// Lattice graph as SVG: one line per edge, one circle plus one value text
/// per vertex, deterministic byte-for-byte for identical inputs.
inline std::string render_svg(const LayoutGraph& g, const StyleConfig& cfg = {}) {
  const double usable_h = cfg.canvas_height - 2 * cfg.margin;
  const double cx = cfg.canvas_width / 2;
  auto px = [&](double x) { return cx + x; };
  auto py = [&](double y) { return cfg.canvas_height - cfg.margin - y * usable_h; };

  detail::SvgBuilder svg(cfg.canvas_width, cfg.canvas_height);
  for (const LayoutEdge& e : g.edges) {
    const LayoutVertex& a = g.vertices[e.from];
    const LayoutVertex& b = g.vertices[e.to];
    svg.line(px(a.x), py(a.y), px(b.x), py(b.y), e.stroke_color, e.stroke_width);
  }
  for (const LayoutVertex& v : g.vertices) {
    if (v.overlay_color.empty())
      svg.circle(px(v.x), py(v.y), 3.0, "#000000", v.label);
    else
      svg.circle(px(v.x), py(v.y), 2.0 + v.overlay_radius, v.overlay_color, v.label);
    svg.text(px(v.x) - 8.0, py(v.y) + 3.0, "end", 10.0, v.value_text);
  }
  return svg.finish();
}

/// Lattice graph as Graphviz DOT: nodes named by subset label, one rank group
/// per cardinality, edge labels carrying the marginal contributions.
inline std::string render_dot(const FuzzyMeasure& mu, const StyleConfig& cfg = {}) {
  const Universe& u = mu.universe();
  const int n = u.n();
  const Mask full = u.full_mask();
  auto name = [&](Mask a) { return "\"" + subset_label(a, cfg.label_mode) + "\""; };

  std::string out = "digraph lattice {\n";
  out += "  rankdir=BT;\n";
  out += "  node [shape=ellipse, fontsize=10];\n";
  std::vector<std::vector<Mask>> by_level(n + 1);
  for (Mask a = 0; a <= full; ++a) by_level[cardinality(a)].push_back(a);
  for (int r = 0; r <= n; ++r) {
    out += "  { rank=same;";
    for (Mask a : by_level[r]) out += " " + name(a) + ";";
    out += " }\n";
  }
  for (Mask a = 0; a < full; ++a) {
    for (int i = 1; i <= n; ++i) {
      const Mask bit = singleton(i);
      if (a & bit) continue;
      out += "  " + name(a) + " -> " + name(a | bit) + " [label=\"" +
             detail::fmt4(mu[a | bit] - mu[a]) + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

struct PlotConfig {
  double width = 800.0;
  double height = 600.0;
  double margin = 60.0;
  std::optional<std::pair<double, double>> x_range; // auto-fit when unset
  std::optional<std::pair<double, double>> y_range;
  std::string title;
};

namespace detail {

struct AxisMap {
  double lo, hi, out_lo, out_hi;
  double operator()(double v) const {
    return hi == lo ? (out_lo + out_hi) / 2 : out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

inline void draw_frame(SvgBuilder& svg, const PlotConfig& cfg, const AxisMap& xm, const AxisMap& ym) {
  const double x0 = cfg.margin, x1 = cfg.width - cfg.margin;
  const double y0 = cfg.height - cfg.margin, y1 = cfg.margin;
  svg.line(x0, y0, x1, y0, "#000000", 1.0);
  svg.line(x0, y0, x0, y1, "#000000", 1.0);
  svg.text(x0, y0 + 16, "middle", 10.0, fmt4(xm.lo));
  svg.text(x1, y0 + 16, "middle", 10.0, fmt4(xm.hi));
  svg.text(x0 - 6, y0 + 3, "end", 10.0, fmt4(ym.lo));
  svg.text(x0 - 6, y1 + 3, "end", 10.0, fmt4(ym.hi));
  if (!cfg.title.empty()) svg.text(cfg.width / 2, cfg.margin / 2, "middle", 14.0, cfg.title);
}

} // namespace detail

/// One polyline per series (shared x = sample index) plus a red pointwise
/// median polyline.
inline std::string plot_lines(const std::vector<std::vector<double>>& series,
                              const PlotConfig& cfg = {}) {
  if (series.empty() || series.front().empty())
    throw std::invalid_argument("plot_lines: empty data");
  const std::size_t len = series.front().size();
  for (const auto& s : series)
    if (s.size() != len) throw std::invalid_argument("plot_lines: ragged series");

  double lo = series[0][0], hi = lo;
  for (const auto& s : series)
    for (double v : s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (cfg.y_range) {
    lo = cfg.y_range->first;
    hi = cfg.y_range->second;
  } else if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }

  const detail::AxisMap xm{0.0, static_cast<double>(len - 1), cfg.margin, cfg.width - cfg.margin};
  const detail::AxisMap ym{lo, hi, cfg.height - cfg.margin, cfg.margin};
  detail::SvgBuilder svg(cfg.width, cfg.height);
  detail::draw_frame(svg, cfg, xm, ym);

  const auto& colors = detail::palette();
  for (std::size_t s = 0; s < series.size(); ++s) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
      pts.emplace_back(xm(static_cast<double>(i)), ym(series[s][i]));
    svg.polyline(pts, colors[s % colors.size()], 1.0);
  }

  std::vector<std::pair<double, double>> med;
  med.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<double> col;
    col.reserve(series.size());
    for (const auto& s : series) col.push_back(s[i]);
    med.emplace_back(xm(static_cast<double>(i)), ym(detail::median(std::move(col))));
  }
  svg.polyline(med, "#FF0000", 2.0);
  return svg.finish();
}

/// One circle (optionally labeled) per point.
inline std::string plot_scatter(const std::vector<std::pair<double, double>>& points,
                                const std::vector<std::string>& labels = {},
                                const PlotConfig& cfg = {}) {
  if (points.empty()) throw std::invalid_argument("plot_scatter: empty data");
  if (!labels.empty() && labels.size() != points.size())
    throw std::invalid_argument("plot_scatter: label count mismatch");

  double xlo = points[0].first, xhi = xlo, ylo = points[0].second, yhi = ylo;
  for (const auto& [x, y] : points) {
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  if (cfg.x_range) {
    xlo = cfg.x_range->first;
    xhi = cfg.x_range->second;
  } else if (xhi == xlo) {
    xlo -= 0.5;
    xhi += 0.5;
  }
  if (cfg.y_range) {
    ylo = cfg.y_range->first;
    yhi = cfg.y_range->second;
  } else if (yhi == ylo) {
    ylo -= 0.5;
    yhi += 0.5;
  }

  const detail::AxisMap xm{xlo, xhi, cfg.margin, cfg.width - cfg.margin};
  const detail::AxisMap ym{ylo, yhi, cfg.height - cfg.margin, cfg.margin};
  detail::SvgBuilder svg(cfg.width, cfg.height);
  detail::draw_frame(svg, cfg, xm, ym);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = xm(points[i].first), y = ym(points[i].second);
    svg.circle(x, y, 4.0, "#1F77B4");
    if (!labels.empty()) svg.text(x + 6.0, y + 3.0, "start", 9.0, labels[i]);
  }
  return svg.finish();
}

/// Matrix heatmap with rows in dendrogram leaf order and the merge tree drawn
/// to the left; cells use a sequential white-to-blue scale over the whole
/// matrix.
inline std::string plot_heatmap(const FeatureMatrix& fm, const Dendrogram& dend,
                                const PlotConfig& cfg = {}) {
  const int rows = fm.rows(), cols = fm.cols();
  if (rows == 0 || cols == 0) throw std::invalid_argument("plot_heatmap: empty matrix");
  if (static_cast<int>(dend.leaf_order.size()) != rows)
    throw std::invalid_argument("plot_heatmap: dendrogram does not match the matrix");

  double lo = fm.cells[0][0], hi = lo;
  for (const auto& row : fm.cells)
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }

  const double tree_w = 0.2 * (cfg.width - 2 * cfg.margin);
  const double grid_x = cfg.margin + tree_w;
  const double grid_w = cfg.width - cfg.margin - grid_x - 80.0; // room for row labels
  const double grid_y = cfg.margin + 20.0;
  const double grid_h = cfg.height - cfg.margin - grid_y;
  const double cell_w = grid_w / cols;
  const double cell_h = grid_h / rows;

  detail::SvgBuilder svg(cfg.width, cfg.height);
  if (!cfg.title.empty()) svg.text(cfg.width / 2, cfg.margin / 2, "middle", 14.0, cfg.title);
  for (int c = 0; c < cols; ++c)
    svg.text(grid_x + (c + 0.5) * cell_w, grid_y - 6.0, "middle", 10.0, fm.columns[c]);

  for (int p = 0; p < rows; ++p) {
    const int r = dend.leaf_order[p];
    for (int c = 0; c < cols; ++c) {
      const double t = hi == lo ? 0.5 : (fm.cells[r][c] - lo) / (hi - lo);
      svg.rect(grid_x + c * cell_w, grid_y + p * cell_h, cell_w, cell_h,
               detail::sequential_color(t));
    }
    svg.text(grid_x + grid_w + 6.0, grid_y + (p + 0.5) * cell_h + 3.0, "start", 9.0,
             fm.row_labels[r]);
  }

  // Merge tree: leaves sit at the grid edge, the root at the far left.
  double max_h = 0.0;
  for (const auto& m : dend.merges) max_h = std::max(max_h, m.height);
  std::vector<double> ypos(2 * rows - 1, 0.0), xpos(2 * rows - 1, grid_x);
  std::vector<int> display(rows);
  for (int p = 0; p < rows; ++p) display[dend.leaf_order[p]] = p;
  for (int i = 0; i < rows; ++i) ypos[i] = grid_y + (display[i] + 0.5) * cell_h;
  for (std::size_t s = 0; s < dend.merges.size(); ++s) {
    const MergeStep& m = dend.merges[s];
    const double x = max_h == 0.0 ? grid_x - tree_w : grid_x - m.height / max_h * tree_w;
    svg.line(xpos[m.left], ypos[m.left], x, ypos[m.left], "#000000", 1.0);
    svg.line(xpos[m.right], ypos[m.right], x, ypos[m.right], "#000000", 1.0);
    svg.line(x, ypos[m.left], x, ypos[m.right], "#000000", 1.0);
    const int id = rows + static_cast<int>(s);
    ypos[id] = 0.5 * (ypos[m.left] + ypos[m.right]);
    xpos[id] = x;
  }
  return svg.finish();
}

} // namespace fmtk

#endif // FMTK_RENDER_HPP
