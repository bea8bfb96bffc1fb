#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "fmtk/layout.hpp"
#include "fmtk/random.hpp"
#include "fmtk/render.hpp"

using namespace fmtk;

namespace {

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

double pixel_y(const StyleConfig& cfg, double y) {
  return cfg.canvas_height - cfg.margin - y * (cfg.canvas_height - 2 * cfg.margin);
}

} // namespace

TEST_CASE("layout shape for n = 4") {
  auto mu = random_measure(4, 3);
  auto g = layout(mu);
  CHECK(g.n == 4);
  REQUIRE(g.vertices.size() == 16u);
  CHECK(g.edges.size() == 32u);
  CHECK(g.base_width == 720.0);
  for (Mask a = 0; a < 16u; ++a) CHECK(g.vertices[a].mask == a);
}

TEST_CASE("complements mirror horizontally") {
  for (int n : {2, 3, 4, 5}) {
    auto mu = random_measure(n, derived_seed(70, n));
    auto g = layout(mu);
    const Mask full = mu.full_mask();
    for (Mask a = 0; a <= full; ++a)
      CHECK(g.vertices[a].x + g.vertices[full ^ a].x == 0.0);
  }
}

TEST_CASE("level widths follow the binomial profile") {
  auto g = layout(random_measure(4, 5));
  const double l = g.base_width;
  // extremes of level 1: 4 slots inside width 4l/6
  const double w1 = 4.0 * l / 6.0;
  CHECK(g.vertices[0b0001].x == Catch::Approx(w1 * (0.5 / 4.0 - 0.5)));
  CHECK(g.vertices[0b1000].x == Catch::Approx(w1 * (3.5 / 4.0 - 0.5)));
  CHECK(g.vertices[0].x == 0.0);
  CHECK(g.vertices[0b1111].x == 0.0);
}

TEST_CASE("middle level puts criterion-1 members on the left") {
  auto g = layout(random_measure(4, 6));
  for (Mask a : {0b0011u, 0b0101u, 0b1001u}) {
    CHECK(g.vertices[a].x < 0.0);
    CHECK(g.vertices[0b1111u ^ a].x > 0.0);
  }
}

TEST_CASE("vertex heights per style") {
  auto mu = random_measure(3, 8);
  auto topo = layout(mu);
  for (Mask a = 0; a <= mu.full_mask(); ++a)
    CHECK(topo.vertices[a].y == Catch::Approx(cardinality(a) / 3.0));

  StyleConfig on;
  on.style = GraphStyle::height_on;
  auto hg = layout(mu, on);
  for (Mask a = 0; a <= mu.full_mask(); ++a) CHECK(hg.vertices[a].y == mu[a]);
}

TEST_CASE("edge decoration tracks the marginal") {
  auto mn = min_measure(3);
  auto g = layout(mn);
  for (const auto& e : g.edges) {
    if (e.to == 0b111u && cardinality(e.from) == 2) {
      CHECK(e.height == 1.0);
      CHECK(e.stroke_width == 4.0);
      CHECK(e.stroke_color == "#000000");
    } else {
      CHECK(e.height == 0.0);
      CHECK(e.stroke_width == 0.5);
      CHECK(e.stroke_color == "#808080");
    }
  }
}

TEST_CASE("overlay radii and colors") {
  auto mu = uniform_additive(3);
  StyleConfig cfg;
  cfg.overlay = OverlayKind::mobius;
  auto g = layout(mu, cfg);
  // mobius of the uniform additive measure: 1/3 on singletons, 0 elsewhere
  CHECK(g.vertices[0b001].overlay_radius == Catch::Approx(10.0 / 3.0));
  CHECK(g.vertices[0b011].overlay_radius == Catch::Approx(0.0).margin(1e-9));
  CHECK(g.vertices[0b001].overlay_color.substr(0, 1) == "#");

  CHECK(detail::diverging_color(0.0) == "#808080");
  CHECK(detail::diverging_color(1.0) == "#008000");
  CHECK(detail::diverging_color(-1.0) == "#FF0000");
  CHECK(detail::diverging_color(-7.0) == "#FF0000");
  CHECK(detail::gray_to_black(0.0) == "#808080");
  CHECK(detail::gray_to_black(1.0) == "#000000");

  auto plain = layout(mu);
  CHECK(plain.vertices[0b001].overlay_color.empty());
  CHECK(plain.vertices[0b001].overlay_radius == 0.0);
}

TEST_CASE("value text uses four decimals") {
  auto mu = min_measure(2);
  auto g = layout(mu);
  CHECK(g.vertices[0].value_text == "0.0000");
  CHECK(g.vertices[3].value_text == "1.0000");
  CHECK(detail::fmt4(-0.0) == "0.0000");
  CHECK(detail::fmt4(0.123456) == "0.1235");
}

TEST_CASE("label modes") {
  auto mu = random_measure(3, 2);
  StyleConfig cfg;
  cfg.label_mode = LabelMode::paper;
  auto g = layout(mu, cfg);
  CHECK(g.vertices[0b101].label == "c(1, 3)");
  CHECK(layout(mu).vertices[0b101].label == "{1,3}");
}

TEST_CASE("layout rejects impossible style configs") {
  auto mu = random_measure(3, 1);
  StyleConfig bad;
  bad.stroke_min = 4.0;
  bad.stroke_max = 0.5;
  CHECK_THROWS_AS(layout(mu, bad), std::invalid_argument);
  StyleConfig tight;
  tight.margin = 500.0;
  CHECK_THROWS_AS(layout(mu, tight), std::invalid_argument);
}

TEST_CASE("chain pixel heights telescope in height_on style") {
  StyleConfig cfg;
  cfg.style = GraphStyle::height_on;
  auto mu = random_measure(4, 17);
  auto g = layout(mu, cfg);
  const double span = std::abs(pixel_y(cfg, g.vertices[15].y) - pixel_y(cfg, g.vertices[0].y));
  for (const auto& chain : maximal_chains(4)) {
    double sum = 0.0;
    for (std::size_t k = 1; k < chain.size(); ++k)
      sum += std::abs(pixel_y(cfg, g.vertices[chain[k]].y) -
                      pixel_y(cfg, g.vertices[chain[k - 1]].y));
    CHECK(sum == Catch::Approx(span).margin(1.0));
  }
}

TEST_CASE("svg output is deterministic and complete") {
  auto mu = random_measure(4, 23);
  auto g = layout(mu);
  auto a = render_svg(g);
  auto b = render_svg(layout(mu));
  CHECK(a == b);
  CHECK(count_occurrences(a, "<circle") == 16u);
  CHECK(count_occurrences(a, "<line") == 32u);
  CHECK(count_occurrences(a, "<text") == 16u);
  CHECK(a.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK(a.find("<title>{1,3}</title>") != std::string::npos);
}

TEST_CASE("dot output lists ranks and labeled edges") {
  auto mu = min_measure(3);
  auto dot = render_dot(mu);
  CHECK(dot.find("digraph lattice {") == 0u);
  CHECK(dot.find("rankdir=BT;") != std::string::npos);
  CHECK(count_occurrences(dot, "rank=same") == 4u);
  CHECK(count_occurrences(dot, " -> ") == 12u);
  CHECK(dot.find("\"{1,2}\" -> \"{1,2,3}\" [label=\"1.0000\"]") != std::string::npos);
  CHECK(dot.find("\"{}\" -> \"{1}\" [label=\"0.0000\"]") != std::string::npos);

  StyleConfig cfg;
  cfg.label_mode = LabelMode::paper;
  CHECK(render_dot(mu, cfg).find("\"c(1, 2)\"") != std::string::npos);
}

TEST_CASE("line plots draw every series plus the median") {
  std::vector<std::vector<double>> series{{0.1, 0.4, 0.2}, {0.3, 0.3, 0.3}, {0.5, 0.2, 0.9}};
  auto svg = plot_lines(series);
  CHECK(count_occurrences(svg, "<polyline") == 4u);
  CHECK(svg.find("#FF0000") != std::string::npos);
  CHECK_THROWS_AS(plot_lines({}), std::invalid_argument);
  CHECK_THROWS_AS(plot_lines({{0.1}, {0.1, 0.2}}), std::invalid_argument);

  PlotConfig titled;
  titled.title = "series <demo>";
  CHECK(plot_lines(series, titled).find("series &lt;demo&gt;") != std::string::npos);
}

TEST_CASE("scatter plots place one circle per point") {
  std::vector<std::pair<double, double>> pts{{0.0, 0.1}, {0.5, 0.4}, {1.0, 0.2}};
  auto svg = plot_scatter(pts, {"a", "b", "c"});
  CHECK(count_occurrences(svg, "<circle") == 3u);
  CHECK(svg.find(">a</text>") != std::string::npos);
  CHECK_THROWS_AS(plot_scatter({}), std::invalid_argument);
  CHECK_THROWS_AS(plot_scatter(pts, {"a"}), std::invalid_argument);
}

TEST_CASE("heatmaps draw cells in leaf order") {
  FeatureMatrix fm;
  fm.columns = {"v"};
  fm.cells = {{0.0}, {0.9}, {0.1}};
  fm.row_labels = {"r0", "r1", "r2"};
  fm.standardized = {false};
  auto dend = hierarchical_cluster(fm);
  auto svg = plot_heatmap(fm, dend);
  // one background rect plus one cell per row
  CHECK(count_occurrences(svg, "<rect") == 4u);
  CHECK(svg.find("r1") != std::string::npos);

  Dendrogram wrong;
  CHECK_THROWS_AS(plot_heatmap(fm, wrong), std::invalid_argument);
}
