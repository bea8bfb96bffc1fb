#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "fmtk/fitting.hpp"
#include "fmtk/integrals.hpp"
#include "fmtk/random.hpp"

using namespace fmtk;

namespace {

// five-criterion ranking: agreed evaluations on a common scale
Dataset ranking_dataset() {
  Dataset ds;
  ds.n = 5;
  auto add = [&](std::string id, std::vector<double> sc, double y) {
    ds.samples.push_back({std::move(id), std::move(sc), y});
  };
  add("x1", {18, 11, 11, 11, 18}, 15.0);
  add("x2", {18, 11, 18, 11, 11}, 14.5);
  add("x3", {11, 11, 18, 11, 18}, 14.0);
  add("x4", {18, 18, 11, 11, 11}, 13.5);
  add("x5", {11, 11, 18, 18, 11}, 13.0);
  add("x6", {11, 11, 18, 11, 11}, 12.5);
  add("x7", {11, 11, 11, 11, 18}, 12.0);
  return ds;
}

Dataset toy(int n, std::vector<DataSample> samples) {
  Dataset ds;
  ds.n = n;
  ds.samples = std::move(samples);
  return ds;
}

} // namespace

TEST_CASE("default normalization spans the score range") {
  auto ds = ranking_dataset();
  auto nm = default_normalization(ds);
  CHECK(nm.offset == 11.0);
  CHECK(nm.scale == 7.0);
  CHECK(nm.apply(11.0) == 0.0);
  CHECK(nm.apply(18.0) == 1.0);
  CHECK(nm.invert(nm.apply(13.25)) == Catch::Approx(13.25));

  CHECK_THROWS_AS(default_normalization(Dataset{}), std::invalid_argument);
  auto flat = toy(2, {{"a", {3.0, 3.0}, 3.0}});
  CHECK_THROWS_AS(default_normalization(flat), std::invalid_argument);
}

TEST_CASE("lad layout enumerates measure then deviation variables") {
  auto layout = lad_layout(5, 7);
  CHECK(layout.mu_count == 30);
  CHECK(layout.sample_count == 7);
  CHECK(layout.total() == 44);
  CHECK(layout.var_of(0b00001) == 0);
  CHECK(layout.mask_of(29) == 0b11110u);
  CHECK(layout.dev_plus(0) == 30);
  CHECK(layout.dev_minus(6) == 43);
}

TEST_CASE("lad program has one row per lattice edge plus one per alternative") {
  auto ds = ranking_dataset();
  auto lp = build_lad_lp(ds, default_normalization(ds));
  CHECK(lp.num_vars() == 44);
  // n 2^(n-1) = 80 monotonicity rows and 7 equality rows
  CHECK(lp.constraints.size() == 87u);
  int eq = 0;
  for (const auto& c : lp.constraints)
    if (c.rel == LpRelation::eq) ++eq;
  CHECK(eq == 7);
  for (int v = 0; v < 30; ++v) {
    CHECK(lp.bounds[v].lo == 0.0);
    CHECK(lp.bounds[v].hi == 1.0);
  }
  for (int v = 30; v < 44; ++v) CHECK(std::isinf(lp.bounds[v].hi));

  CHECK_THROWS_AS(build_lad_lp(Dataset{}, Normalization{}), std::invalid_argument);
  CHECK_THROWS_AS(build_lad_lp(ds, Normalization{0.0, 0.0}), std::invalid_argument);
  auto bad = ranking_dataset();
  bad.samples[2].scores.pop_back();
  CHECK_THROWS_AS(build_lad_lp(bad, default_normalization(ds)), std::invalid_argument);
}

TEST_CASE("normalized scores must land in the unit interval") {
  auto ds = ranking_dataset();
  Normalization nm{11.0, 3.0}; // maps 18 to 7/3 > 1
  CHECK_THROWS_AS(build_lad_lp(ds, nm), std::invalid_argument);
}

TEST_CASE("choquet row reproduces the integral at any measure") {
  Universe u(4);
  const std::vector<double> x{0.3, 0.8, 0.1, 0.8};
  auto row = detail::choquet_row(u, x);
  for (int s = 0; s < 10; ++s) {
    auto mu = random_measure(4, derived_seed(500, s));
    double acc = row.constant;
    for (Mask a = 1; a < u.full_mask(); ++a) acc += row.coeffs[a - 1] * mu[a];
    CHECK(acc == Catch::Approx(choquet(mu, x)).margin(1e-12));
  }
}

TEST_CASE("perfect data is matched exactly") {
  // desired produced by a known measure: weighted sum with weights .5/.3/.2
  auto gen = additive_from_weights({0.5, 0.3, 0.2});
  Dataset ds;
  ds.n = 3;
  const std::vector<std::vector<double>> pts{
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {0.5, 0.25, 1.0}};
  for (std::size_t k = 0; k < pts.size(); ++k)
    ds.samples.push_back({"p" + std::to_string(k), pts[k], choquet(gen, pts[k])});
  auto res = fit(ds, Normalization{});
  CHECK(res.objective <= 1e-9);
  for (double r : res.residuals) CHECK(std::abs(r) <= 1e-9);
  CHECK(res.measure[0b001] == Catch::Approx(0.5).margin(1e-7));
  CHECK(res.measure[0b010] == Catch::Approx(0.3).margin(1e-7));
  CHECK(res.measure[0b100] == Catch::Approx(0.2).margin(1e-7));
  CHECK(res.measure[0b011] == Catch::Approx(0.8).margin(1e-7));
}

TEST_CASE("contradictory duplicates split the difference") {
  // same profile, two desired values: best LAD objective is their gap
  auto ds = toy(2, {{"a", {1.0, 0.0}, 0.2}, {"b", {1.0, 0.0}, 0.6}});
  auto res = fit(ds, Normalization{});
  CHECK(res.objective == Catch::Approx(0.4).margin(1e-9));
}

TEST_CASE("minimal stage keeps unconstrained values at the monotone floor") {
  auto ds = toy(3, {{"a", {1.0, 0.0, 0.0}, 0.5}});
  auto res = fit(ds, Normalization{});
  CHECK(res.measure[0b001] == Catch::Approx(0.5).margin(1e-9));
  // nothing in the data pushes these above the floor
  CHECK(res.measure[0b010] == Catch::Approx(0.0).margin(1e-9));
  CHECK(res.measure[0b110] == Catch::Approx(0.0).margin(1e-9));
  CHECK(res.measure[0b011] == Catch::Approx(0.5).margin(1e-9));

  FitOptions raw;
  raw.minimal = false;
  auto loose = fit(ds, Normalization{}, raw);
  CHECK(loose.objective <= 1e-9);
}

TEST_CASE("fit on the ranking data recovers the published coalition values") {
  auto ds = ranking_dataset();
  auto res = fit(ds, default_normalization(ds));
  CHECK(res.objective <= 1e-9);
  for (std::size_t j = 0; j < ds.samples.size(); ++j) {
    CHECK(std::abs(res.residuals[j]) <= 1e-9);
    CHECK(res.fitted[j] ==
          Catch::Approx(res.normalization.apply(ds.samples[j].desired)).margin(1e-9));
  }
  CHECK(res.measure[0b10001] == Catch::Approx(4.0 / 7.0).margin(1e-6));
  CHECK(res.measure[0b00101] == Catch::Approx(1.0 / 2.0).margin(1e-6));
  CHECK(res.measure[0b10100] == Catch::Approx(3.0 / 7.0).margin(1e-6));
  CHECK(res.measure[0b00011] == Catch::Approx(5.0 / 14.0).margin(1e-6));
  CHECK(res.measure[0b01100] == Catch::Approx(2.0 / 7.0).margin(1e-6));
  CHECK(res.measure[0b00100] == Catch::Approx(3.0 / 14.0).margin(1e-6));
  CHECK(res.measure[0b10000] == Catch::Approx(1.0 / 7.0).margin(1e-6));
  CHECK(res.iterations > 0);
}

TEST_CASE("incremental trace grows one alternative per round") {
  auto ds = ranking_dataset();
  auto trace = fit_incremental(ds, default_normalization(ds));
  REQUIRE(trace.rounds.size() == 7u);
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    CHECK(trace.rounds[t].fitted.size() == t + 1);
    CHECK(trace.rounds[t].objective <= 1e-9);
  }
  // round one: only x1 constrains the fit; mu({1,5}) already lands at 4/7
  // and every strict superset sits at the same level
  const auto& r1 = trace.rounds[0].measure;
  CHECK(r1[0b10001] == Catch::Approx(4.0 / 7.0).margin(1e-6));
  for (Mask a = 0b10001; a < r1.full_mask(); ++a) {
    if ((a & 0b10001) != 0b10001 || a == 0b10001) continue;
    CHECK(r1[a] == Catch::Approx(4.0 / 7.0).margin(1e-6));
  }
  CHECK(trace.rounds.back().measure[0b10001] == Catch::Approx(4.0 / 7.0).margin(1e-6));

  CHECK_THROWS_AS(fit_incremental(Dataset{}, Normalization{}), std::invalid_argument);
}

TEST_CASE("fit is deterministic") {
  auto ds = ranking_dataset();
  auto a = fit(ds, default_normalization(ds));
  auto b = fit(ds, default_normalization(ds));
  CHECK(a.measure.values() == b.measure.values());
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("preference rows steer the solution") {
  // force mu({2}) >= 0.3 even though the data never mentions criterion 2
  auto ds = toy(3, {{"a", {1.0, 0.0, 0.0}, 0.5}});
  FitOptions opt;
  LpConstraint pref;
  pref.coeffs.assign(6, 0.0);
  pref.coeffs[0b010 - 1] = 1.0;
  pref.rel = LpRelation::ge;
  pref.rhs = 0.3;
  opt.preference_rows.push_back(pref);
  auto res = fit(ds, Normalization{}, opt);
  CHECK(res.measure[0b010] == Catch::Approx(0.3).margin(1e-9));
  CHECK(res.objective <= 1e-9);

  pref.coeffs.assign(5, 0.0);
  FitOptions bad;
  bad.preference_rows.push_back(pref);
  CHECK_THROWS_AS(fit(ds, Normalization{}, bad), std::invalid_argument);
}
