// End-to-end checks of the command line binary via popen. FMTK_CLI_PATH and
// FMTK_DATA_DIR are injected by the build.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "fmtk/fmtk.hpp"

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FMTK_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::path("cli_scratch");
  std::filesystem::create_directories(dir);
  return dir;
}

std::string table1() { return (std::filesystem::path(FMTK_DATA_DIR) / "table1.csv").string(); }

std::string write_measure(const std::string& stem, const fmtk::FuzzyMeasure& mu) {
  const auto path = scratch_dir() / (stem + ".json");
  fmtk::write_text_file(path.string(), fmtk::measure_to_json(mu));
  return path.string();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("cli validate accepts a proper measure") {
  const auto path = write_measure("ok", fmtk::uniform_additive(3));
  const auto r = run_cli("validate " + path);
  CHECK(r.status == 0);
  CHECK(contains(r.out, "valid"));
}

TEST_CASE("cli validate rejects a broken table with exit 1") {
  const auto path = (scratch_dir() / "broken.json").string();
  fmtk::SetFunction sf(fmtk::Universe(2), {0.0, 0.9, 0.1, 1.0});
  sf[0b01] = 0.9;
  sf[0b11] = 0.5;
  fmtk::write_text_file(path, fmtk::measure_to_json(sf));
  const auto r = run_cli("validate " + path);
  CHECK(r.status == 1);
  CHECK(contains(r.out, "deficit"));
  CHECK(contains(r.out, "boundary"));
}

TEST_CASE("cli rejects unknown flags with exit 2") {
  const auto r = run_cli("validate --definitely-not-a-flag x.json");
  CHECK(r.status == 2);
  CHECK(contains(r.out, "usage error"));
}

TEST_CASE("cli random requires a seed") {
  const auto r = run_cli("random --n 3");
  CHECK(r.status == 2);
}

TEST_CASE("cli random emits a valid measure deterministically") {
  const auto a = run_cli("random --n 3 --seed 7");
  const auto b = run_cli("random --n 3 --seed 7");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const fmtk::SetFunction sf = fmtk::parse_set_function(a.out, "random");
  CHECK(fmtk::validate(sf, 0.0).ok());
  const auto other = run_cli("random --n 3 --seed 8");
  CHECK(other.out != a.out);
}

TEST_CASE("cli random batch writes a manifest") {
  const auto dir = (scratch_dir() / "batch").string();
  const auto r = run_cli("random --n 3 --seed 5 --count 4 --out-dir " + dir);
  REQUIRE(r.status == 0);
  CHECK(std::filesystem::exists(dir + "/manifest.json"));
  CHECK(std::filesystem::exists(dir + "/measure_0003.json"));
  const auto mu = fmtk::load_measure(dir + "/measure_0002.json");
  CHECK(mu.n() == 3);
}

TEST_CASE("cli integrate reports the three integrals") {
  const auto path = write_measure("uniform4", fmtk::uniform_additive(4));
  const auto r = run_cli("integrate " + path + " --x 0.5,0.5,0.5,0.5");
  REQUIRE(r.status == 0);
  CHECK(contains(r.out, "choquet: 0.5"));
  CHECK(contains(r.out, "sugeno: 0.5"));
  CHECK(contains(r.out, "pan: 0.5"));
  const auto only = run_cli("integrate " + path + " --x 0.5,0.5,0.5,0.5 --integral sugeno");
  CHECK(!contains(only.out, "choquet"));
  CHECK(contains(only.out, "sugeno: 0.5"));
}

TEST_CASE("cli integrate arity mismatch is a domain error") {
  const auto path = write_measure("uniform3", fmtk::uniform_additive(3));
  const auto r = run_cli("integrate " + path + " --x 0.5,0.5");
  CHECK(r.status == 1);
  CHECK(contains(r.out, "error"));
}

TEST_CASE("cli fit reproduces the ranking data") {
  const auto out = (scratch_dir() / "fitted.json").string();
  const auto r = run_cli("fit " + table1() + " -o " + out);
  REQUIRE(r.status == 0);
  CHECK(contains(r.out, "normalization: offset 11 scale 7"));
  CHECK(contains(r.out, "objective:"));
  CHECK(contains(r.out, "alt x1:"));
  const auto mu = fmtk::load_measure(out);
  CHECK(mu.n() == 5);
  CHECK_THAT(mu[0b10001], Catch::Matchers::WithinAbs(4.0 / 7.0, 1e-6));
}

TEST_CASE("cli fit incremental writes frames and a manifest") {
  const auto dir = (scratch_dir() / "frames").string();
  const auto r = run_cli("fit " + table1() + " --incremental --out-dir " + dir);
  REQUIRE(r.status == 0);
  CHECK(contains(r.out, "round 7:"));
  CHECK(std::filesystem::exists(dir + "/manifest.json"));
  CHECK(std::filesystem::exists(dir + "/round_1.json"));
  CHECK(std::filesystem::exists(dir + "/round_7.svg"));
  const auto round1 = fmtk::load_measure(dir + "/round_1.json");
  CHECK_THAT(round1[0b10001], Catch::Matchers::WithinAbs(4.0 / 7.0, 1e-3));
}

TEST_CASE("cli index emits one labelled row per subset") {
  const auto path = write_measure("idx", fmtk::uniform_additive(3));
  const auto r = run_cli("index " + path + " --kind mobius");
  REQUIRE(r.status == 0);
  CHECK(contains(r.out, "subset,mobius"));
  CHECK(contains(r.out, "\"{1,2,3}\""));
  const auto paper = run_cli("index " + path + " --kind mu --labels paper");
  CHECK(contains(paper.out, "\"c(1, 2, 3)\""));
}

TEST_CASE("cli render produces svg and dot") {
  const auto path = write_measure("render", fmtk::uniform_additive(3));
  const auto svg = run_cli("render " + path);
  REQUIRE(svg.status == 0);
  CHECK(contains(svg.out, "<svg"));
  const auto dot = run_cli("render " + path + " --format dot --style height");
  REQUIRE(dot.status == 0);
  CHECK(contains(dot.out, "digraph lattice"));
  const auto file = (scratch_dir() / "lattice.svg").string();
  const auto saved = run_cli("render " + path + " --overlay mobius -o " + file);
  REQUIRE(saved.status == 0);
  CHECK(std::filesystem::file_size(file) > 500);
}

TEST_CASE("cli compare-integrals reports medians and fractions") {
  const auto r = run_cli("compare-integrals --x 0.2,0.5,0.75,1 --seed 5 --samples 50");
  REQUIRE(r.status == 0);
  CHECK(contains(r.out, "samples: 50"));
  CHECK(contains(r.out, "median_choquet:"));
  CHECK(contains(r.out, "fraction_sugeno_ge_pan: 1"));
}

TEST_CASE("cli profile-alternatives reports per-alternative medians") {
  const auto csv = (scratch_dir() / "profile.csv").string();
  const auto r = run_cli("profile-alternatives " + table1() + " --seed 3 --samples 20 -o " + csv);
  REQUIRE(r.status == 0);
  CHECK(contains(r.out, "normalization: offset 11 scale 7"));
  CHECK(contains(r.out, "median x1:"));
  CHECK(contains(r.out, "median x7:"));
  CHECK(std::filesystem::exists(csv));
}

TEST_CASE("cli cluster prints a leaf order and merge table") {
  const auto path = write_measure("clust", fmtk::uniform_additive(3));
  const auto r = run_cli("cluster " + path + " --features mu,mobius");
  REQUIRE(r.status == 0);
  CHECK(contains(r.out, "step,left,right,height,size"));
  CHECK(contains(r.out, "leaf_order:"));
  const auto svg = (scratch_dir() / "heat.svg").string();
  const auto heat = run_cli("cluster " + path + " --svg " + svg);
  REQUIRE(heat.status == 0);
  CHECK(std::filesystem::exists(svg));
}

TEST_CASE("cli summarize and props split the report") {
  const auto path = write_measure("sum", fmtk::uniform_additive(3));
  const auto full = run_cli("summarize " + path);
  REQUIRE(full.status == 0);
  CHECK(contains(full.out, "entropy:"));
  CHECK(contains(full.out, "orness: 0.5"));
  CHECK(contains(full.out, "additive: yes"));
  const auto props = run_cli("props " + path);
  REQUIRE(props.status == 0);
  CHECK(!contains(props.out, "entropy:"));
  CHECK(contains(props.out, "additivity_order: 1"));
  CHECK(contains(props.out, "symmetry_p: 1"));
}

TEST_CASE("cli full precision flag widens output") {
  const auto path = write_measure("prec", fmtk::uniform_additive(3));
  const auto r = run_cli("integrate " + path + " --x 0.1,0.1,0.1 --full-precision");
  REQUIRE(r.status == 0);
  CHECK(contains(r.out, "choquet: 0.10000000000000"));
}
