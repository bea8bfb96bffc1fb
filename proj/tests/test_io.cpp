#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>

#include "fmtk/io.hpp"
#include "fmtk/random.hpp"

using namespace fmtk;

TEST_CASE("measure json roundtrip is lossless") {
  for (int n : {2, 4, 6}) {
    auto mu = random_measure(n, derived_seed(80, n));
    std::string name_out;
    auto back = parse_measure(measure_to_json(mu, "demo"), "<mem>", default_tolerance, &name_out);
    CHECK(back.values() == mu.values());
    CHECK(name_out == "demo");
  }
}

TEST_CASE("json shape") {
  auto mu = min_measure(2);
  auto text = measure_to_json(mu);
  CHECK(text.find("\"n\": 2") != std::string::npos);
  CHECK(text.find("\"values\": [") != std::string::npos);
  CHECK(text.find("\"name\"") == std::string::npos);
  CHECK(text.back() == '\n');

  auto labeled = measure_to_json(mu, "edge", LabelMode::canonical);
  CHECK(labeled.find("\"name\": \"edge\"") != std::string::npos);
  CHECK(labeled.find("\"{1,2}\"") != std::string::npos);
  auto papery = measure_to_json(mu, "", LabelMode::paper);
  CHECK(papery.find("\"c(1, 2)\"") != std::string::npos);
}

TEST_CASE("values order is ascending bitmask") {
  SetFunction sf(Universe(2), {0.0, 0.25, 0.5, 1.0});
  auto text = measure_to_json(sf);
  auto p1 = text.find("0.25");
  auto p2 = text.find("0.5");
  REQUIRE(p1 != std::string::npos);
  REQUIRE(p2 != std::string::npos);
  CHECK(p1 < p2);
}

TEST_CASE("parser rejects malformed measure documents") {
  CHECK_THROWS_AS(parse_set_function("not json"), parse_error);
  CHECK_THROWS_AS(parse_set_function("[1,2]"), parse_error);
  CHECK_THROWS_AS(parse_set_function("{\"values\": [0,1]}"), parse_error);
  CHECK_THROWS_AS(parse_set_function("{\"n\": 1.5, \"values\": []}"), parse_error);
  CHECK_THROWS_AS(parse_set_function("{\"n\": 1, \"values\": [0, 1]}"), parse_error);
  CHECK_THROWS_AS(parse_set_function("{\"n\": 2, \"values\": [0, 0.5, 1]}"), parse_error);
  CHECK_THROWS_AS(parse_set_function("{\"n\": 2, \"values\": [0, \"x\", 0.5, 1]}"), parse_error);
  CHECK_THROWS_AS(parse_measure("{\"n\": 2, \"values\": [0, 0.9, 0.1, 0.5]}"), validation_error);
  CHECK_NOTHROW(parse_set_function("{\"n\": 2, \"values\": [0, 0.9, 0.1, 0.5]}"));
}

TEST_CASE("parse errors carry the origin and line") {
  const std::string broken = "{\n  \"n\": 2,\n  \"values\": [0, oops]\n}";
  try {
    parse_set_function(broken, "bad.json");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad.json:3") == 0u);
  }
}

TEST_CASE("dataset parsing") {
  const std::string csv =
      "id,c1,c2,c3,desired\r\n"
      "a,0.1,0.2,0.3,0.25\n"
      "\n"
      "\"b,b\",0.4,0.5,0.6,0.55\n";
  auto ds = parse_dataset(csv, "demo.csv");
  CHECK(ds.n == 3);
  REQUIRE(ds.samples.size() == 2u);
  CHECK(ds.samples[0].id == "a");
  CHECK(ds.samples[1].id == "b,b");
  CHECK(ds.samples[1].scores == std::vector<double>{0.4, 0.5, 0.6});
  CHECK(ds.samples[1].desired == 0.55);
}

TEST_CASE("dataset errors name the offending field") {
  CHECK_THROWS_AS(parse_dataset(""), parse_error);
  CHECK_THROWS_AS(parse_dataset("id,c1,desired\n"), parse_error);
  CHECK_THROWS_AS(parse_dataset("id,desired\n"), parse_error);
  CHECK_THROWS_AS(parse_dataset("id,c1,desired\na,0.1\n"), parse_error);
  CHECK_THROWS_AS(parse_dataset("id,c1,desired\na,\"unterminated\n"), parse_error);

  try {
    parse_dataset("id,c1,desired\na,zebra,0.5\n", "t.csv");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("t.csv:2") == 0u);
    CHECK(msg.find("field 2") != std::string::npos);
    CHECK(msg.find("zebra") != std::string::npos);
  }
}

TEST_CASE("quoted csv fields unescape doubled quotes") {
  auto fields = detail::split_csv("\"he said \"\"hi\"\"\",2", "x", 1);
  REQUIRE(fields.size() == 2u);
  CHECK(fields[0] == "he said \"hi\"");
  CHECK(fields[1] == "2");
}

TEST_CASE("file io round trips through disk") {
  const std::string path = "io_test_tmp.json";
  auto mu = random_measure(3, 321);
  write_text_file(path, measure_to_json(mu, "disk"));
  std::string name;
  auto back = load_measure(path, default_tolerance, &name);
  CHECK(back.values() == mu.values());
  CHECK(name == "disk");
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_measure("does_not_exist.json"), parse_error);
  CHECK_THROWS_AS(load_dataset("does_not_exist.csv"), parse_error);
  CHECK_THROWS_AS(write_text_file("no_such_dir/x.txt", "y"), std::runtime_error);
}
