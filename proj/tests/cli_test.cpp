#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "eigenflat/builders.hpp"
#include "eigenflat/io.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "eigenflat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = eigenflat::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) out.push_back(l);
  return out;
}

const double kPi = std::acos(-1.0);

}  // namespace

TEST_CASE("invariants") {
  auto r = run({"invariants", "5", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["chi"] == "1/15");
  CHECK(j["volume"] == "4/15*pi");
  CHECK(j["sum_v"] == "4");
  CHECK(j["prototype_count"] == 1);
  CHECK(j["h2"] == "-2/5");

  auto range = run({"invariants", "4..400"});
  CHECK(range.code == 0);
  auto rows = lines(range.out);
  CHECK(rows.size() == 1 + 180);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].substr(rows[k].rfind(',') + 1) == "true");

  auto sq = run({"invariants", "9"});
  CHECK(sq.code == 2);
  CHECK(sq.err.find("square") != std::string::npos);
  CHECK(run({"invariants", "banana"}).code == 2);
}

TEST_CASE("prototypes") {
  auto r = run({"prototypes", "8"});
  REQUIRE(r.code == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].rfind("8:1,-2,-1,0,", 0) == 0);
  CHECK(rows[2].rfind("8:1,0,-2,0,", 0) == 0);

  auto v = run({"prototypes", "8", "--verify", "--format", "json"});
  REQUIRE(v.code == 0);
  auto j = json::parse(v.out);
  REQUIRE(j["identities"].size() == 5);
  for (const auto& i : j["identities"]) CHECK(i["pass"] == true);
  CHECK(j["laws"]["pass"] == true);

  auto five = json::parse(run({"prototypes", "5", "--verify", "--format", "json"}).out);
  const auto& last = five["identities"][4];
  CHECK(last["lhs"] == "2");
  CHECK(last["rhs"] == "2");
}

TEST_CASE("count") {
  auto r = run({"count", "--builtin", "three-cyl", "--prototype", "8:1,0,-2,0", "--y2", "i", "--y3", "i", "--L",
                "10", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  CHECK(std::stod(j["rows"][0]["c_cyl_target"].get<std::string>()) == doctest::Approx(15 / kPi));
  CHECK(j["rows"][0]["n_cylinders"].get<int>() > 0);

  auto dec = run({"count", "--builtin", "decagon", "--L-grid", "4,6,8"});
  REQUIRE(dec.code == 0);
  auto rows = lines(dec.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == eigenflat::count_csv_header());
  for (std::size_t k = 1; k < rows.size(); ++k) {
    std::string tail = rows[k];
    for (int c = 0; c < 8; ++c) tail = tail.substr(tail.find(',') + 1);
    CHECK(std::stod(tail.substr(0, tail.find(','))) == doctest::Approx(75 / (2 * kPi)));
  }
  CHECK(dec.err.find("decagon") != std::string::npos);

  const std::string path = "cli_test_surface.json";
  {
    std::ofstream f(path);
    f << eigenflat::surface_to_json(eigenflat::build_decagon()).dump();
  }
  auto file = run({"count", "--file", path, "--L", "0.001", "--format", "json"});
  REQUIRE(file.code == 0);
  auto fj = json::parse(file.out);
  CHECK(fj["rows"][0]["n_cylinders"] == 0);
  CHECK(fj["rows"][0]["n_sc_mult1"] == 0);
  CHECK(fj["rows"][0]["n_sc_pairs_mult2"] == 0);
  std::remove(path.c_str());

  CHECK(run({"count", "--file", "no-such-file.json", "--L", "1"}).code == 2);
  CHECK(run({"count", "--builtin", "decagon", "--L", "-1"}).code == 2);
  CHECK(run({"count", "--builtin", "decagon", "--L-grid", "8,4"}).code == 2);
  CHECK(run({"count", "--builtin", "octagon", "--L", "1"}).code == 2);
  CHECK(run({"count", "--builtin", "decagon", "--L", "30", "--budget", "1000"}).code == 3);
}

TEST_CASE("serial and parallel output match") {
  std::vector<std::string> base = {"count", "--builtin", "unfolding", "--a", "1/2+1*sqrt(2)", "--b",
                                   "1/2+1*sqrt(2)", "--t", "1/2", "--L-grid", "6,10"};
  auto one = base, eight = base;
  one.insert(one.end(), {"--workers", "1"});
  eight.insert(eight.end(), {"--workers", "8"});
  auto a = run(one), b = run(eight);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("billiard") {
  auto r = run({"billiard", "--a", "1/2+1*sqrt(2)", "--b", "1/2+1*sqrt(2)", "--t", "1/2", "--L-grid", "5,8",
                "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["rows"].size() == 2);
  CHECK(std::stod(j["rows"][0]["table"]["c_cyl_target"].get<std::string>()) == doctest::Approx(15 / (2 * kPi)));

  auto g = run({"billiard", "--a", "1/2+1/2*sqrt(5)", "--b", "1/2+1/2*sqrt(5)", "--t", "1/2-1/10*sqrt(5)",
                "--L", "5", "--format", "json"});
  REQUIRE(g.code == 0);
  auto gj = json::parse(g.out);
  CHECK(std::stod(gj["rows"][0]["table"]["c_cyl_target"].get<std::string>()) == doctest::Approx(75 / (16 * kPi)));
  CHECK(!g.err.empty());

  CHECK(run({"billiard", "--a", "1/2+1*sqrt(2)", "--b", "1/2+1*sqrt(2)", "--t", "0", "--L", "5"}).code == 2);
  CHECK(run({"billiard", "--a", "1/2+1*sqrt(2)", "--b", "1/2+1*sqrt(2)", "--t", "-1/2", "--L", "5"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"invariants", "5", "--format", "xml"}).code == 2);
  CHECK(run({"count", "--builtin", "decagon"}).code == 2);
  CHECK(run({"count", "--builtin", "decagon", "--L", "5", "--workers", "0"}).code == 2);
}
