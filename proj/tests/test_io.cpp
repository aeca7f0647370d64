#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bhse/io.hpp"
#include "doctest.h"

using namespace bhse;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path work_dir() {
  const auto d = fs::temp_directory_path() / "bhse_test_io";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("numbers round-trip through their printed form") {
  for (double v : {0.0, 1.0 / 3.0, -2.5, 1e-300, 6.02e23, -0.1}) {
    const std::string s = format_number(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("csv writers are deterministic and carry all samples") {
  const auto dir = work_dir();
  const auto u = GridFunction::sampled(0.0, 0.25, 9, Domain::half_line,
                                       [](double x) { return cplx(x, -x); });
  const auto p1 = (dir / "u1.csv").string();
  const auto p2 = (dir / "u2.csv").string();
  write_csv(p1, u);
  write_csv(p2, u);
  const std::string body = slurp(p1);
  CHECK(body == slurp(p2));
  CHECK(body.substr(0, 8) == "x,re,im\n");
  CHECK(std::count(body.begin(), body.end(), '\n') == 10);  // header + 9 rows

  const auto g = TimeSignal::sampled(0.0, 0.1, 5,
                                     [](double t) { return cplx(t * t); });
  const auto pg = (dir / "g.csv").string();
  write_csv(pg, g);
  const std::string gb = slurp(pg);
  CHECK(gb.substr(0, 8) == "t,re,im\n");
  CHECK(std::count(gb.begin(), gb.end(), '\n') == 6);

  SpaceTimeField f;
  f.dt = 0.5;
  f.slices = {u, u};
  const auto pf = (dir / "f.csv").string();
  write_csv(pf, f);
  const std::string fb = slurp(pf);
  CHECK(fb.substr(0, 10) == "t,x,re,im\n");
  CHECK(std::count(fb.begin(), fb.end(), '\n') == 19);  // header + 2*9 rows
}

TEST_CASE("json headers expose the grid metadata") {
  const auto u = GridFunction::sampled(-1.0, 0.5, 5, Domain::whole_line,
                                       [](double) { return cplx{}; });
  const auto h = header_json(u);
  CHECK(h.at("dx") == 0.5);
  CHECK(h.at("x_min") == -1.0);
  CHECK(h.at("domain_tag") == "whole_line");
  CHECK(h.at("n") == 5);

  const auto g = TimeSignal::zero(0.0, 0.25, 3, 1.5);
  const auto hg = header_json(g);
  CHECK(hg.at("dt") == 0.25);
  CHECK(hg.at("reg_exponent") == 1.5);
}

TEST_CASE("json files round-trip and repeat byte-identically") {
  const auto dir = work_dir();
  const json j{{"alpha", 0.1}, {"items", {1, 2, 3}}, {"name", "run"}};
  const auto p1 = (dir / "r1.json").string();
  const auto p2 = (dir / "r2.json").string();
  write_json(p1, j);
  write_json(p2, j);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(read_json(p1) == j);
}

TEST_CASE("malformed config reports the parse location") {
  const auto dir = work_dir();
  const auto bad = (dir / "bad.json").string();
  std::ofstream(bad) << "{\"a\": 1,, }";
  try {
    read_json(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad.json") != std::string::npos);
    CHECK(msg.find("parse error") != std::string::npos);
  }
  CHECK_THROWS_AS(read_json((dir / "missing.json").string()), ConfigError);
}
