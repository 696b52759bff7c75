#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hjchar/cli.hpp"
#include "hjchar/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hjchar;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hjchar");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hjchar_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream f(p);
  std::string line;
  std::getline(f, line);
  return line;
}

}  // namespace

TEST_CASE("solve writes one field per snapshot with the documented headers") {
  const fs::path dir = scratch("grid");
  const Run r = invoke({"solve", "--example", "ex3", "--grid", "5", "--quiet", "--threads", "1",
                        "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (int k = 0; k < 3; ++k) {
    const fs::path f = dir / ("field_char_" + std::to_string(k) + ".csv");
    REQUIRE(fs::exists(f));
    CHECK(first_line(f) == "x1,x2,t,value,converged,certificate_ok,trials_used,source");
  }
  CHECK(first_line(dir / "levelset_char.csv") == "t,seg_id,x1a,x2a,x1b,x2b");
  const json summary = json::parse(slurp(dir / "summary.json"));
  CHECK(summary.contains("manifest"));
  const json manifest = json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["example"] == "ex3");
  CHECK(manifest["mode"] == "lax");
  CHECK(manifest["times"].size() == 3);
}

TEST_CASE("re-running from the written manifest reproduces the CSVs") {
  const fs::path a = scratch("replay_a");
  const fs::path b = scratch("replay_b");
  REQUIRE(invoke({"solve", "--example", "ex2", "--sign", "-", "--grid", "6", "--T", "0.2",
                  "--quiet", "--out", a.string()})
              .code == 0);
  REQUIRE(invoke({"solve", "--manifest", (a / "manifest.json").string(), "--quiet", "--threads",
                  "3", "--out", b.string()})
              .code == 0);
  for (const char* name : {"field_char_0.csv", "field_char_4.csv", "levelset_char.csv"}) {
    CHECK(slurp(a / name) == slurp(b / name));
  }
}

TEST_CASE("high-dimensional point solve") {
  const fs::path dir = scratch("point");
  const Run r = invoke({"solve", "--example", "ex1", "--dim", "1024", "--point", "0.5,...,0.5",
                        "--T", "0.5", "--quiet", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const json sol = json::parse(r.out);
  CHECK(std::isfinite(sol["value"].get<double>()));
  CHECK(sol["v_star"].size() == 1024);
  CHECK(sol["t"] == 0.5);
  const json saved = json::parse(slurp(dir / "point.json"));
  CHECK(saved["manifest"]["dim"] == 1024);
}

TEST_CASE("usage and configuration errors exit non-zero") {
  const Run missing = invoke({"solve", "--grid", "5"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("UsageError") != std::string::npos);
  CHECK(invoke({"solve", "--example", "ex9"}).code == 2);
  CHECK(invoke({"solve", "--example", "ex2", "--sigma", "-1"}).code == 2);
  CHECK(invoke({"solve", "--example", "ex2", "--no-such-flag"}).code != 0);
  CHECK(invoke({"solve", "--example", "ex5", "--k", "3", "--dim", "2"}).code == 2);
  const Run c = invoke({"compare", "--example", "ex2", "--dim", "3", "--quiet", "--out",
                        scratch("cmp3").string()});
  CHECK(c.code == 2);
  CHECK(c.err.find("ConfigError") != std::string::npos);
}

TEST_CASE("compare writes LF fields and a report") {
  const fs::path dir = scratch("compare");
  const Run r = invoke({"compare", "--example", "ex2", "--grid", "11", "--T", "0.2", "--times",
                        "0.2", "--lf-dx", "0.05", "--quiet", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(first_line(dir / "field_lf_0.csv") ==
        "x1,x2,t,value,converged,certificate_ok,trials_used,source");
  CHECK(first_line(dir / "levelset_lf.csv") == "t,seg_id,x1a,x2a,x1b,x2b");
  const json rep = json::parse(slurp(dir / "compare_report.json"));
  REQUIRE(rep["snapshots"].size() == 1);
  CHECK(rep["snapshots"][0]["abs_diff"]["median"].get<double>() < 0.1);
  CHECK(rep["lf"]["cfl"].get<double>() <= 0.9 + 1e-12);
}

TEST_CASE("convergence tables end with the reference row") {
  const fs::path dir = scratch("conv");
  const fs::path manifest = dir.string() + ".json";
  std::ofstream(manifest) << R"({"example": "ex2", "convergence": {"x": [0.5, -0.4], "t": 0.2,
    "ref_ds": 0.01, "ref_sigma": 0.001, "table1_ds": 0.01, "table1_sigmas": [0.002, 0.004],
    "table2_sigma": 0.001, "table2_ds": [0.04, 0.02]}})";
  const Run r = invoke({"convergence", "--manifest", manifest.string(), "--quiet", "--out",
                        dir.string()});
  REQUIRE(r.code == 0);
  for (const char* name : {"table1_sigma.csv", "table2_ds.csv"}) {
    std::ifstream f(dir / name);
    std::string line, last;
    std::getline(f, line);
    CHECK(line == "ds,sigma,value,reference,error");
    int rows = 0;
    while (std::getline(f, line)) {
      last = line;
      ++rows;
    }
    CHECK(rows == 3);
    CHECK(last.substr(last.rfind(',') + 1) == "0");
  }
}

TEST_CASE("list-examples") {
  const Run r = invoke({"list-examples"});
  REQUIRE(r.code == 0);
  const json list = json::parse(r.out);
  CHECK(list.size() == 7);
}

TEST_CASE("manifest serialization round-trips") {
  const cli::RunManifest m =
      cli::resolve_manifest({{"example", "ex5"}, {"dim", 4}, {"k", 2}, {"T", 0.2}});
  CHECK(m.times.size() == 3);
  CHECK(m.masks.size() == 1);
  const json j = cli::to_json(m);
  CHECK(cli::to_json(cli::resolve_manifest(j)) == j);
  CHECK_THROWS_AS(cli::resolve_manifest({{"dim", 2}}), ConfigError);
}

TEST_CASE("point shorthand") {
  CHECK(cli::parse_point("1,2,3", 3) == Vec{1, 2, 3});
  CHECK(cli::parse_point("0.5,...,0.5", 4) == Vec{0.5, 0.5, 0.5, 0.5});
  CHECK(cli::parse_point("1,2,...,9", 5) == Vec{1, 2, 2, 2, 9});
  CHECK_THROWS_AS(cli::parse_point("1,2", 3), ConfigError);
  CHECK_THROWS_AS(cli::parse_point("1,x", 2), ConfigError);
}
