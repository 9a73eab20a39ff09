#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sievelab/cli.hpp"
#include "sievelab/serialize.hpp"

using namespace sievelab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sievelab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json without_timing(const std::string& text) {
  Json j = Json::parse(text);
  j.erase("elapsed_seconds");
  return j;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("mk poly emits a certificate") {
  const Run r = run({"mk", "poly", "--k", "5", "--degree", "3"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["result"]["lower_bound"].get<double>() > 2.0);
  CHECK(j["result"]["recertified"] == true);
  CHECK(j["version"] == "sievelab 0.1.0");
  CHECK(j["params"]["k"] == "5");
  CHECK(j.contains("elapsed_seconds"));
  CHECK(j["seed"] == 1);
}

TEST_CASE("tuple verify refutes {0,2,4}") {
  const std::string path = "cli_test_tuple.txt";
  {
    std::ofstream f(path);
    f << "0\n2\n4\n";
  }
  const Run r = run({"tuple", "verify", "--file", path});
  CHECK(r.code == 2);
  CHECK(Json::parse(r.out)["result"]["refuting_prime"] == 3);
  std::remove(path.c_str());

  const Run ok = run({"tuple", "verify", "--offsets", "0,2,6"});
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["result"]["admissible"] == true);
}

TEST_CASE("largegap primorial") {
  const Run r = run({"largegap", "primorial", "--n", "7"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["result"]["y"] == "210");
  CHECK(j["result"]["length"] == 6);
  CHECK(j["result"]["verified"] == true);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"tuple"}).code == 64);
  const Run bad_sub = run({"tuple", "shuffle"});
  CHECK(bad_sub.code == 64);
  CHECK(bad_sub.err.find("usage") != std::string::npos);
  CHECK(run({"sieve", "--hi", "banana"}).code == 2);
  CHECK(run({"sieve"}).code == 2);
  CHECK(run({"largegap", "primorial", "--n", "2"}).code == 2);
  CHECK(run({"mk", "chain", "--k", "3", "--degree", "1", "--offsets", "0,2,4"}).code == 2);
  CHECK(run({"--version"}).out == "sievelab 0.1.0\n");
}

TEST_CASE("identical inputs give identical reports") {
  const std::vector<std::string> args{"--seed", "9", "stats", "pigeonhole", "--X", "1000", "--H", "20", "--samples", "5000"};
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(without_timing(a.out).dump() == without_timing(b.out).dump());
  CHECK(Json::parse(a.out)["config"]["seed"] == 9);
  CHECK(Json::parse(a.out)["result"]["detail"]["seed"] == 9);
}

TEST_CASE("config file via environment, flags override it") {
  const std::string path = "cli_test_config.txt";
  {
    std::ofstream f(path);
    f << "# test config\nseed = 123\nbasis_cap=10\ntolerance.gpy.rearranged=1e-8\n";
  }
  setenv(kConfigEnv, path.c_str(), 1);
  const Run r = run({"mk", "poly", "--k", "3", "--degree", "2"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["config"]["seed"] == 123);
  CHECK(j["config"]["basis_cap"] == 10);
  CHECK(j["config"]["tolerances"]["gpy.rearranged"] == 1e-8);
  CHECK(run({"mk", "poly", "--k", "3", "--degree", "6"}).code == 2);  // 16 basis functions > cap 10
  CHECK(Json::parse(run({"--seed", "5", "mk", "poly", "--k", "2", "--degree", "0"}).out)["seed"] == 5);
  unsetenv(kConfigEnv);
  std::remove(path.c_str());

  std::istringstream bad("colour=blue\n");
  CHECK_THROWS(load_config(bad));
}

TEST_CASE("CSV and JSON carry the same values") {
  const std::vector<std::string> args{"stats", "pnt", "--x", "1000", "--x", "1e5"};
  const Run js = run(args);
  auto csv_args = args;
  csv_args.insert(csv_args.begin(), {"--format", "csv"});
  const Run cs = run(csv_args);
  REQUIRE(js.code == 0);
  REQUIRE(cs.code == 0);
  const Json rows = Json::parse(js.out)["result"]["rows"];
  std::istringstream in(cs.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,statistic,value,reference,deviation");
  for (const auto& row : rows) {
    REQUIRE(std::getline(in, line));
    const auto cells = split(line);
    REQUIRE(cells.size() == 5);
    CHECK(cells[0] == row["x"].dump());
    CHECK(cells[1] == row["statistic"].get<std::string>());
    CHECK(cells[2] == row["value"].dump());
    CHECK(cells[3] == row["reference"].dump());
    CHECK(cells[4] == row["deviation"].dump());
  }

  const Run jl = run({"largegap", "scan", "--X", "1000"});
  const Run cl = run({"--format", "csv", "largegap", "scan", "--X", "1000"});
  const Json j = Json::parse(jl.out);
  std::istringstream lines(cl.out);
  std::getline(lines, line);
  CHECK(line == "path,value");
  int checked = 0;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    const std::string path = line.substr(0, comma), value = line.substr(comma + 1);
    if (path == "/elapsed_seconds" || path == "/config/output_format") continue;
    const Json& v = j.at(Json::json_pointer(path));
    CHECK(value == (v.is_string() ? v.get<std::string>() : v.dump()));
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("every subcommand runs on a small input") {
  const std::vector<std::vector<std::string>> cases = {
      {"sieve", "--lo", "10", "--hi", "100", "--list"},
      {"gaps", "--lo", "2", "--hi", "1000"},
      {"tuple", "search", "--k", "5", "--window", "16"},
      {"tuple", "prime-offset", "--k", "10"},
      {"stats", "mertens", "--n", "1000"},
      {"stats", "hardy-ramanujan", "--n", "10000", "--a", "2"},
      {"stats", "erdos-kac", "--x", "10000"},
      {"gpy", "sums", "--x", "2000", "--b", "0.2"},
      {"gpy", "error", "--x", "2000", "--b", "0.2", "--i", "2"},
      {"gpy", "levels", "--x", "5000", "--theta", "0.3", "--weighting", "lambda"},
      {"mk", "gbound", "--k", "200"},
      {"mk", "gbound", "--k", "200", "--A", "2", "--T", "3", "--variant", "as-printed"},
      {"mk", "chain", "--k", "5", "--degree", "3", "--theta", "1"},
      {"mk", "montecarlo", "--k", "2", "--degree", "1", "--samples", "2000"},
      {"largegap", "cover", "--n", "20"},
  };
  for (const auto& c : cases) {
    const Run r = run(c);
    INFO(c[0] << " " << c[1]);
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out).is_object());
  }
}
