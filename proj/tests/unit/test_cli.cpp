#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = randmult::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json results(const Run& r) { return nlohmann::json::parse(r.out)["results"]; }

}  // namespace

TEST_CASE("count") {
  const auto r = run({"count", "--model", "steinhaus", "--k", "2", "--x", "2", "--sigma", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(results(r)["value"] == 6);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "count");
  CHECK(doc["params"]["k"] == 2);
  CHECK(doc["manifest"]["seed"] == 20160815ULL);
  CHECK(doc["manifest"].contains("version"));
  CHECK(doc["manifest"].contains("wall_seconds"));

  CHECK(results(run({"count", "--model", "rademacher", "--k", "2", "--x", "3"}))["value"] == 21);
  const auto c = results(run({"count", "--model", "char", "--k", "1", "--x", "3", "--q", "11"}));
  CHECK(c["congruence_count"] == 3);
  CHECK(c["avg_nonprincipal"] == "7/3");
}

TEST_CASE("constants") {
  CHECK(results(run({"constants", "--name", "beta", "--k", "1"}))["value"] == "1");
  const auto beta2 = results(run({"constants", "--name", "beta", "--k", "2"}));
  CHECK(beta2["diagnostics"]["birkhoff_route"] == beta2["diagnostics"]["direct_route"]);
  const auto a = results(run({"constants", "--name", "a", "--k", "2"}));
  CHECK(std::abs(a["value"].get<double>() - 0.6079271018540267) < 1e-8);
  const auto csv = run({"constants", "--name", "gamma", "--k", "2", "--format", "csv"});
  CHECK(csv.out.rfind("name,value,value_float,diagnostics.polytope", 0) == 0);
}

TEST_CASE("bound") {
  const auto b = results(run({"bound"}));
  CHECK(std::abs(b["f_min"].get<double>() - 0.8164965809) < 1e-8);
  CHECK(std::abs(b["amplitude_bound"].get<double>() - 0.903) < 1e-3);
}

TEST_CASE("rmt, simulate and conjecture") {
  const auto e = results(run({"rmt", "--mode", "exact", "--k", "2", "--L", "1", "--z", "2"}));
  CHECK(e["coefficients"] == nlohmann::json::array({1, 4, 2}));
  const auto table = run({"rmt", "--mode", "ratio", "--k", "2", "--L-max", "3", "--format", "csv"});
  CHECK(table.out == std::string("L,exact,asymptotic_rhs,ratio\n") + table.out.substr(table.out.find('\n') + 1));
  CHECK(std::count(table.out.begin(), table.out.end(), '\n') == 4);
  const auto s = results(run({"simulate", "--x", "100", "--two-k", "2", "--trials", "500"}));
  CHECK(s["trials"] == 500);
  const auto h = run({"simulate", "--helson", "--x-list", "100,200", "--trials", "100", "--format", "csv"});
  CHECK(h.out.rfind("x,mean_abs,std_error,trials,seed,ratio_to_sqrt_x,conjectured_ratio,cs_upper_bound\n", 0) == 0);
  const auto c = results(run({"conjecture"}));
  CHECK(c["Fk_via_agm"].get<double>() == doctest::Approx(c["Fk_series"].get<double>()).epsilon(1e-12));
}

TEST_CASE("output is reproducible and round-trips") {
  const std::vector<std::string> args = {"simulate", "--x", "300", "--trials", "200", "--seed", "99"};
  const auto first = run(args);
  const auto second = run(args);
  CHECK(results(first) == results(second));
  for (const auto& r : {first, run({"constants", "--name", "beta", "--k", "3"}), run({"bound"})}) {
    const auto parsed = nlohmann::ordered_json::parse(r.out);
    CHECK(parsed.dump(2) + "\n" == r.out);
  }
}

TEST_CASE("output file") {
  const std::string path = "test_cli_output.json";
  const auto r = run({"bound", "--output", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream file(path);
  std::stringstream buf;
  buf << file.rdbuf();
  CHECK(nlohmann::json::parse(buf.str())["command"] == "bound");
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"count", "--model", "nope", "--k", "1", "--x", "1"}).code == 2);
  CHECK(run({"count", "--model", "steinhaus", "--k", "0", "--x", "5"}).code == 2);
  CHECK(run({"count", "--model", "steinhaus", "--k", "6", "--x", "1e6"}).code == 3);
  CHECK(run({"count", "--model", "char", "--k", "1", "--x", "3", "--q", "15"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  const auto v = run({"verify", "--only", "3,13"});
  CHECK(v.code == 0);
  CHECK(v.out.rfind("PASS 3", 0) == 0);
  CHECK(run({"verify", "--only", "4b"}).code == 1);
  CHECK(run({"verify", "--only", "99"}).code == 2);
}
