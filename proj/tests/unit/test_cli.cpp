#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "records.hpp"

namespace fs = std::filesystem;
using modlab::cli::run;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("modlab_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string payload(const fs::path& csv) {
  std::ifstream is(csv);
  std::string line;
  std::string body;
  while (std::getline(is, line)) {
    if (!line.empty() && line.front() != '#') body += line + '\n';
  }
  return body;
}

}  // namespace

TEST_CASE("modulus of heaviside") {
  const auto r = invoke({"modulus", "--fn", "heaviside", "--k", "1", "--q", "1", "--delta", "0.1"});
  CHECK(r.code == modlab::cli::kExitOk);
  CHECK(r.out.find("total") != std::string::npos);
  CHECK(r.out.find("0.0998") != std::string::npos);
}

TEST_CASE("rates upsilon") {
  const auto r = invoke({"rates", "upsilon", "--k", "2", "--q", "1", "--p", "inf", "--delta", "0.1"});
  CHECK(r.code == modlab::cli::kExitOk);
  CHECK(r.out.find("0.01") != std::string::npos);
}

TEST_CASE("verify suite exit codes") {
  const auto r = invoke({"verify", "--suite", "kernels"});
  CHECK(r.code == modlab::cli::kExitOk);
  CHECK(invoke({"verify", "--suite", "nonsense"}).code == modlab::cli::kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(invoke({"modulus", "--fn", "no_such_entry"}).code == modlab::cli::kExitUsage);
  CHECK(invoke({"modulus", "--fn", "heaviside", "--param", "bogus=1"}).code ==
        modlab::cli::kExitUsage);
  CHECK(invoke({"modulus", "--fn", "heaviside", "--n", "4"}).code == modlab::cli::kExitUsage);
  CHECK(invoke({"modulus", "--fn", "heaviside", "--q", "0.5"}).code == modlab::cli::kExitUsage);
  CHECK(invoke({"modulus", "--fn", "heaviside", "--plot-data"}).code == modlab::cli::kExitUsage);
  CHECK(invoke({}).code == modlab::cli::kExitUsage);
}

TEST_CASE("numerical errors") {
  CHECK(invoke({"modulus", "--fn", "heaviside", "--delta", "0.9"}).code ==
        modlab::cli::kExitNumerical);
}

TEST_CASE("help exits cleanly") {
  CHECK(invoke({"--help"}).code == modlab::cli::kExitOk);
}

TEST_CASE("sweep payload is deterministic") {
  const std::vector<std::string> base = {"rates", "sweep", "--fn", "heaviside", "--k", "1",
                                         "--q", "1", "--delta", "0.125,0.0625,0.03125"};
  std::string first;
  for (int i = 0; i < 2; ++i) {
    const fs::path dir = scratch("sweep" + std::to_string(i));
    auto args = base;
    args.insert(args.end(), {"--out", dir.string()});
    REQUIRE(invoke(args).code == modlab::cli::kExitOk);
    const std::string body = payload(dir / "rates_sweep.csv");
    CHECK(body.rfind("abscissa,value,component,config_hash", 0) == 0);
    if (i == 0) {
      first = body;
    } else {
      CHECK(body == first);
    }
    fs::remove_all(dir);
  }
}

TEST_CASE("json record and plot data") {
  const fs::path dir = scratch("json");
  const auto r = invoke({"modulus", "--fn", "truncated_power", "--k", "2", "--q", "1", "--delta",
                         "0.1,0.05", "--out", dir.string(), "--format", "json", "--plot-data"});
  REQUIRE(r.code == modlab::cli::kExitOk);
  std::ifstream is(dir / "modulus.json");
  const nlohmann::json j = nlohmann::json::parse(is);
  CHECK(j["command"] == "modulus");
  CHECK(j["config_hash"].get<std::string>().size() == 16);
  CHECK(j["rows"].size() == 8);
  for (const char* c : {"main", "forward", "backward", "total"}) {
    CHECK(fs::exists(dir / (std::string("modulus_") + c + ".dat")));
  }
  fs::remove_all(dir);
}

TEST_CASE("fit reads a sweep back") {
  const fs::path dir = scratch("fit");
  REQUIRE(invoke({"rates", "sweep", "--fn", "heaviside", "--k", "1", "--q", "1", "--delta",
                  "0.125,0.0625,0.03125,0.015625,0.0078125", "--out", dir.string()})
              .code == modlab::cli::kExitOk);
  const auto r = invoke({"rates", "fit", "--in", (dir / "rates_sweep.csv").string()});
  CHECK(r.code == modlab::cli::kExitOk);
  CHECK(invoke({"rates", "fit", "--in", (dir / "missing.csv").string()}).code != 0);
  fs::remove_all(dir);
}

TEST_CASE("record helpers") {
  modlab::cli::RunConfig c;
  c.command = "modulus";
  c.parameters = {{"k", "1"}, {"fn", "heaviside"}};
  CHECK(c.canonical() == "modulus fn=heaviside k=1 seed=42");
  CHECK(c.hash().size() == 16);
  CHECK(modlab::cli::json_real(1.0 / 0.0) == "inf");
  CHECK(modlab::cli::short_real(0.0123456789) == "0.0123457");
}
