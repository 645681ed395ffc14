#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "edgetrans/cli.hpp"
#include "edgetrans/errors.hpp"
#include "json.hpp"

using namespace edgetrans;
using namespace edgetrans::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "edgetrans_unit";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

// Runs the command twice and checks that both runs write the same bytes.
std::vector<std::string> run_twice(RunConfig cfg) {
  std::ostringstream log;
  REQUIRE(run(cfg, log) == 0);
  const auto first = slurp(cfg.out + ".csv") + slurp(cfg.out + ".json");
  REQUIRE(run(cfg, log) == 0);
  CHECK(slurp(cfg.out + ".csv") + slurp(cfg.out + ".json") == first);
  return {cfg.out + ".csv", cfg.out + ".json"};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("grid parsing") {
    const auto g = GridSpec::parse("0:1:3");
    CHECK(g.xs() == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(g.ys() == g.xs());
    const auto h = GridSpec::parse("0:1:2,-1:1:3");
    CHECK(h.ys() == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(GridSpec::parse("2:2:1").xs() == std::vector<double>{2.0});
    CHECK_THROWS_AS(GridSpec::parse("0:1"), DomainError);
    CHECK_THROWS_AS(GridSpec::parse("1:0:3"), DomainError);
    CHECK_THROWS_AS(GridSpec::parse("0:1:2.5"), DomainError);
    CHECK_THROWS_AS(GridSpec::parse("0:x:3"), DomainError);
  }

  TEST_CASE("potential parsing") {
    CHECK(parse_potential("-2,1") == std::vector<double>{-2.0, 1.0});
    CHECK_THROWS_AS(parse_potential("1,,2"), DomainError);
    CHECK_THROWS_AS(parse_potential("abc"), DomainError);
    RunConfig cfg;
    cfg.rho = -2.5;
    CHECK(cfg.make_potential().coeffs == std::vector<double>{-2.5, 1.0});
  }

  TEST_CASE("validation") {
    RunConfig cfg;
    cfg.command = "nope";
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.command = "chazy";
    cfg.theta = 3;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.command = "density";
    cfg.theta = 2;
    cfg.alpha = -1.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.alpha = 0.0;
    cfg.potential = {0.0, -1.0};
    CHECK_THROWS(cfg.validate());
    cfg.potential = {0.0, 1.0};
    CHECK_NOTHROW(cfg.validate());
    cfg.command = "kernel";
    cfg.n = 10;
    cfg.bits = 64;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.bits = 0;
    cfg.scaling = "weird";
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.command = "limits";
    cfg.tau = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.command = "equilibrium";
    cfg.tau.reset();
    cfg.t_sweep = "0:1:5";
    CHECK_THROWS_AS(cfg.validate(), DomainError);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-2.0) == "-2");
    CHECK(csv_table({"a", "b"}, {{1.0, 2.5}}) == "a,b\r\n1,2.5\r\n");
  }

  TEST_CASE("density and equilibrium commands") {
    RunConfig cfg;
    cfg.command = "density";
    cfg.rho = -2.0;
    cfg.out = scratch("density");
    run_twice(cfg);
    const auto side = nlohmann::json::parse(slurp(cfg.out + ".json"));
    CHECK(side.at("regime") == "transition");
    CHECK(side.at("total_mass").get<double>() == doctest::Approx(1.0).epsilon(1e-8));

    cfg.command = "equilibrium";
    cfg.out = scratch("equilibrium");
    cfg.t_sweep = "0.8:1.2:5";
    run_twice(cfg);
    CHECK(slurp(cfg.out + ".csv").rfind("t,regime,c1,c0,a,b", 0) == 0);
  }

  TEST_CASE("kernel, limits and chazy commands") {
    RunConfig cfg;
    cfg.command = "kernel";
    cfg.rho = -2.0;
    cfg.n = 6;
    cfg.grid = GridSpec::parse("0.5:1.5:3");
    cfg.scaling = "origin";
    cfg.out = scratch("kernel");
    run_twice(cfg);
    CHECK(slurp(cfg.out + ".csv").rfind("x,y,K,gauge_invariant,limit", 0) == 0);

    RunConfig lim;
    lim.command = "limits";
    lim.grid = GridSpec::parse("0.5:1.5:3");
    lim.out = scratch("limits");
    run_twice(lim);
    lim.tau = -1.0;
    run_twice(lim);

    RunConfig ch;
    ch.command = "chazy";
    ch.c0 = 0.1, ch.cp0 = 0.2, ch.cpp0 = -0.1;
    ch.out = scratch("chazy");
    run_twice(ch);
    ch.pole_demo = true;
    run_twice(ch);
    const auto side = nlohmann::json::parse(slurp(ch.out + ".json"));
    CHECK(side.at("pole_tau").get<double>() == doctest::Approx(0.3677).epsilon(1e-3));
    CHECK(side.at("max_constraint_drift").get<double>() < 1e-9);
  }

  TEST_CASE("selftest") {
    RunConfig cfg;
    cfg.command = "selftest";
    std::ostringstream os;
    CHECK(run(cfg, os) == 0);
    CHECK(os.str().find("FAIL") == std::string::npos);
  }
}
