#include <iostream>

#include "CLI11.hpp"
#include "edgetrans/cli.hpp"
#include "edgetrans/errors.hpp"

int main(int argc, char** argv) {
  using edgetrans::cli::RunConfig;
  RunConfig cfg;
  std::string potential, grid;
  double tau = 0.0;

  CLI::App app{"Muttalib-Borodin hard-to-soft edge transition toolkit"};
  app.set_config("--config", "", "key=value file; command-line flags override it");
  app.add_option("command", cfg.command, "density | equilibrium | kernel | limits | chazy | selftest")
      ->required()
      ->check(CLI::IsMember({"density", "equilibrium", "kernel", "limits", "chazy", "selftest"}));

  auto* common = app.add_option_group("common");
  common->add_option("--theta", cfg.theta, "theta (positive integer)")->capture_default_str();
  common->add_option("--alpha", cfg.alpha, "alpha > -1")->capture_default_str();
  common->add_option("--potential", potential, "V coefficients v1,v2,... for V = v1 x + v2 x^2 + ...");
  common->add_option("--t", cfg.t, "potential scaling t > 0")->capture_default_str();
  auto* tau_opt = common->add_option("--tau", tau, "limits: tau-limit harness (<0 Meijer, >0 Airy); chazy: start tau");
  common->add_option("--n", cfg.n, "kernel: number of particles")->capture_default_str();
  common->add_option("--bits", cfg.bits, "kernel: MPFR precision (default max(128, 12 n))");
  common->add_option("--grid", grid, "x0:x1:nx[,y0:y1:ny]");
  common->add_option("--out", cfg.out, "output prefix; writes PREFIX.csv and PREFIX.json")->capture_default_str();
  common->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();

  auto* density = app.add_option_group("density / equilibrium / kernel");
  density->add_option("--rho", cfg.rho, "use V = x^2 + rho x");
  density->add_option("--scaling", cfg.scaling, "kernel: raw | origin | soft")->capture_default_str();
  density->add_option("--t-sweep", cfg.t_sweep, "equilibrium: t0:t1:count table");

  auto* chazy = app.add_option_group("chazy");
  chazy->add_option("--c0", cfg.c0, "initial c")->capture_default_str();
  chazy->add_option("--cp0", cfg.cp0, "initial c'")->capture_default_str();
  chazy->add_option("--cpp0", cfg.cpp0, "initial c'' (ignored with --spectral)")->capture_default_str();
  chazy->add_option("--tau-end", cfg.tau_end, "integrate up to this tau")->capture_default_str();
  chazy->add_flag("--spectral", cfg.spectral, "choose c'' so that A_{-1} has the prescribed spectrum");
  chazy->add_flag("--pole-demo", cfg.pole_demo, "start from data that runs into a movable pole");

  CLI11_PARSE(app, argc, argv);
  try {
    if (!potential.empty()) cfg.potential = edgetrans::cli::parse_potential(potential);
    if (!grid.empty()) cfg.grid = edgetrans::cli::GridSpec::parse(grid);
    if (tau_opt->count() > 0) cfg.tau = tau;
    return edgetrans::cli::run(cfg, std::cout);
  } catch (const edgetrans::Error& e) {
    std::cerr << "edgetrans: " << e.what() << "\n";
    return 2;
  }
}
