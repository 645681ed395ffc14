#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edgetrans/equilibrium.hpp"

namespace edgetrans::cli {

// "x0:x1:nx[,y0:y1:ny]"; the y axis defaults to the x axis.
struct GridSpec {
  double x0 = 0.0, x1 = 1.0;
  int nx = 0;
  double y0 = 0.0, y1 = 1.0;
  int ny = 0;

  bool empty() const { return nx == 0; }
  std::vector<double> xs() const;
  std::vector<double> ys() const;
  static GridSpec parse(const std::string& text);
};

// "v1,v2,..." for V(x) = v1 x + v2 x^2 + ...
std::vector<double> parse_potential(const std::string& text);

struct RunConfig {
  std::string command;
  int theta = 2;
  double alpha = 0.0;
  std::vector<double> potential{0.0, 1.0};
  double t = 1.0;
  std::optional<double> tau;
  int n = 12;
  int bits = 0;  // 0: default_precision_bits(n)
  GridSpec grid;
  std::string out = "edgetrans_out";
  std::uint64_t seed = 0;

  // density / kernel
  std::optional<double> rho;  // replaces the potential by x^2 + rho x
  std::string scaling = "raw";
  // chazy
  double c0 = 0.0, cp0 = 0.0, cpp0 = 0.0;
  double tau_end = 1.0;
  bool spectral = false;
  bool pole_demo = false;
  // equilibrium
  std::string t_sweep;  // "t0:t1:n"

  Potential make_potential() const;
  int precision_bits() const;
  // Checks every field against the preconditions of the command's modules.
  // Throws DomainError.
  void validate() const;
};

// Each command writes <out>.csv and the JSON sidecar <out>.json and returns
// the paths written.
std::vector<std::string> cmd_density(const RunConfig& cfg);
std::vector<std::string> cmd_equilibrium(const RunConfig& cfg);
std::vector<std::string> cmd_kernel(const RunConfig& cfg);
std::vector<std::string> cmd_limits(const RunConfig& cfg);
std::vector<std::string> cmd_chazy(const RunConfig& cfg);

// One verdict line per module on `os`; returns 0 when every check passes.
int cmd_selftest(const RunConfig& cfg, std::ostream& os);

// Dispatch on cfg.command; returns the process exit code.
int run(const RunConfig& cfg, std::ostream& os);

// Output helpers. CSV fields are written with 17 significant digits and '.'
// decimals regardless of locale.
std::string format_number(double v);
void write_text(const std::string& path, const std::string& text);
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

}  // namespace edgetrans::cli
