#include <algorithm>
#include <cmath>
#include <sstream>

#include "edgetrans/biorth.hpp"
#include "edgetrans/cli.hpp"
#include "edgetrans/errors.hpp"

namespace edgetrans::cli {

namespace {

double parse_double(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError(std::string(what) + ": cannot parse '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw DomainError(std::string(what) + ": cannot parse '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

void parse_axis(const std::string& text, double& lo, double& hi, int& count) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw DomainError("grid: axis must be lo:hi:count, got '" + text + "'");
  lo = parse_double(parts[0], "grid");
  hi = parse_double(parts[1], "grid");
  const double c = parse_double(parts[2], "grid");
  if (c < 1 || c != std::floor(c)) throw DomainError("grid: count must be a positive integer");
  if (count = static_cast<int>(c); count > 1 && !(hi > lo)) throw DomainError("grid: need lo < hi");
}

std::vector<double> axis(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return v;
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec g;
  const auto axes = split(text, ',');
  if (axes.empty() || axes.size() > 2) throw DomainError("grid: expected x0:x1:nx[,y0:y1:ny]");
  parse_axis(axes[0], g.x0, g.x1, g.nx);
  if (axes.size() == 2) parse_axis(axes[1], g.y0, g.y1, g.ny);
  else g.y0 = g.x0, g.y1 = g.x1, g.ny = g.nx;
  return g;
}

std::vector<double> GridSpec::xs() const { return axis(x0, x1, nx); }
std::vector<double> GridSpec::ys() const { return axis(y0, y1, ny); }

std::vector<double> parse_potential(const std::string& text) {
  std::vector<double> v;
  for (const auto& p : split(text, ',')) v.push_back(parse_double(p, "potential"));
  if (v.empty()) throw DomainError("potential: no coefficients");
  return v;
}

Potential RunConfig::make_potential() const {
  Potential P;
  P.theta = theta;
  P.alpha = alpha;
  P.t = t;
  P.coeffs = rho ? std::vector<double>{*rho, 1.0} : potential;
  return P;
}

int RunConfig::precision_bits() const { return bits > 0 ? bits : default_precision_bits(n); }

void RunConfig::validate() const {
  static const char* commands[] = {"density", "equilibrium", "kernel", "limits", "chazy", "selftest"};
  if (std::find(std::begin(commands), std::end(commands), command) == std::end(commands))
    throw DomainError("unknown command '" + command + "'");
  if (out.empty()) throw DomainError("--out must not be empty");
  if (command == "chazy") {
    if (theta != 2) throw DomainError("chazy: only theta = 2 has a Lax pair");
    if (!std::isfinite(tau_end)) throw DomainError("chazy: --tau-end must be finite");
    return;
  }
  if (command == "selftest") return;
  if (theta < 1) throw DomainError("--theta must be a positive integer");
  if (!(alpha > -1.0)) throw DomainError("--alpha must exceed -1");
  if (command == "limits") {
    if (tau && *tau == 0.0) throw DomainError("limits: --tau must be nonzero (negative: Meijer, positive: Airy)");
    return;
  }
  if (theta < 2) throw DomainError("--theta must be >= 2 for the equilibrium problem");
  make_potential().validate();
  if (command == "kernel") {
    if (n < 1) throw DomainError("kernel: --n must be >= 1");
    if (bits != 0 && bits < 12 * n) throw DomainError("kernel: --bits must be >= 12 n");
    if (scaling != "raw" && scaling != "origin" && scaling != "soft")
      throw DomainError("kernel: --scaling must be raw, origin or soft");
  }
  if (!t_sweep.empty()) {
    GridSpec g;
    parse_axis(t_sweep, g.x0, g.x1, g.nx);
    if (!(g.x0 > 0.0)) throw DomainError("--t-sweep: t must be positive");
  }
}

}  // namespace edgetrans::cli
