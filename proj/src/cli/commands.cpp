#include <cmath>
#include <limits>
#include <ostream>

#include "edgetrans/biorth.hpp"
#include "edgetrans/chazy.hpp"
#include "edgetrans/cli.hpp"
#include "edgetrans/errors.hpp"
#include "edgetrans/kernels.hpp"
#include "edgetrans/limitmaps.hpp"
#include "json.hpp"

namespace edgetrans::cli {

namespace {

using nlohmann::json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json config_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["theta"] = cfg.theta;
  j["alpha"] = cfg.alpha;
  j["potential"] = cfg.make_potential().coeffs;
  j["t"] = cfg.t;
  if (cfg.tau) j["tau"] = *cfg.tau;
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  return j;
}

std::vector<std::string> emit(const RunConfig& cfg, const std::string& csv, json meta) {
  const std::string csv_path = cfg.out + ".csv", json_path = cfg.out + ".json";
  meta["config"] = config_json(cfg);
  meta["csv"] = csv_path;
  write_text(csv_path, csv);
  write_text(json_path, meta.dump(2) + "\n");
  return {csv_path, json_path};
}

std::vector<double> grid_or(const GridSpec& g, double lo, double hi, int count) {
  if (!g.empty()) return g.xs();
  GridSpec d;
  d.x0 = lo, d.x1 = hi, d.nx = count;
  return d.xs();
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::hard: return "hard";
    case Regime::transition: return "transition";
    case Regime::soft: return "soft";
  }
  return "hard";
}

MomentTable build_moments(const RunConfig& cfg, const Potential& P, int count) {
  const int M = required_moment_index(P.theta, count);
  return P.degree() == 2 ? moments_quadratic(P, cfg.n, M, cfg.precision_bits())
                         : moments_general(P, cfg.n, M, cfg.precision_bits());
}

}  // namespace

std::vector<std::string> cmd_density(const RunConfig& cfg) {
  cfg.validate();
  const Potential P = cfg.make_potential();
  const auto C = ContourSpec::default_for(P.theta);
  const Regime regime = classify(P, C);
  json meta;
  meta["regime"] = regime_name(regime);
  std::vector<std::vector<double>> rows;
  auto fill = [&](const std::function<double(double)>& psi, double a, double b) {
    // Midpoints avoid the endpoint singularities.
    const int count = 400;
    const auto xs = cfg.grid.empty() ? std::vector<double>{} : cfg.grid.xs();
    if (xs.empty())
      for (int i = 0; i < count; ++i) rows.push_back({a + (b - a) * (i + 0.5) / count, 0.0});
    else
      for (double x : xs) rows.push_back({x, 0.0});
    for (auto& r : rows) r[1] = psi(r[0]);
  };
  if (regime == Regime::soft) {
    const auto eq = solve_C2(P, C, false);
    const auto psi = [&](double x) { return density_psi(eq, x); };
    fill(psi, eq.a_hat, eq.b_hat);
    meta["a_hat"] = eq.a_hat;
    meta["b_hat"] = eq.b_hat;
    meta["d2_hat"] = eq.d2_hat;
    meta["slope_right_edge"] =
        loglog_slope([&](double s) { return psi(eq.b_hat - s); }, 1e-6 * eq.b_hat, 1e-3 * eq.b_hat);
    meta["total_mass"] = total_mass(eq.measure);
  } else {
    const auto eq = solve_C1(P, C, false);
    const auto psi = [&](double x) { return density_psi(eq, x); };
    fill(psi, 0.0, eq.b);
    meta["c"] = eq.c;
    meta["b"] = eq.b;
    meta["N_in_prime_at_minus_1"] = eq.m1;
    meta["negative_density"] = eq.negative_density;
    meta["slope_origin"] = loglog_slope(psi, 1e-6 * eq.b, 1e-3 * eq.b);
    meta["total_mass"] = total_mass(eq.measure);
  }
  return emit(cfg, csv_table({"x", "psi"}, rows), meta);
}

std::vector<std::string> cmd_equilibrium(const RunConfig& cfg) {
  cfg.validate();
  const Potential P = cfg.make_potential();
  const auto C = ContourSpec::default_for(P.theta);
  std::vector<double> ts{P.t};
  if (!cfg.t_sweep.empty()) ts = GridSpec::parse(cfg.t_sweep).xs();

  json meta;
  const Regime regime = classify(P, C);
  if (regime == Regime::soft) {
    meta["record"] = json::parse(to_json(solve_C2(P, C)));
  } else {
    const auto eq = solve_C1(P, C);
    meta["record"] = json::parse(to_json(eq));
    const auto rel = compute_A2_A3(eq.c, P, C);
    // The relation A3 + 1 = (theta+1)/theta A2 holds only at criticality; the
    // identity with the N'_In(-1) correction holds everywhere.
    meta["A2_A3_relation_residual"] = rel.relation_residual;
    meta["A2_A3_identity_residual"] = rel.identity_residual;
  }
  const auto tp = transition_point(P, C);
  meta["transition_c"] = tp.first;
  meta["transition_t"] = tp.second;

  std::vector<std::vector<double>> rows;
  for (double t : ts) {
    const Potential Pt = P.with_t(t);
    const Regime r = classify(Pt, C);
    if (r == Regime::soft) {
      const auto e = solve_C2(Pt, C, false);
      rows.push_back({t, 2.0, e.c1, e.c0, e.a_hat, e.b_hat});
    } else {
      const auto e = solve_C1(Pt, C, false);
      rows.push_back({t, r == Regime::hard ? 0.0 : 1.0, e.c, e.c, 0.0, e.b});
    }
  }
  meta["regime_codes"] = {{"hard", 0}, {"transition", 1}, {"soft", 2}};
  return emit(cfg, csv_table({"t", "regime", "c1", "c0", "a", "b"}, rows), meta);
}

std::vector<std::string> cmd_kernel(const RunConfig& cfg) {
  cfg.validate();
  const Potential P = cfg.make_potential();
  const auto C = ContourSpec::default_for(P.theta);
  const MomentTable T = build_moments(cfg, P, cfg.n);
  const BiorthFamily F = biorth_solve(T);

  KernelGrid g;
  std::vector<std::vector<double>> limit;
  json meta;
  if (cfg.scaling == "origin") {
    const auto eq = solve_C1(P, C, false);
    const auto xs = grid_or(cfg.grid, 0.3, 3.0, 10);
    const auto ys = cfg.grid.empty() ? xs : cfg.grid.ys();
    g = origin_grid(F, T, eq, xs, ys, Schedule::parallel);
    limit = meijer_grid({P.theta, P.alpha, LimitKind::meijer}, xs, ys, Schedule::parallel).values;
  } else if (cfg.scaling == "soft") {
    const auto eq = solve_C2(P, C, false);
    const auto xs = grid_or(cfg.grid, -2.0, 2.0, 9);
    const auto ys = cfg.grid.empty() ? xs : cfg.grid.ys();
    g = soft_grid(F, T, eq, xs, ys, Schedule::parallel);
    limit = airy_grid(xs, ys, Schedule::parallel).values;
  } else {
    const auto xs = grid_or(cfg.grid, 0.05, 3.0, 20);
    const auto ys = cfg.grid.empty() ? xs : cfg.grid.ys();
    g = finite_grid(F, T, xs, ys, Schedule::parallel);
  }
  const bool square = g.xs == g.ys;
  std::vector<std::vector<double>> inv;
  if (square) inv = gauge_invariant(g);

  std::vector<std::vector<double>> rows;
  double sup_raw = 0.0, sup_inv = 0.0;
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    for (std::size_t k = 0; k < g.ys.size(); ++k) {
      const double lim = limit.empty() ? kNaN : limit[i][k];
      const double gi = square ? inv[i][k] : kNaN;
      rows.push_back({g.xs[i], g.ys[k], g.values[i][k], gi, lim});
      if (!limit.empty()) {
        sup_raw = std::max(sup_raw, std::abs(g.values[i][k] - lim));
        if (square) sup_inv = std::max(sup_inv, std::abs(gi - lim));
      }
    }
  meta["scaling"] = scaling_name(g.kind);
  meta["factor"] = g.factor;
  meta["edge"] = g.edge;
  meta["precision_bits"] = T.precision_bits;
  meta["biorthogonality_residual"] = F.max_residual;
  if (!limit.empty()) {
    meta["sup_distance_to_limit"] = sup_raw;
    if (square) meta["sup_distance_gauge_invariant"] = sup_inv;
  }
  return emit(cfg, csv_table({"x", "y", "K", "gauge_invariant", "limit"}, rows), meta);
}

std::vector<std::string> cmd_limits(const RunConfig& cfg) {
  cfg.validate();
  const auto d = PreMapData::make(cfg.theta);
  json meta;
  const auto tc = tau_constants(d);
  meta["c1"] = tc.c1;
  meta["c2"] = tc.c2;
  meta["airy_conformal_slope_exact"] = airy_conformal_slope_exact(cfg.theta);
  meta["airy_conformal_slope_numeric"] = airy_conformal_slope_numeric(d);
  meta["K_airy_0_0"] = kernel_airy(0.0, 0.0);

  // Series against Mellin-Barnes for both Meijer families at a few points.
  json deltas = json::array();
  for (double x : {0.5, 1.0, 2.0}) {
    const auto p1 = meijer_params_g10(cfg.theta, cfg.alpha);
    const auto p2 = meijer_params_gtheta0(cfg.theta, cfg.alpha);
    const double s1 = meijer_g10(x, p1), o1 = mellin_barnes_oracle(x, p1, MeijerKind::g10).value;
    const double s2 = meijer_g_theta0(x, p2), o2 = mellin_barnes_oracle(x, p2, MeijerKind::gtheta0).value;
    deltas.push_back({{"x", x}, {"g10_rel", std::abs(s1 - o1) / std::abs(o1)}, {"gtheta0_rel", std::abs(s2 - o2) / std::abs(o2)}});
  }
  meta["meijer_oracle_deltas"] = deltas;

  std::vector<std::vector<double>> rows;
  const LimitKernelSpec mei{cfg.theta, cfg.alpha, LimitKind::meijer};
  if (cfg.tau) {
    const double tau = *cfg.tau;
    const LimitKernelSpec s{cfg.theta, cfg.alpha, tau < 0.0 ? LimitKind::meijer : LimitKind::airy};
    std::vector<double> xs;
    if (!cfg.grid.empty() || tau < 0.0) {
      xs = grid_or(cfg.grid, 0.3, 3.0, 10);
    } else {
      // Default Airy window: edge coordinates |u| <= 2 mapped back to xi, kept
      // where the conjugation argument 1 - theta c2 tau^{-4/3} u stays positive.
      const double big = std::pow(tc.c1 * tau, (cfg.theta + 1.0) / cfg.theta);
      const double shrink = tc.c2 * std::pow(tau, -4.0 / 3.0);
      const double umax = std::min(2.0, 0.9 / (cfg.theta * shrink));
      for (double u : grid_or({}, -umax, umax, 9)) xs.push_back(big * (1.0 - shrink * u));
    }
    const auto ys = cfg.grid.empty() ? xs : cfg.grid.ys();
    const auto v = fill_values([&](double x, double y) { return kernel_tau_limits(s, tau, x, y); }, xs, ys,
                               Schedule::parallel);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t k = 0; k < ys.size(); ++k) rows.push_back({xs[i], ys[k], v[i][k]});
    meta["limit"] = tau < 0.0 ? "meijer" : "airy";
    return emit(cfg, csv_table({"xi", "eta", "K_tau"}, rows), meta);
  }
  const auto xs = grid_or(cfg.grid, 0.3, 3.0, 10);
  const auto ys = cfg.grid.empty() ? xs : cfg.grid.ys();
  const auto km = meijer_grid(mei, xs, ys, Schedule::parallel);
  const auto ka = airy_grid(xs, ys, Schedule::parallel);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < ys.size(); ++k) rows.push_back({xs[i], ys[k], km.values[i][k], ka.values[i][k]});
  return emit(cfg, csv_table({"x", "y", "K_meijer", "K_airy"}, rows), meta);
}

std::vector<std::string> cmd_chazy(const RunConfig& cfg) {
  cfg.validate();
  const double tau0 = cfg.tau.value_or(0.0);
  ChazyState s0;
  if (cfg.pole_demo) s0 = complete_from_c(-2.0, -6.0, -20.0, tau0, cfg.alpha);
  else if (cfg.spectral) s0 = complete_on_spectral_level(cfg.c0, cfg.cp0, tau0, cfg.alpha);
  else s0 = complete_from_c(cfg.c0, cfg.cp0, cfg.cpp0, tau0, cfg.alpha);

  StepControl ctl;
  ctl.throw_on_pole = false;
  const auto tr = integrate(s0, cfg.tau_end, ctl);

  std::vector<std::vector<double>> rows;
  const std::complex<double> xi(1.0, 1.0);
  // Absolute residuals are meaningless next to a pole, so the summary maxima
  // only cover states whose fields stay below this bound; the CSV has them all.
  constexpr double kModerate = 1e2;
  double worst_third = 0.0, worst_zc = 0.0, worst_drift = 0.0;
  for (const auto& s : tr.states) {
    const auto r = constraint_residuals(s);
    const double third = residual_third_order(s), zc = zero_curvature_residual(s, xi);
    if (std::max({std::abs(s.c), std::abs(s.b), std::abs(s.f), std::abs(s.a), std::abs(s.k), std::abs(s.d)}) <=
        kModerate) {
      worst_third = std::max(worst_third, std::abs(third));
      worst_zc = std::max(worst_zc, zc);
      worst_drift = std::max({worst_drift, std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
    }
    rows.push_back({s.tau, s.c, s.b, s.f, s.a, s.k, s.d, r[0], r[1], r[2], third, residual_chazy_u(s), zc});
  }

  json meta;
  const auto ev = a_minus1_eigenvalues(s0);
  json evj = json::array();
  for (const auto& e : ev) evj.push_back({e.real(), e.imag()});
  meta["a_minus1_eigenvalues"] = evj;
  meta["spectrum_target"] = spectrum_target(cfg.alpha);
  meta["spectrum_error"] = spectrum_error(s0);
  meta["det_a_minus1"] = det_a_minus1(s0);
  meta["det_target"] = det_target(cfg.alpha);
  meta["gamma"] = s0.gamma;
  meta["steps"] = tr.states.size() - 1;
  meta["tau_reached"] = tr.tau_end();
  if (tr.hit_pole()) meta["pole_tau"] = tr.pole_tau;
  else meta["pole_tau"] = nullptr;
  meta["summary_field_bound"] = kModerate;
  meta["max_constraint_drift"] = worst_drift;
  meta["max_third_order_residual"] = worst_third;
  meta["max_zero_curvature_residual"] = worst_zc;
  return emit(cfg,
              csv_table({"tau", "c", "b", "f", "a", "k", "d", "constraint1", "constraint2", "constraint3",
                         "third_order", "chazy_u", "zero_curvature"},
                        rows),
              meta);
}

int run(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  if (cfg.command == "selftest") return cmd_selftest(cfg, os);
  std::vector<std::string> files;
  if (cfg.command == "density") files = cmd_density(cfg);
  else if (cfg.command == "equilibrium") files = cmd_equilibrium(cfg);
  else if (cfg.command == "kernel") files = cmd_kernel(cfg);
  else if (cfg.command == "limits") files = cmd_limits(cfg);
  else if (cfg.command == "chazy") files = cmd_chazy(cfg);
  for (const auto& f : files) os << "wrote " << f << "\n";
  return 0;
}

}  // namespace edgetrans::cli
