#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "edgetrans/chazy.hpp"
#include "edgetrans/errors.hpp"

namespace edgetrans {

namespace {

using Vec6 = std::array<double, 6>;

Vec6 pack(const ChazyState& s) { return {s.c, s.b, s.f, s.a, s.k, s.d}; }

ChazyState unpack(const ChazyState& proto, const Vec6& x, double tau) {
  ChazyState s = proto;
  s.tau = tau;
  s.c = x[0], s.b = x[1], s.f = x[2], s.a = x[3], s.k = x[4], s.d = x[5];
  return s;
}

double max_abs(const Vec6& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

ChazyTrajectory integrate(const ChazyState& s0, double tau_end, const StepControl& ctl) {
  namespace odeint = boost::numeric::odeint;
  if (!(ctl.abs_tol > 0.0 && ctl.rel_tol > 0.0 && ctl.initial_step > 0.0))
    throw DomainError("integrate: tolerances and initial step must be positive");

  auto system = [&s0](const Vec6& x, Vec6& dx, double t) {
    const auto r = ode_rhs(unpack(s0, x, t));
    dx = {r.c, r.b, r.f, r.a, r.k, r.d};
  };
  auto stepper = odeint::make_controlled(ctl.abs_tol, ctl.rel_tol, odeint::runge_kutta_fehlberg78<Vec6>());

  ChazyTrajectory tr;
  tr.states.push_back(s0);
  const double dir = tau_end >= s0.tau ? 1.0 : -1.0;
  Vec6 x = pack(s0);
  double t = s0.tau;
  double dt = dir * ctl.initial_step;

  auto pole = [&](const char* why) {
    const auto& last = tr.states.back();
    const double cp = ode_rhs(last).c;
    tr.pole_tau = cp != 0.0 ? last.tau + last.c / cp : last.tau;
    if (ctl.throw_on_pole) {
      std::ostringstream os;
      os.precision(10);
      os << "integrate: " << why << " at tau = " << last.tau << "; movable pole near tau = " << tr.pole_tau;
      throw PoleError(os.str());
    }
  };

  while (dir * (tau_end - t) > 0.0) {
    if (dir * (t + dt - tau_end) > 0.0) dt = tau_end - t;
    const double t_before = t;
    const auto result = stepper.try_step(system, x, t, dt);
    if (result == odeint::fail) {
      if (std::abs(dt) < ctl.min_step * (1.0 + std::abs(t))) {
        pole(std::abs(dt) == 0.0 ? "step size underflow" : "step size below the floor");
        return tr;
      }
      continue;
    }
    // Snap onto the end point to avoid a sliver step from rounding.
    if (std::abs(tau_end - t) <= 1e-14 * (1.0 + std::abs(tau_end))) t = tau_end;
    tr.states.push_back(unpack(s0, x, t));
    if (max_abs(x) > ctl.blowup) {
      pole("solution exceeded the blow-up threshold");
      return tr;
    }
    if (t == t_before) {
      pole("step size underflow");
      return tr;
    }
  }
  return tr;
}

ChazyState ChazyTrajectory::at(double tau) const {
  if (states.empty()) throw DomainError("ChazyTrajectory::at: empty trajectory");
  const double lo = std::min(tau_begin(), tau_end()), hi = std::max(tau_begin(), tau_end());
  if (tau < lo || tau > hi) throw DomainError("ChazyTrajectory::at: tau outside the integrated range");
  const bool forward = tau_end() >= tau_begin();
  auto it = forward ? std::lower_bound(states.begin(), states.end(), tau,
                                       [](const ChazyState& s, double v) { return s.tau < v; })
                    : std::lower_bound(states.begin(), states.end(), tau,
                                       [](const ChazyState& s, double v) { return s.tau > v; });
  if (it == states.end()) it = std::prev(it);
  if (it != states.begin()) {
    auto prev = std::prev(it);
    if (std::abs(prev->tau - tau) < std::abs(it->tau - tau)) it = prev;
  }
  if (it->tau == tau) return *it;
  return taylor_advance(*it, tau - it->tau);
}

std::string ChazyTrajectory::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "tau,c,b,f,a,k,d,constraint1,constraint2,constraint3,third_order,chazy_u\n";
  for (const auto& s : states) {
    const auto r = constraint_residuals(s);
    os << s.tau << ',' << s.c << ',' << s.b << ',' << s.f << ',' << s.a << ',' << s.k << ',' << s.d << ',' << r[0]
       << ',' << r[1] << ',' << r[2] << ',' << residual_third_order(s) << ',' << residual_chazy_u(s) << '\n';
  }
  return os.str();
}

double residual_third_order(const ChazyTrajectory& tr, double tau) { return residual_third_order(tr.at(tau)); }

double residual_chazy1(const ChazyTrajectory& tr, double tau) {
  return residual_chazy1(tr.at(tau / std::numbers::sqrt2));
}

double residual_chazy_u(const ChazyTrajectory& tr, double tau) { return residual_chazy_u(tr.at(tau)); }

double residual_boussinesq(const ChazyTrajectory& tr, double tau) {
  return residual_boussinesq(tr.at(std::pow(3.0, 0.25) * tau / 2.0));
}

double max_constraint_drift(const ChazyTrajectory& tr) {
  double worst = 0.0;
  for (const auto& s : tr.states)
    for (double r : constraint_residuals(s)) worst = std::max(worst, std::abs(r));
  return worst;
}

}  // namespace edgetrans
