#include <cmath>
#include <exception>
#include <mutex>

#include "edgetrans/errors.hpp"
#include "edgetrans/kernels.hpp"

namespace edgetrans {

namespace {

struct RowData {
  mp::Real weight;
  std::vector<mp::Real> p;
};

// Runs body(i) for i < count, in parallel when asked, rethrowing the first failure.
template <class Body>
void for_each_index(int count, Schedule sched, Body body) {
  if (sched == Schedule::serial) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

// values[i][k] = K_n(xs[i], ys[k]).
std::vector<std::vector<double>> finite_values(const BiorthFamily& F, const MomentTable& T,
                                               const std::vector<double>& xs, const std::vector<double>& ys,
                                               Schedule sched) {
  const int bits = T.precision_bits;
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  std::vector<RowData> rows(nx, RowData{mp::Real(bits), {}});
  std::vector<std::vector<mp::Real>> cols(ny);
  for_each_index(nx, sched, [&](int i) { rows[i] = RowData{weight(T, xs[i]), p_values(F, xs[i], bits)}; });
  for_each_index(ny, sched, [&](int k) { cols[k] = q_values(F, ys[k], bits); });
  std::vector<std::vector<double>> out(nx, std::vector<double>(ny, 0.0));
  for_each_index(nx, sched, [&](int i) {
    for (int k = 0; k < ny; ++k) out[i][k] = kernel_from_values(F, rows[i].weight, rows[i].p, cols[k]);
  });
  return out;
}

std::vector<double> scaled(const std::vector<double>& v, double factor, double shift) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(shift + factor * x);
  return out;
}

}  // namespace

KernelGrid finite_grid(const BiorthFamily& F, const MomentTable& T, const std::vector<double>& xs,
                       const std::vector<double>& ys, Schedule sched) {
  KernelGrid g;
  g.xs = xs;
  g.ys = ys;
  g.n = T.n;
  g.theta = F.theta;
  g.values = finite_values(F, T, xs, ys, sched);
  return g;
}

KernelGrid origin_grid(const BiorthFamily& F, const MomentTable& T, const HardEdgeEquilibrium& eq,
                       const std::vector<double>& xs, const std::vector<double>& ys, Schedule sched) {
  const double s = origin_scale(eq, T.n);
  KernelGrid g;
  g.xs = xs;
  g.ys = ys;
  g.n = T.n;
  g.theta = F.theta;
  g.kind = KernelScaling::origin_rescaled;
  g.factor = s;
  g.values = finite_values(F, T, scaled(xs, s, 0.0), scaled(ys, s, 0.0), sched);
  for (auto& row : g.values)
    for (double& v : row) v *= s;
  return g;
}

KernelGrid soft_grid(const BiorthFamily& F, const MomentTable& T, const SoftEdgeEquilibrium& seq,
                     const std::vector<double>& us, const std::vector<double>& vs, Schedule sched) {
  const double c = soft_edge_scale(seq, T.n);
  KernelGrid g;
  g.xs = us;
  g.ys = vs;
  g.n = T.n;
  g.theta = F.theta;
  g.kind = KernelScaling::soft_edge_rescaled;
  g.factor = c;
  g.edge = seq.b_hat;
  g.values = finite_values(F, T, scaled(us, c, seq.b_hat), scaled(vs, c, seq.b_hat), sched);
  for (auto& row : g.values)
    for (double& v : row) v *= c;
  return g;
}

}  // namespace edgetrans
