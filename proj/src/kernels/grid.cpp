#include <exception>
#include <mutex>

#include "edgetrans/errors.hpp"
#include "edgetrans/kernels.hpp"

namespace edgetrans {

std::vector<std::vector<double>> fill_values(const std::function<double(double, double)>& f,
                                             const std::vector<double>& xs, const std::vector<double>& ys,
                                             Schedule sched) {
  const int rows = static_cast<int>(xs.size());
  std::vector<std::vector<double>> out(rows, std::vector<double>(ys.size(), 0.0));
  if (sched == Schedule::serial) {
    for (int i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < ys.size(); ++k) out[i][k] = f(xs[i], ys[k]);
    return out;
  }
  // Exceptions cannot leave an OpenMP region; keep the first and rethrow.
  std::exception_ptr failure;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < rows; ++i) {
    try {
      for (std::size_t k = 0; k < ys.size(); ++k) out[i][k] = f(xs[i], ys[k]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

KernelGrid meijer_grid(const LimitKernelSpec& s, const std::vector<double>& xs, const std::vector<double>& ys,
                       Schedule sched) {
  s.validate();
  KernelGrid g;
  g.xs = xs;
  g.ys = ys;
  g.theta = s.theta;
  g.values = fill_values([&](double x, double y) { return kernel_meijer(s, x, y); }, xs, ys, sched);
  return g;
}

KernelGrid airy_grid(const std::vector<double>& xs, const std::vector<double>& ys, Schedule sched) {
  KernelGrid g;
  g.xs = xs;
  g.ys = ys;
  g.values = fill_values(kernel_airy, xs, ys, sched);
  return g;
}

std::vector<std::vector<double>> gauge_invariant(const KernelGrid& g) {
  g.validate();
  if (g.xs != g.ys) throw DomainError("gauge_invariant: the grid must be square with xs == ys");
  const std::size_t n = g.xs.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double prod = g.values[i][k] * g.values[k][i];
      if (prod > 0.0) out[i][k] = (g.values[i][k] > 0.0 ? 1.0 : -1.0) * std::sqrt(prod);
    }
  return out;
}

}  // namespace edgetrans
