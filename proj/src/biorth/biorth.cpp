#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "edgetrans/biorth.hpp"
#include "edgetrans/errors.hpp"
#include "json.hpp"

namespace edgetrans {

namespace {

using Matrix = std::vector<std::vector<mp::Real>>;

Matrix bimoments(const MomentTable& T, int count) {
  const int th = T.P.theta;
  const int need = (count - 1) * (th + 1);
  if (T.max_index() < need)
    throw DomainError("biorth: moment table too short (need index " + std::to_string(need) + ")");
  Matrix B;
  B.reserve(count);
  for (int j = 0; j < count; ++j) {
    std::vector<mp::Real> row;
    row.reserve(count);
    for (int k = 0; k < count; ++k) row.push_back(T.values[j + th * k]);
    B.push_back(std::move(row));
  }
  return B;
}

Matrix identity(int count, int bits) {
  Matrix E(count, std::vector<mp::Real>(count, mp::Real(bits)));
  for (int i = 0; i < count; ++i) E[i][i] = 1.0;
  return E;
}

// Row elimination without pivoting: returns the unit lower M with M A upper
// triangular, and that triangle's diagonal.
Matrix eliminate(Matrix A, int bits, std::vector<mp::Real>& diag) {
  const int c = static_cast<int>(A.size());
  Matrix M = identity(c, bits);
  for (int i = 0; i < c; ++i) {
    if (A[i][i].is_zero())
      throw ConsistencyError("biorth_solve: singular leading minor at order " + std::to_string(i + 1) +
                             "; raise precision to at least 16 n bits");
    for (int j = i + 1; j < c; ++j) {
      const mp::Real f = A[j][i] / A[i][i];
      for (int k = i; k < c; ++k) A[j][k] -= f * A[i][k];
      for (int k = 0; k <= i; ++k) M[j][k] -= f * M[i][k];
    }
  }
  diag.clear();
  for (int i = 0; i < c; ++i) diag.push_back(A[i][i]);
  return M;
}

mp::Real horner(const std::vector<mp::Real>& c, const mp::Real& x) {
  mp::Real acc = c.back();
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
    acc *= x;
    acc += c[k];
  }
  return acc;
}

}  // namespace

BiorthFamily biorth_solve(const MomentTable& T, int count) {
  if (count <= 0) count = T.n;
  const int bits = T.precision_bits;
  const Matrix B = bimoments(T, count);

  std::vector<mp::Real> diag_p, diag_q;
  const Matrix Mp = eliminate(B, bits, diag_p);  // Mp B = D U
  Matrix Bt(count, std::vector<mp::Real>(count, mp::Real(bits)));
  for (int j = 0; j < count; ++j)
    for (int k = 0; k < count; ++k) Bt[j][k] = B[k][j];
  const Matrix Mq = eliminate(Bt, bits, diag_q);  // Mq B^T = D L^T

  BiorthFamily F;
  F.theta = T.P.theta;
  F.count = count;
  for (int j = 0; j < count; ++j) {
    F.p_coeffs.emplace_back(Mp[j].begin(), Mp[j].begin() + j + 1);
    F.q_coeffs.emplace_back(Mq[j].begin(), Mq[j].begin() + j + 1);
    F.kappas.push_back(diag_p[j]);
  }

  // Pairing matrix Mp B Mq^T, which must equal diag(kappa).
  double worst = 0.0;
  for (int j = 0; j < count; ++j) {
    std::vector<mp::Real> row(count, mp::Real(bits));  // (Mp B)[j]
    for (int l = 0; l < count; ++l)
      for (int i = 0; i <= j; ++i) row[l].add_product(Mp[j][i], B[i][l]);
    for (int k = 0; k < count; ++k) {
      mp::Real pair(bits);
      for (int l = 0; l <= k; ++l) pair.add_product(row[l], Mq[k][l]);
      if (j == k) pair -= F.kappas[j];
      worst = std::max(worst, (mp::abs(pair) / mp::abs(F.kappas[j])).to_double());
    }
  }
  F.max_residual = worst;
  if (!(worst <= 1e-20))
    throw ConsistencyError("biorth_solve: biorthogonality residual " + std::to_string(worst) +
                           " exceeds 1e-20; raise precision to at least 16 n bits");
  for (const auto& k : F.kappas)
    if (k.is_zero()) throw ConsistencyError("biorth_solve: kappa vanished");
  return F;
}

std::vector<mp::Real> bimoment_minors(const MomentTable& T, int count) {
  const int bits = T.precision_bits;
  const Matrix B = bimoments(T, count);
  std::vector<mp::Real> out;
  for (int order = 1; order <= count; ++order) {
    Matrix A(order);
    for (int i = 0; i < order; ++i) A[i].assign(B[i].begin(), B[i].begin() + order);
    mp::Real det(1.0, bits);
    for (int i = 0; i < order; ++i) {
      int piv = i;
      for (int r = i + 1; r < order; ++r)
        if (mp::abs(A[r][i]) > mp::abs(A[piv][i])) piv = r;
      if (piv != i) {
        std::swap(A[piv], A[i]);
        det = -det;
      }
      det *= A[i][i];
      if (A[i][i].is_zero()) break;
      for (int r = i + 1; r < order; ++r) {
        const mp::Real f = A[r][i] / A[i][i];
        for (int k = i; k < order; ++k) A[r][k] -= f * A[i][k];
      }
    }
    out.push_back(det);
  }
  return out;
}

std::vector<mp::Real> p_values(const BiorthFamily& F, double x, int bits) {
  const mp::Real xr(x, bits);
  std::vector<mp::Real> out;
  out.reserve(F.count);
  for (const auto& c : F.p_coeffs) out.push_back(horner(c, xr));
  return out;
}

std::vector<mp::Real> q_values(const BiorthFamily& F, double y, int bits) {
  const mp::Real yt = mp::pow(mp::Real(y, bits), static_cast<long>(F.theta));
  std::vector<mp::Real> out;
  out.reserve(F.count);
  for (const auto& c : F.q_coeffs) out.push_back(horner(c, yt));
  return out;
}

mp::Real weight(const MomentTable& T, double x) {
  const int bits = T.precision_bits;
  if (x < 0.0) throw DomainError("weight: x must be >= 0");
  const mp::Real xr(x, bits);
  // -n V_t(x) by Horner in working precision.
  mp::Real v(T.P.coeffs.back(), bits);
  for (int k = T.P.degree() - 1; k >= 1; --k) {
    v *= xr;
    v += T.P.coeffs[k - 1];
  }
  v *= xr;
  v *= -static_cast<double>(T.n);
  v /= T.P.t;
  mp::Real w = mp::exp(v);
  if (T.P.alpha != 0.0) {
    if (x == 0.0) {
      if (T.P.alpha < 0.0) throw PoleError("weight: x^alpha is singular at 0 for alpha < 0");
      return mp::Real(bits);
    }
    w *= mp::exp(mp::Real(T.P.alpha, bits) * mp::log(xr));
  }
  return w;
}

double kernel_from_values(const BiorthFamily& F, const mp::Real& wx, const std::vector<mp::Real>& px,
                          const std::vector<mp::Real>& qy) {
  mp::Real sum(wx.precision());
  for (int j = 0; j < F.count; ++j) sum += px[j] * qy[j] / F.kappas[j];
  sum *= wx;
  return sum.to_double();
}

double kernel_Kn(const BiorthFamily& F, const MomentTable& T, double x, double y) {
  const int bits = T.precision_bits;
  return kernel_from_values(F, weight(T, x), p_values(F, x, bits), q_values(F, y, bits));
}

double origin_time(const HardEdgeEquilibrium& eq, int n, double tau) { return 1.0 - std::sqrt(eq.A1 / n) * tau; }

double origin_scale(const HardEdgeEquilibrium& eq, int n) {
  if (!(eq.rho > 0.0)) throw DomainError("origin_scale: rho must be positive");
  return std::pow(eq.rho * n, -(eq.theta + 1.0) / (2.0 * eq.theta));
}

double rescaled_kernel_origin(const BiorthFamily& F, const MomentTable& T, const HardEdgeEquilibrium& eq,
                              double x, double y) {
  const double s = origin_scale(eq, T.n);
  return s * kernel_Kn(F, T, s * x, s * y);
}

double soft_edge_scale(const SoftEdgeEquilibrium& seq, int n) {
  if (!(seq.d2_hat > 0.0)) throw DomainError("soft_edge_scale: d2_hat must be positive");
  return std::pow(n * std::numbers::pi * seq.d2_hat, -2.0 / 3.0);
}

double rescaled_kernel_soft(const BiorthFamily& F, const MomentTable& T, const SoftEdgeEquilibrium& seq,
                            double u, double v) {
  const double c = soft_edge_scale(seq, T.n);
  return c * kernel_Kn(F, T, seq.b_hat + c * u, seq.b_hat + c * v);
}

const char* scaling_name(KernelScaling k) {
  switch (k) {
    case KernelScaling::raw: return "raw";
    case KernelScaling::origin_rescaled: return "origin_rescaled";
    case KernelScaling::soft_edge_rescaled: return "soft_edge_rescaled";
  }
  return "raw";
}

void KernelGrid::validate() const {
  if (values.size() != xs.size()) throw DomainError("KernelGrid: row count differs from xs");
  for (const auto& row : values)
    if (row.size() != ys.size()) throw DomainError("KernelGrid: column count differs from ys");
}

std::string KernelGrid::to_csv() const {
  validate();
  std::ostringstream os;
  os.precision(17);
  os << "x";
  for (double y : ys) os << ',' << y;
  os << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    os << xs[i];
    for (double v : values[i]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

std::string KernelGrid::to_json() const {
  validate();
  nlohmann::json j;
  j["xs"] = xs;
  j["ys"] = ys;
  j["values"] = values;
  j["scaling"] = {{"kind", scaling_name(kind)}, {"factor", factor}, {"edge", edge}, {"n", n}, {"theta", theta}};
  return j.dump();
}

KernelGrid KernelGrid::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  KernelGrid g;
  g.xs = j.at("xs").get<std::vector<double>>();
  g.ys = j.at("ys").get<std::vector<double>>();
  g.values = j.at("values").get<std::vector<std::vector<double>>>();
  const auto& s = j.at("scaling");
  const std::string kind = s.at("kind").get<std::string>();
  if (kind == "raw") g.kind = KernelScaling::raw;
  else if (kind == "origin_rescaled") g.kind = KernelScaling::origin_rescaled;
  else if (kind == "soft_edge_rescaled") g.kind = KernelScaling::soft_edge_rescaled;
  else throw DomainError("KernelGrid: unknown scaling kind '" + kind + "'");
  g.factor = s.at("factor").get<double>();
  g.edge = s.at("edge").get<double>();
  g.n = s.at("n").get<int>();
  g.theta = s.at("theta").get<int>();
  g.validate();
  return g;
}

}  // namespace edgetrans
