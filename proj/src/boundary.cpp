#include "kac/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace kac {

double BoundaryFit::sup_abs_G(int n) const {
  double m = 0.0;
  for (double x : G[n]) m = std::max(m, std::abs(x));
  return m;
}

std::uint64_t BoundaryFit::hash() const {
  std::uint64_t h = params_hash ^ 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(std::uint64_t(n_min));
  mix(std::uint64_t(n_max));
  mix(std::uint64_t(n_table));
  mix(std::uint64_t(gauge_ref));
  return h;
}

BoundaryFit fit_boundary(const BlockSpace& bs, int n_min, int n_max, int n_table, int gauge_ref) {
  if (n_min < 1 || n_max < n_min + 2) throw SizeError("fit needs 1 <= n_min and n_max >= n_min + 2");
  BoundaryFit f;
  f.n_min = n_min;
  f.n_max = n_max;
  f.n_table = std::max(n_table, n_max);
  f.gauge_ref = gauge_ref < 0 ? bs.all_plus() : gauge_ref;
  f.states = bs.plus_states;
  f.d = int(f.states.size());
  f.params_hash = params_hash(bs.p);
  const int d = f.d;
  const int r = bs.plus_index(f.gauge_ref);
  if (r < 0) throw AdmissibilityError("gauge reference must have theta = +1");
  f.logZ.assign(f.n_table + 1, std::vector<double>(size_t(d) * d, kNegInf));
  for (int i = 0; i < d; ++i) {
    auto z = plus_interval_sweep(bs, f.states[i], f.states, f.n_table);
    for (int n = 1; n <= f.n_table; ++n)
      for (int j = 0; j < d; ++j) {
        if (z[n][j] == kNegInf) throw EmptyEnsembleError("empty plus-interval ensemble");
        f.logZ[n][size_t(i) * d + j] = z[n][j];
      }
  }
  const double blp = bs.p.beta * bs.lp;
  auto Z = [&](int n, int i, int j) { return (long double)f.logZ[n][size_t(i) * d + j]; };
  f.p_plus = double((Z(n_max, r, r) - Z(n_min, r, r)) / (blp * (n_max - n_min)));
  const long double bulk = (long double)blp * n_max * f.p_plus;
  const long double half = 0.5L * (Z(n_max, r, r) - bulk);
  f.F1.assign(d, 0.0);
  f.F2.assign(d, 0.0);
  for (int s = 0; s < d; ++s) {
    f.F1[s] = double(Z(n_max, s, r) - bulk - half);
    f.F2[s] = double(Z(n_max, r, s) - bulk - half);
  }
  f.F1[r] = f.F2[r] = double(half);
  f.G.assign(f.n_table + 1, std::vector<double>(size_t(d) * d, 0.0));
  f.A.assign(f.n_table + 1, 0.0);
  for (int n = 1; n <= f.n_table; ++n) {
    double amin = INFINITY;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        long double g = Z(n, i, j) - (long double)blp * n * f.p_plus - f.F1[i] - f.F2[j];
        f.G[n][size_t(i) * d + j] = double(g);
        amin = std::min(amin, double(g));
      }
    f.A[n] = amin;
  }
  return f;
}

InterfaceTable interface_table(const BlockSpace& bs, const BoundaryFit& fit, int u_max) {
  InterfaceTable t;
  t.u_max = u_max;
  t.d = fit.d;
  const int d = fit.d;
  const double beta = bs.p.beta;
  const double blp = beta * bs.lp;
  std::vector<int> minus;
  for (int s : fit.states) minus.push_back(bs.flip(s));
  t.logZ.assign(u_max + 1, std::vector<double>(size_t(d) * d, kNegInf));
  t.V2.assign(u_max + 1, std::vector<double>(size_t(d) * d, kNegInf));
  t.eps.assign(u_max + 1, 0.0);
  for (int i = 0; i < d; ++i) {
    auto z = iface_sweep(bs, fit.states[i], minus, u_max, +1);
    for (int u = 1; u <= u_max; ++u)
      for (int j = 0; j < d; ++j) t.logZ[u][size_t(i) * d + j] = z[u][j];
  }
  for (int u = 2; u <= u_max; ++u) {
    std::vector<double> terms;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double lz = t.logZ[u][size_t(i) * d + j];
        if (lz == kNegInf) continue;
        double v = lz - beta * (bs.intra[fit.states[i]] + bs.intra[minus[j]]) + fit.F2[i] + fit.F3(j) -
                   blp * fit.p_plus * (u + 2);
        t.V2[u][size_t(i) * d + j] = v;
        terms.push_back(v);
      }
    t.eps[u] = std::exp(log_sum(terms));
  }
  return t;
}

std::vector<double> interface_eps_mirror(const BlockSpace& bs, const BoundaryFit& fit, int u_max) {
  const int d = fit.d;
  const double beta = bs.p.beta;
  const double blp = beta * bs.lp;
  std::vector<int> minus;
  for (int s : fit.states) minus.push_back(bs.flip(s));
  std::vector<std::vector<double>> terms(u_max + 1);
  for (int i = 0; i < d; ++i) {
    auto z = iface_sweep(bs, minus[i], fit.states, u_max, -1);
    for (int u = 2; u <= u_max; ++u)
      for (int j = 0; j < d; ++j) {
        if (z[u][j] == kNegInf) continue;
        terms[u].push_back(z[u][j] - beta * (bs.intra[minus[i]] + bs.intra[fit.states[j]]) + fit.F4(i) +
                           fit.F1[j] - blp * fit.p_plus * (u + 2));
      }
  }
  std::vector<double> eps(u_max + 1, 0.0);
  for (int u = 2; u <= u_max; ++u) eps[u] = std::exp(log_sum(terms[u]));
  return eps;
}

EpsTotal eps_total(const InterfaceTable& t, double tol) {
  EpsTotal out;
  out.u_max = t.u_max;
  long double s = 0.0L;
  for (int u = 2; u <= t.u_max; ++u) s += t.eps[u];
  out.eps = double(s);
  // Geometric tail from the last quarter of the table.
  int lo = std::max(2, t.u_max - std::max(2, (t.u_max - 1) / 4));
  double a = t.eps[lo], b = t.eps[t.u_max];
  if (b == 0.0) {
    out.tail = 0.0;
    return out;
  }
  double rho = std::pow(b / a, 1.0 / (t.u_max - lo));
  if (!(rho < 1.0)) throw TruncationError("interface weights are not contracting");
  out.tail = b * rho / (1.0 - rho);
  if (out.tail > tol * out.eps) throw TruncationError("interface tail exceeds tolerance");
  return out;
}

}  // namespace kac
