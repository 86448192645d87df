#include "kac/surface.hpp"

#include <cmath>

#include "kac/errors.hpp"
#include "kac/transfer.hpp"

namespace kac {

namespace {

void check_split(const BlockSpace& bs, int m, int n, int b, int b2) {
  if (m < 1 || n < 2) throw SizeError("split sum needs m >= 1 and n >= 2");
  if (bs.theta[b] != 1 || bs.theta[b2] != -1) throw AdmissibilityError("split sum needs theta(b) = 1, theta(b2) = -1");
}

}  // namespace

double log_split_sum(const BlockSpace& bs, int m, int n, int b, int b2) {
  check_split(bs, m, n, b, b2);
  const int total = 2 * m + n + 2;
  // Interior index k = 0..total-1 is block k - m.
  std::vector<ThetaSet> theta(total, kAnyTheta), big(total, kAnyTheta);
  for (int k = 0; k < total; ++k) {
    const int i = k - m;
    if (i <= -1) big[k] = kNonNeg;
    if (i == 0) big[k] = theta_set(1);
    if (i >= 1 && i <= n) big[k] = theta_set(0);
    if (i == n + 1) big[k] = theta_set(-1);
    if (i >= n + 2) big[k] = kNonPos;
  }
  theta[0] = theta_set(1);
  theta[total - 1] = theta_set(-1);
  return restricted_log_z_raw(bs, total, b, b2, EnsembleConstraint::custom(theta, big));
}

double log_split_sum_product(const BlockSpace& bs, int m, int n, int b, int b2) {
  check_split(bs, m, n, b, b2);
  std::vector<int> plus, minus;
  for (int s = 0; s < bs.nb; ++s) {
    if (bs.theta[s] == 1) plus.push_back(s);
    if (bs.theta[s] == -1) minus.push_back(s);
  }
  // log Z^+_m(b, s), log Z^{+-}_n(s, s'), log Z^-_m(s', b2).
  auto zl = plus_interval_sweep(bs, b, plus, m)[m];
  std::vector<double> zr(minus.size());
  for (size_t j = 0; j < minus.size(); ++j)
    zr[j] = plus_interval_sweep(bs, bs.flip(minus[j]), {bs.flip(b2)}, m)[m][0];
  std::vector<double> terms;
  for (size_t i = 0; i < plus.size(); ++i) {
    if (zl[i] == kNegInf) continue;
    auto zi = iface_sweep(bs, plus[i], minus, n, +1)[n];
    for (size_t j = 0; j < minus.size(); ++j) {
      if (zi[j] == kNegInf || zr[j] == kNegInf) continue;
      terms.push_back(zl[i] + zi[j] + zr[j] - bs.p.beta * (bs.intra[plus[i]] + bs.intra[minus[j]]));
    }
  }
  return log_sum(terms);
}

double log_split_ratio(const BlockSpace& bs, int m, int n, int b, int b2) {
  const double a = log_split_sum(bs, m, n, b, b2);
  const int total = 2 * m + n + 2;
  const double z = restricted_log_z(bs, total, b, bs.flip(b2), EnsembleConstraint::plus_interval(total));
  return a - z;
}

SurfaceTension surface_tension(const BlockSpace& bs, const BoundaryFit& fit, const InterfaceTable& t, int m,
                               int n_max, int b, int b2) {
  if (n_max > t.u_max) throw TableMissError("interface table shorter than n_max");
  if (fit.n_table < 2 * m + n_max + 2) throw TableMissError("boundary fit shorter than 2m + n_max + 2");
  if (b < 0) b = bs.all_plus();
  if (b2 < 0) b2 = bs.flip(bs.all_plus());
  SurfaceTension st;
  st.m = m;
  st.n_max = n_max;
  st.ratio.assign(n_max + 1, 0.0);
  long double sum = 0.0L;
  for (int n = 2; n <= n_max; ++n) {
    st.ratio[n] = std::exp(log_split_ratio(bs, m, n, b, b2));
    sum += st.ratio[n];
  }
  // Geometric continuation from the last quarter, as for the interface total.
  const int lo = std::max(2, n_max - std::max(2, (n_max - 1) / 4));
  const double q = std::pow(st.ratio[n_max] / st.ratio[lo], 1.0 / (n_max - lo));
  st.tail = (q > 0.0 && q < 1.0) ? st.ratio[n_max] * q / (1.0 - q) : INFINITY;
  st.weight = double(sum) + st.tail;
  st.phi = -std::log(st.weight) / bs.p.beta;
  // Each ratio sits within exp(+-(sup|G_m| + sup|G_m| + sup|G_{2m+n+2}|)) of eps(n).
  double g = 0.0;
  for (int n = 2; n <= n_max; ++n) g = std::max(g, 2 * fit.sup_abs_G(m) + fit.sup_abs_G(2 * m + n + 2));
  st.tolerance = std::expm1(g) + 2.0 * st.tail / st.weight;
  return st;
}

std::vector<InfluenceRow> boundary_influence_decay(const BlockSpace& bs, const std::vector<double>& f, int left,
                                                   int s1, int s2, const std::vector<int>& distances) {
  if (int(f.size()) != bs.nb) throw SizeError("observable must have one value per block state");
  double shift = 0.0;
  for (double x : f) shift = std::min(shift, x);
  std::vector<double> g(f.size());
  for (size_t s = 0; s < f.size(); ++s) g[s] = f[s] - shift;
  std::vector<InfluenceRow> out;
  const TagMap any = TagMap::mask(kAnyTheta);
  for (int dist : distances) {
    if (dist < 1) throw SizeError("distance must be at least 1");
    const int n = dist + 1;  // observed block plus `dist` blocks before the right boundary
    auto expectation = [&](bool weighted) {
      Chain ch(bs);
      ch.start(left, theta_set(1));
      if (weighted) ch.weight(g);
      for (int i = 1; i < n; ++i) ch.step(theta_set(1), any);
      return ch.close({s1, s2}, theta_set(1), any);
    };
    auto zw = expectation(true), z = expectation(false);
    const double e1 = std::exp(zw[0][0] - z[0][0]), e2 = std::exp(zw[1][0] - z[1][0]);
    if (z[0][0] == kNegInf || z[1][0] == kNegInf) throw EmptyEnsembleError("no configuration for a boundary");
    out.push_back({dist, std::abs(e1 - e2)});
  }
  return out;
}

}  // namespace kac
