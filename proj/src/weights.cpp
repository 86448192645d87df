#include "kac/weights.hpp"

#include <cmath>

namespace kac {

const Eigen::MatrixXd& AtomKernel::atom(AtomKind k, int u) const {
  if (u < 1 || u > max_len) throw TableMissError("atom length outside the kernel table");
  if (k == AtomKind::plus || k == AtomKind::minus) return plus[u];
  if (u < 2) throw TableMissError("interfaces have length >= 2");
  return iface[u];
}

AtomKernel build_atom_kernel(const BlockSpace& bs, const BoundaryFit& fit, const InterfaceTable& t,
                             int max_len, double tilt) {
  if (fit.n_table < max_len - 2) throw TableMissError("boundary fit does not reach the kernel length");
  if (t.u_max < max_len) throw TableMissError("interface table does not reach the kernel length");
  AtomKernel k;
  k.d = fit.d;
  k.max_len = max_len;
  k.tilt = tilt;
  const int d = fit.d;
  const double beta = bs.p.beta;
  const double blp = beta * bs.lp;
  k.plus.assign(max_len + 1, Eigen::MatrixXd::Zero(d, d));
  k.K.assign(max_len + 1, Eigen::MatrixXd::Zero(d, d));
  k.eA.assign(max_len + 1, 0.0);
  k.iface.assign(max_len + 1, Eigen::MatrixXd::Zero(d, d));
  for (int u = 1; u <= max_len; ++u) {
    const double damp = -tilt * u;
    Eigen::MatrixXd& P = k.plus[u];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const int s = fit.states[i], s2 = fit.states[j];
        double v;
        if (u == 1) {
          if (i != j) continue;
          v = beta * bs.intra[s] + blp * fit.p_plus - fit.F1[i] - fit.F2[i];
        } else if (u == 2) {
          v = -beta * bs.W(s, s2) - fit.F1[i] - fit.F2[j];
        } else {
          v = fit.g(u - 2, i, j);
        }
        P(i, j) = std::exp(v + damp);
      }
    if (u >= 3) {
      k.eA[u] = std::exp(fit.A[u - 2] + damp);
      k.K[u] = (P.array() - k.eA[u]).cwiseMax(0.0).matrix();
    } else {
      k.K[u] = P;
    }
    if (u >= 2)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double v = t.v2(u, i, j);
          k.iface[u](i, j) = (v == kNegInf) ? 0.0 : std::exp(v + damp);
        }
  }
  return k;
}

double quadruple_weight(const Quadruple& u, const AtomKernel& k, double lambda) {
  if (!u.valid()) return 0.0;
  const int d = k.d;
  if (u.rows[0][0] > k.max_len) throw TableMissError("atom length outside the kernel table");
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Constant(d, k.eA[u.rows[0][0]]);
  for (size_t l = 0; l < u.rows.size(); ++l) {
    if (l > 0) {
      if (u.rows[l][0] > k.max_len) throw TableMissError("atom length outside the kernel table");
      row = row * k.K[u.rows[l][0]];
    }
    row = row * k.atom(AtomKind::iface_pm, u.rows[l][1]);
    row = row * k.atom(AtomKind::minus, u.rows[l][2]);
    row = row * k.atom(AtomKind::iface_mp, u.rows[l][3]);
  }
  return row.sum() * std::exp(-(lambda - k.tilt) * u.length());
}

namespace {
void enumerate_rec(int remaining, bool first, Quadruple& cur, std::vector<Quadruple>& out) {
  if (remaining == 0 && !first) {
    out.push_back(cur);
    return;
  }
  const int min1 = first ? 3 : 1;
  for (int a = min1; a + 5 <= remaining; ++a)
    for (int b = 2; a + b + 3 <= remaining; ++b)
      for (int c = 1; a + b + c + 2 <= remaining; ++c)
        for (int e = 2; a + b + c + e <= remaining; ++e) {
          cur.rows.push_back({a, b, c, e});
          enumerate_rec(remaining - a - b - c - e, false, cur, out);
          cur.rows.pop_back();
        }
}
}  // namespace

std::vector<Quadruple> enumerate_quadruples(int n) {
  std::vector<Quadruple> out;
  Quadruple cur;
  enumerate_rec(n, true, cur, out);
  return out;
}

double WeightTable::shell(int n, double lambda) const {
  if (n < 0 || n > R_trunc) return 0.0;
  return shells[n] * std::exp(-(lambda - tilt) * n);
}

double WeightTable::tail_mass(double lambda) const {
  double kappa = tail_delta + lambda - tilt;
  if (!(kappa > 0.0)) return INFINITY;
  double r = std::exp(-kappa);
  return tail_c * std::exp(-kappa * (R_trunc + 1)) / (1.0 - r);
}

double WeightTable::tail_moment(double lambda) const {
  double kappa = tail_delta + lambda - tilt;
  if (!(kappa > 0.0)) return INFINITY;
  double r = std::exp(-kappa);
  const double n0 = R_trunc + 1;
  // sum_{n >= n0} n r^n = r^n0 (n0 (1 - r) + r) / (1 - r)^2
  return tail_c * std::pow(r, n0) * (n0 * (1.0 - r) + r) / ((1.0 - r) * (1.0 - r));
}

double WeightTable::mass(double lambda) const {
  long double s = 0.0L;
  for (int n = 0; n <= R_trunc; ++n) s += shell(n, lambda);
  return double(s) + tail_mass(lambda);
}

double WeightTable::moment(double lambda) const {
  long double s = 0.0L;
  for (int n = 0; n <= R_trunc; ++n) s += (long double)n * shell(n, lambda);
  return double(s) + tail_moment(lambda);
}

std::vector<double> tilted_shells(const AtomKernel& k, int R) {
  const int d = k.d;
  using Row = Eigen::RowVectorXd;
  std::vector<Row> x(R + 1, Row::Zero(d)), y1(R + 1, Row::Zero(d)), y2(R + 1, Row::Zero(d)),
      y3(R + 1, Row::Zero(d));
  std::vector<double> S(R + 1, 0.0);
  const Row ones = Row::Ones(d);
  for (int n = 1; n <= R; ++n) {
    // x: right end of a plus interval; y1: after +- interface; y2: after minus; y3: after -+.
    if (n >= 3 && n <= k.max_len) x[n] += k.eA[n] * ones;
    for (int u = 1; u <= std::min(n - 1, k.max_len); ++u)
      if (y3[n - u].squaredNorm() > 0) x[n] += y3[n - u] * k.K[u];
    for (int u = 2; u <= std::min(n - 1, k.max_len); ++u)
      if (x[n - u].squaredNorm() > 0) y1[n] += x[n - u] * k.iface[u];
    for (int u = 1; u <= std::min(n - 1, k.max_len); ++u)
      if (y1[n - u].squaredNorm() > 0) y2[n] += y1[n - u] * k.plus[u];
    for (int u = 2; u <= std::min(n - 1, k.max_len); ++u)
      if (y2[n - u].squaredNorm() > 0) y3[n] += y2[n - u] * k.iface[u];
    S[n] = y3[n].sum();
  }
  return S;
}

double rough_lambda(const AtomKernel& k, int R) {
  auto S = tilted_shells(k, R);
  auto mass = [&](double l) {
    long double s = 0.0L;
    for (int n = 0; n <= R; ++n) s += S[n] * std::exp(-(l - k.tilt) * n);
    return double(s);
  };
  double lo = k.tilt - 1.0, hi = k.tilt + 1.0;
  for (int i = 0; i < 200 && mass(lo) < 1.0; ++i) lo -= 1.0;
  for (int i = 0; i < 200 && mass(hi) > 1.0; ++i) hi += 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mass(mid) > 1.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

WeightTable build_weight_table(const AtomKernel& k, int R_trunc, int R_enum) {
  if (R_trunc < 16) throw SizeError("R_trunc must be at least 16");
  if (R_trunc > k.max_len) throw TableMissError("kernel table shorter than R_trunc");
  WeightTable t;
  t.R_trunc = R_trunc;
  t.R_enum = std::min(R_enum, R_trunc);
  t.tilt = k.tilt;
  t.shells = tilted_shells(k, R_trunc);
  for (int n = 8; n <= t.R_enum; ++n)
    for (auto& u : enumerate_quadruples(n)) t.entries[u] = quadruple_weight(u, k, 0.0);
  // Least-squares line through log shells on the last quartile.
  const int lo = R_trunc - R_trunc / 4;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int n = lo; n <= R_trunc; ++n) {
    if (!(t.shells[n] > 0.0)) continue;
    double y = std::log(t.shells[n]);
    sx += n; sy += y; sxx += double(n) * n; sxy += n * y; ++m;
  }
  if (m < 2) {
    t.tail_c = 0.0;
    t.tail_delta = INFINITY;
    return t;
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double icpt = (sy - slope * sx) / m;
  if (!(slope < 0.0)) throw TruncationError("tilted shell sums are not decreasing");
  t.tail_delta = -slope;
  // Envelope: scale so the fit bounds every shell in the fitted range.
  double c = std::exp(icpt);
  for (int n = lo; n <= R_trunc; ++n) c = std::max(c, t.shells[n] * std::exp(t.tail_delta * n));
  t.tail_c = c;
  return t;
}

RenewalLaw solve_lambda(const WeightTable& t, double eps, double tol) {
  auto f = [&](double l) { return t.mass(l) - 1.0; };
  double lo = eps > 0 ? 0.5 * eps : 1e-3, hi = eps > 0 ? 1.5 * eps : 1.0;
  int expand = 0;
  while (f(lo) <= 0.0) {
    lo *= 0.5;
    if (++expand > 200 || lo < 1e-300) throw BracketError("no lower bracket for lambda");
  }
  expand = 0;
  while (!(f(hi) < 0.0)) {
    hi *= 2.0;
    if (++expand > 200) throw BracketError("no upper bracket for lambda");
  }
  RenewalLaw law;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    mid = 0.5 * (lo + hi);
    double v = f(mid);
    law.iterations = it + 1;
    if (std::abs(v) <= tol * 0.01 || hi - lo < 1e-16 * std::max(1.0, hi)) break;
    if (v > 0.0) lo = mid; else hi = mid;
  }
  law.lambda = mid;
  law.mass = t.mass(mid);
  law.tail = t.tail_mass(mid);
  law.truncated_mass = law.mass - law.tail;
  law.tail_moment = t.tail_moment(mid);
  law.alpha = 1.0 / t.moment(mid);
  law.eps = eps;
  law.lambda_over_eps = eps > 0 ? mid / eps : 0.0;
  law.alpha_over_half_eps = eps > 0 ? law.alpha / (0.5 * eps) : 0.0;
  law.shells.assign(t.R_trunc + 1, 0.0);
  for (int n = 0; n <= t.R_trunc; ++n) law.shells[n] = t.shell(n, mid);
  return law;
}

}  // namespace kac
