#include "kac/assembly.hpp"

#include <cmath>

#include "kac/errors.hpp"
#include "kac/transfer.hpp"

namespace kac {

MatPoly convolve(const MatPoly& a, const MatPoly& b, int n_max) {
  const int d = int(a[0].rows());
  MatPoly c(n_max + 1, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < int(a.size()) && i <= n_max; ++i) {
    if (a[i].isZero(0.0)) continue;
    for (int j = 0; j < int(b.size()) && i + j <= n_max; ++j) {
      if (b[j].isZero(0.0)) continue;
      c[i + j].noalias() += a[i] * b[j];
    }
  }
  return c;
}

MatPoly quadruple_poly(const AtomKernel& k, int n_max, bool bare) {
  if (n_max > k.max_len) throw TableMissError("kernel table shorter than the torus");
  const int d = k.d;
  MatPoly plus(n_max + 1, Eigen::MatrixXd::Zero(d, d)), minus = plus, iface = plus;
  for (int u = 1; u <= n_max; ++u) {
    plus[u] = bare ? k.K[u] : k.plus[u];
    minus[u] = k.atom(AtomKind::minus, u);
    if (u >= 2) iface[u] = k.iface[u];
  }
  return convolve(convolve(convolve(plus, iface, n_max), minus, n_max), iface, n_max);
}

double log_cyclic_trace(const MatPoly& q, int L) {
  long double total = 0.0L;
  MatPoly pw = q;
  for (int k = 1; k <= L; ++k) {
    double tr = pw[L].trace();
    total += (long double)L / k * tr;
    bool more = false;
    for (int n = 0; n < L; ++n) more |= !pw[n].isZero(0.0);
    if (!more) break;
    pw = convolve(pw, q, L);
  }
  return total > 0.0L ? double(std::log(total)) : kNegInf;
}

double log_cyclic_scalar(const std::vector<double>& s, int L) {
  std::vector<long double> pw(L + 1, 0.0L);
  for (int n = 0; n <= L && n < int(s.size()); ++n) pw[n] = s[n];
  long double total = 0.0L;
  for (int k = 1; k <= L; ++k) {
    total += (long double)L / k * pw[L];
    std::vector<long double> next(L + 1, 0.0L);
    bool any = false;
    for (int i = 0; i <= L; ++i) {
      if (pw[i] == 0.0L) continue;
      for (int j = 1; i + j <= L && j < int(s.size()); ++j) next[i + j] += pw[i] * s[j];
    }
    for (auto x : next) any |= x != 0.0L;
    if (!any) break;
    pw.swap(next);
  }
  return total > 0.0L ? double(std::log(total)) : kNegInf;
}

TorusAtomSums torus_atom_sums(const AtomKernel& k, int L) {
  TorusAtomSums out;
  out.L = L;
  const double untilt = k.tilt * L;
  out.log_g = log_cyclic_trace(quadruple_poly(k, L, false), L) + untilt;
  out.log_gb = log_cyclic_trace(quadruple_poly(k, L, true), L) + untilt;
  out.log_gg_renewal = log_cyclic_scalar(tilted_shells(k, L), L) + untilt;
  return out;
}

}  // namespace kac
