#include "kac/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "kac/phase.hpp"

namespace kac {

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

double log_sum(const std::vector<double>& xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return m;
  long double s = 0.0L;
  for (double x : xs) s += std::exp((long double)(x - m));
  return m + double(std::log(s));
}

EnsembleConstraint EnsembleConstraint::free_chain(int n) {
  EnsembleConstraint c;
  c.kind = EnsembleKind::free;
  c.theta.assign(n, kAnyTheta);
  c.big_theta.assign(n, kAnyTheta);
  return c;
}

EnsembleConstraint EnsembleConstraint::plus_ensemble(int n) {
  EnsembleConstraint c = free_chain(n);
  c.kind = EnsembleKind::plus_ensemble;
  c.theta.assign(n, theta_set(1));
  return c;
}

EnsembleConstraint EnsembleConstraint::plus_interval(int n) {
  EnsembleConstraint c = free_chain(n);
  c.kind = EnsembleKind::plus_interval;
  c.theta[0] = theta_set(1);
  c.theta[n - 1] = theta_set(1);
  for (int i = 1; i + 1 < n; ++i) c.big_theta[i] = kNonNeg;
  return c;
}

EnsembleConstraint EnsembleConstraint::iface_pm(int n) {
  EnsembleConstraint c = free_chain(n);
  c.kind = EnsembleKind::iface_pm;
  // Intersect rather than overwrite: for n = 1 the set is empty.
  c.theta[0] = theta_set(1);
  c.theta[n - 1] &= theta_set(-1);
  c.big_theta.assign(n, theta_set(0));
  return c;
}

EnsembleConstraint EnsembleConstraint::iface_mp(int n) {
  EnsembleConstraint c = free_chain(n);
  c.kind = EnsembleKind::iface_mp;
  c.theta[0] = theta_set(-1);
  c.theta[n - 1] &= theta_set(1);
  c.big_theta.assign(n, theta_set(0));
  return c;
}

EnsembleConstraint EnsembleConstraint::theta_spec(const std::vector<int>& spec) {
  EnsembleConstraint c = free_chain(int(spec.size()));
  c.kind = EnsembleKind::theta_spec;
  for (size_t i = 0; i < spec.size(); ++i) c.theta[i] = theta_set(spec[i]);
  return c;
}

EnsembleConstraint EnsembleConstraint::custom(std::vector<ThetaSet> theta, std::vector<ThetaSet> big_theta) {
  EnsembleConstraint c;
  c.kind = EnsembleKind::custom;
  c.theta = std::move(theta);
  c.big_theta = std::move(big_theta);
  return c;
}

TagMap TagMap::mask(ThetaSet allowed) {
  TagMap m;
  m.ntags = 1;
  m.next.resize(1);
  for (int v = -1; v <= 1; ++v) m.next[0][v + 1] = contains(allowed, v) ? 0 : -1;
  return m;
}

Chain::Chain(const BlockSpace& b, int tags) : bs(&b), ntags(tags) {
  v.assign(size_t(b.nb) * 3 * tags, 0.0);
}

void Chain::renormalize() {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  if (m > 0.0) {
    for (double& x : v) x /= m;
    log_scale += std::log((long double)m);
  }
}

void Chain::weight(const std::vector<double>& f) {
  const size_t per = size_t(3) * ntags;
  for (int s = 0; s < bs->nb; ++s)
    for (size_t k = 0; k < per; ++k) v[size_t(s) * per + k] *= f[s];
}

void Chain::start(int s0, ThetaSet first_theta) {
  const BlockSpace& b = *bs;
  std::fill(v.begin(), v.end(), 0.0);
  log_scale = 0.0L;
  const int t0 = b.theta[s0];
  const size_t row = size_t(b.tail[s0]) * b.nh;
  for (int s = 0; s < b.nb; ++s) {
    if (!contains(first_theta, b.theta[s])) continue;
    v[idx(s, t0, 0)] = b.wintra[s] * b.ecross[row + b.head[s]];
  }
  renormalize();
}

void Chain::step(ThetaSet next_theta, const TagMap& m) {
  const BlockSpace& b = *bs;
  const int nh = b.nh;
  // U[(tn + 1) * 3 + (t + 1)][tag'][tail]: mass whose current block has theta t,
  // compatible with a next block of theta tn, after the tag update.
  std::vector<double> U(size_t(9) * ntags * nh, 0.0);
  for (int s = 0; s < b.nb; ++s) {
    const int t = b.theta[s];
    const int tl = b.tail[s];
    for (int tp = -1; tp <= 1; ++tp)
      for (int tag = 0; tag < ntags; ++tag) {
        double x = v[idx(s, tp, tag)];
        if (x == 0.0) continue;
        for (int tn = -1; tn <= 1; ++tn) {
          if (!contains(next_theta, tn)) continue;
          int nt = m.next[tag][big_theta_of(tp, t, tn) + 1];
          if (nt < 0) continue;
          U[((size_t((tn + 1) * 3 + (t + 1)) * ntags + nt) * nh) + tl] += x;
        }
      }
  }
  // C[(tn, t, tag)][head] = sum_tail U * E[tail][head]
  std::vector<double> C(size_t(9) * ntags * nh, 0.0);
  for (size_t g = 0; g < size_t(9) * ntags; ++g) {
    const double* u = &U[g * nh];
    bool any = false;
    for (int tl = 0; tl < nh; ++tl) any |= u[tl] != 0.0;
    if (!any) continue;
    double* c = &C[g * nh];
    for (int tl = 0; tl < nh; ++tl) {
      if (u[tl] == 0.0) continue;
      const double* e = &b.ecross[size_t(tl) * nh];
      for (int h = 0; h < nh; ++h) c[h] += u[tl] * e[h];
    }
  }
  std::fill(v.begin(), v.end(), 0.0);
  for (int s = 0; s < b.nb; ++s) {
    const int tn = b.theta[s];
    if (!contains(next_theta, tn)) continue;
    for (int t = -1; t <= 1; ++t)
      for (int tag = 0; tag < ntags; ++tag) {
        double c = C[(size_t((tn + 1) * 3 + (t + 1)) * ntags + tag) * nh + b.head[s]];
        if (c != 0.0) v[idx(s, t, tag)] = b.wintra[s] * c;
      }
  }
  renormalize();
}

std::vector<std::vector<double>> Chain::close(const std::vector<int>& rights, ThetaSet last_theta,
                                              const TagMap& m) const {
  const BlockSpace& b = *bs;
  const int nh = b.nh;
  // U[(theta_right + 1)][tag'][tail]
  std::vector<double> U(size_t(3) * m.ntags * nh, 0.0);
  for (int s = 0; s < b.nb; ++s) {
    const int t = b.theta[s];
    if (!contains(last_theta, t)) continue;
    for (int tp = -1; tp <= 1; ++tp)
      for (int tag = 0; tag < ntags; ++tag) {
        double x = v[idx(s, tp, tag)];
        if (x == 0.0) continue;
        for (int tr = -1; tr <= 1; ++tr) {
          int nt = m.next[tag][big_theta_of(tp, t, tr) + 1];
          if (nt < 0) continue;
          U[(size_t(tr + 1) * m.ntags + nt) * nh + b.tail[s]] += x;
        }
      }
  }
  std::vector<std::vector<double>> out(rights.size(), std::vector<double>(m.ntags, kNegInf));
  for (size_t j = 0; j < rights.size(); ++j) {
    const int sr = rights[j];
    const int tr = b.theta[sr];
    const int h = b.head[sr];
    for (int tag = 0; tag < m.ntags; ++tag) {
      long double z = 0.0L;
      const double* u = &U[(size_t(tr + 1) * m.ntags + tag) * nh];
      for (int tl = 0; tl < nh; ++tl) z += (long double)u[tl] * b.ecross[size_t(tl) * nh + h];
      if (z > 0.0L) out[j][tag] = double(std::log(z) + log_scale);
    }
  }
  return out;
}

void check_admissible(const BlockSpace& bs, int s0, int sr, const EnsembleConstraint& c) {
  const int t0 = bs.theta[s0], tr = bs.theta[sr];
  auto need = [&](int a, int b) {
    if (t0 != a || tr != b) throw AdmissibilityError("boundary theta values incompatible with the constraint");
  };
  switch (c.kind) {
    case EnsembleKind::plus_interval:
    case EnsembleKind::theta_spec: need(1, 1); break;
    case EnsembleKind::iface_pm: need(1, -1); break;
    case EnsembleKind::iface_mp: need(-1, 1); break;
    default: break;
  }
}

std::vector<double> restricted_log_z_all(const BlockSpace& bs, int s0, const std::vector<int>& rights,
                                         const EnsembleConstraint& c) {
  const int n = c.n();
  if (n < 1) throw SizeError("constraint needs at least one block");
  Chain ch(bs);
  ch.start(s0, c.theta[0]);
  for (int i = 1; i < n; ++i) ch.step(c.theta[i], TagMap::mask(c.big_theta[i - 1]));
  auto z = ch.close(rights, kAnyTheta, TagMap::mask(c.big_theta[n - 1]));
  std::vector<double> out(rights.size());
  for (size_t j = 0; j < rights.size(); ++j) out[j] = z[j][0];
  return out;
}

double restricted_log_z_raw(const BlockSpace& bs, int n, int s0, int sr, const EnsembleConstraint& c) {
  if (c.n() != n) throw SizeError("mask length does not match n");
  return restricted_log_z_all(bs, s0, {sr}, c)[0];
}

double restricted_log_z(const BlockSpace& bs, int n, int s0, int sr, const EnsembleConstraint& c) {
  if (n < 1) throw SizeError("n must be at least 1");
  check_admissible(bs, s0, sr, c);
  double z = restricted_log_z_raw(bs, n, s0, sr, c);
  if (z == kNegInf) throw EmptyEnsembleError("no configuration satisfies the constraint");
  return z;
}

std::vector<std::vector<double>> plus_interval_sweep(const BlockSpace& bs, int s0,
                                                     const std::vector<int>& rights, int n_max) {
  std::vector<std::vector<double>> out(n_max + 1, std::vector<double>(rights.size(), kNegInf));
  Chain ch(bs);
  ch.start(s0, theta_set(1));
  const TagMap any = TagMap::mask(kAnyTheta);
  const TagMap nonneg = TagMap::mask(kNonNeg);
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) ch.step(kAnyTheta, n - 1 >= 2 ? nonneg : any);
    auto z = ch.close(rights, theta_set(1), any);
    for (size_t j = 0; j < rights.size(); ++j) out[n][j] = z[j][0];
  }
  return out;
}

std::vector<std::vector<double>> iface_sweep(const BlockSpace& bs, int s0, const std::vector<int>& rights,
                                             int u_max, int sign) {
  std::vector<std::vector<double>> out(u_max + 1, std::vector<double>(rights.size(), kNegInf));
  Chain ch(bs);
  ch.start(s0, theta_set(sign));
  const TagMap zero = TagMap::mask(theta_set(0));
  for (int u = 1; u <= u_max; ++u) {
    if (u > 1) ch.step(kAnyTheta, zero);
    auto z = ch.close(rights, theta_set(-sign), zero);
    for (size_t j = 0; j < rights.size(); ++j) out[u][j] = z[j][0];
  }
  return out;
}

}  // namespace kac
