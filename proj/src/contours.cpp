#include "kac/contours.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "kac/efp.hpp"
#include "kac/phase.hpp"
#include "kac/transfer.hpp"

namespace kac {

bool is_contour_spec(const ContourSpec& t) {
  const int n = int(t.size());
  if (n < 3 || t.front() != 1 || t.back() != 1) return false;
  for (int i = 0; i < n; ++i) {
    const int a = i == 0 ? 1 : t[i - 1], c = i + 1 == n ? 1 : t[i + 1];
    if (t[i] < -1 || t[i] > 1 || big_theta_of(a, t[i], c) != 0) return false;
  }
  return true;
}

std::vector<ContourSpec> enumerate_contours(int n) {
  if (n < 3 || n > 12) throw SizeError("contour supports need 3 <= n <= 12");
  std::vector<ContourSpec> out;
  ContourSpec t(n, -1);
  t.front() = t.back() = 1;
  // Odometer over the n - 2 free entries in lexicographic order.
  while (true) {
    if (is_contour_spec(t)) out.push_back(t);
    int i = n - 2;
    while (i >= 1 && t[i] == 1) t[i--] = -1;
    if (i < 1) break;
    ++t[i];
  }
  return out;
}

namespace {

void require_plus(const BlockSpace& bs, int sl, int sr) {
  if (bs.theta[sl] != 1 || bs.theta[sr] != 1) throw AdmissibilityError("contour boundaries need theta = 1");
}

double log_plus_chain(const BlockSpace& bs, int n, int sl, int sr) {
  return restricted_log_z_raw(bs, n, sl, sr, EnsembleConstraint::theta_spec(std::vector<int>(n, 1)));
}

EnsembleConstraint any_contour(int n) {
  std::vector<ThetaSet> theta(n, kAnyTheta), big(n, theta_set(0));
  theta.front() = theta.back() = theta_set(1);
  return EnsembleConstraint::custom(theta, big);
}

// Support weights keyed by (length, left boundary, right boundary).
struct SupportCache {
  const BlockSpace& bs;
  std::map<std::tuple<int, int, int>, double> memo;
  double operator()(int n, int sl, int sr) {
    auto key = std::make_tuple(n, sl, sr);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    return memo[key] = support_log_weight(bs, n, sl, sr);
  }
};

double log_xi(SupportCache& w, const std::vector<int>& chain, int lo, int hi, Compatibility c) {
  // Blocks lo+1..hi-1 of `chain` are the polymer region; F[i] covers supports in [lo+1, lo+i].
  const int n = hi - lo - 1;
  if (n < 3) return 0.0;
  std::vector<double> F(n + 1, 0.0);
  auto before = [&](int k) { return k <= 0 ? 0.0 : F[k]; };
  for (int i = 1; i <= n; ++i) {
    double f = before(i - 1);
    for (int a = 1; a + 2 <= i; ++a) {
      const double lw = w(i - a + 1, chain[lo + a - 1], chain[lo + i + 1]);
      if (lw == kNegInf) continue;
      f = log_add(f, lw + before(c == Compatibility::separated ? a - 2 : a - 1));
    }
    F[i] = f;
  }
  return F[n];
}

}  // namespace

double contour_log_weight(const BlockSpace& bs, const ContourSpec& theta, int sl, int sr) {
  require_plus(bs, sl, sr);
  if (!is_contour_spec(theta)) throw AdmissibilityError("not a contour spec");
  const int n = int(theta.size());
  const double num = restricted_log_z_raw(bs, n, sl, sr, EnsembleConstraint::theta_spec(theta));
  return num == kNegInf ? kNegInf : num - log_plus_chain(bs, n, sl, sr);
}

double contour_weight(const BlockSpace& bs, const ContourSpec& theta, int sl, int sr) {
  return std::exp(contour_log_weight(bs, theta, sl, sr));
}

double support_log_weight(const BlockSpace& bs, int n, int sl, int sr) {
  require_plus(bs, sl, sr);
  const double num = restricted_log_z_raw(bs, n, sl, sr, any_contour(n));
  return num == kNegInf ? kNegInf : num - log_plus_chain(bs, n, sl, sr);
}

double polymer_log_xi(const BlockSpace& bs, const std::vector<int>& chain, Compatibility c) {
  for (int s : chain)
    if (bs.theta[s] != 1) throw AdmissibilityError("polymer chains need theta = 1 on every block");
  SupportCache w{bs, {}};
  return log_xi(w, chain, 0, int(chain.size()) - 1, c);
}

PolymerReport polymer_partition(const BlockSpace& bs, int n, int s0, int sr, Compatibility c) {
  if (n < 1 || n > 8) throw SizeError("polymer partition enumeration needs 1 <= n <= 8");
  require_plus(bs, s0, sr);
  std::vector<int> plus;
  for (int s = 0; s < bs.nb; ++s)
    if (bs.theta[s] == 1) plus.push_back(s);
  const double count = std::pow(double(plus.size()), n);
  if (count > 5e6) throw SizeError("too many theta = 1 chains to enumerate");
  PolymerReport r;
  r.n = n;
  r.log_z_plus = restricted_log_z(bs, n, s0, sr, EnsembleConstraint::plus_interval(n));
  SupportCache w{bs, {}};
  std::vector<int> idx(n, 0), chain(n + 2);
  chain.front() = s0;
  chain.back() = sr;
  const double beta = bs.p.beta;
  double total = kNegInf;
  r.min_log_xi = INFINITY;
  while (true) {
    for (int i = 0; i < n; ++i) chain[i + 1] = plus[idx[i]];
    double e = 0.0;
    for (int i = 1; i <= n; ++i) e += bs.intra[chain[i]];
    for (int i = 0; i <= n; ++i) e += bs.W(chain[i], chain[i + 1]);
    const double lx = log_xi(w, chain, 0, n + 1, c);
    r.min_log_xi = std::min(r.min_log_xi, lx);
    total = log_add(total, lx - beta * e);
    ++r.chains;
    int k = n - 1;
    while (k >= 0 && ++idx[k] == int(plus.size())) idx[k--] = 0;
    if (k < 0) break;
  }
  r.log_z_polymer = total;
  r.rel_error = std::abs(std::expm1(r.log_z_polymer - r.log_z_plus));
  return r;
}

KpReport kp_diagnostic(const BlockSpace& bs, int n_pool, double b_prime) {
  if (n_pool < 3 || n_pool > 12) throw SizeError("contour pool needs 3 <= n_pool <= 12");
  KpReport r;
  r.n_pool = n_pool;
  r.b_prime = b_prime;
  r.sup_weight.assign(n_pool + 1, 0.0);
  r.spec_sum.assign(n_pool + 1, 0.0);
  std::vector<int> plus;
  for (int s = 0; s < bs.nb; ++s)
    if (bs.theta[s] == 1) plus.push_back(s);
  for (int N = 3; N <= n_pool; ++N) {
    std::vector<std::vector<double>> den;
    for (int sl : plus)
      den.push_back(restricted_log_z_all(bs, sl, plus, EnsembleConstraint::theta_spec(std::vector<int>(N, 1))));
    for (const auto& spec : enumerate_contours(N)) {
      double sup = kNegInf;
      for (size_t i = 0; i < plus.size(); ++i) {
        auto num = restricted_log_z_all(bs, plus[i], plus, EnsembleConstraint::theta_spec(spec));
        for (size_t j = 0; j < plus.size(); ++j)
          if (num[j] != kNegInf) sup = std::max(sup, num[j] - den[i][j]);
      }
      const double w = std::exp(sup);
      r.sup_weight[N] = std::max(r.sup_weight[N], w);
      r.spec_sum[N] += w;
    }
  }
  auto kp_sum = [&](double b) {
    double s = 0.0;
    for (int N = 3; N <= n_pool; ++N) s += N * std::exp(b * bs.R * N) * r.spec_sum[N];
    return s;
  };
  r.kp_sum = kp_sum(b_prime);
  r.kp_holds = r.kp_sum <= 1.0;
  if (kp_sum(0.0) > 1.0) {
    r.b_prime_threshold = std::nan("");
  } else {
    double lo = 0.0, hi = 1.0;
    while (kp_sum(hi) <= 1.0 && hi < 1e6) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (kp_sum(mid) <= 1.0 ? lo : hi) = mid;
    }
    r.b_prime_threshold = lo;
  }
  std::vector<double> xs, ys;
  for (int N = 3; N <= n_pool; ++N)
    if (r.sup_weight[N] > 0.0) {
      xs.push_back(N);
      ys.push_back(-std::log(r.sup_weight[N]));
    }
  if (xs.size() >= 2) std::tie(r.peierls_slope, r.peierls_r2) = fit_line(xs, ys);
  return r;
}

double PotentialTable::value(int a, int b) const {
  for (const auto& e : entries)
    if (e.a == a && e.b == b) return e.value;
  throw SizeError("interval outside the potential table");
}

PotentialTable extract_potentials(const BlockSpace& bs, const std::vector<int>& chain, Compatibility c) {
  const int m = int(chain.size());
  if (m < 2 || m > 16) throw SizeError("potential extraction needs 2 <= chain length <= 16");
  for (int s : chain)
    if (bs.theta[s] != 1) throw AdmissibilityError("potential boundary family needs theta = 1 blocks");
  PotentialTable t;
  t.n_max = m - 2;
  t.chain = chain;
  SupportCache w{bs, {}};
  const double beta = bs.p.beta;
  // g[a][b] = -(1/beta) log Xi over blocks a+1..b-1 of the chain.
  std::vector<std::vector<double>> g(m + 1, std::vector<double>(m + 1, 0.0));
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) g[a][b] = -log_xi(w, chain, a, b, c) / beta;
  auto G = [&](int a, int b) { return (a > b || a < 0 || b >= m) ? 0.0 : g[a][b]; };
  std::vector<std::vector<double>> u(m, std::vector<double>(m, 0.0));
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) u[a][b] = G(a, b) - G(a + 1, b) - G(a, b - 1) + G(a + 1, b - 1);
  std::map<int, double> max_abs;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      double s = 0.0;
      for (int a2 = a; a2 <= b; ++a2)
        for (int b2 = a2; b2 <= b; ++b2) s += u[a2][b2];
      PotentialEntry e{a, b, u[a][b], std::abs(s - g[a][b])};
      t.max_residual = std::max(t.max_residual, e.residual);
      t.entries.push_back(e);
      if (e.value != 0.0) max_abs[e.size()] = std::max(max_abs[e.size()], std::abs(e.value));
    }
  std::vector<double> xs, ys;
  for (auto [N, v] : max_abs) {
    xs.push_back(N);
    ys.push_back(std::log(v));
  }
  if (xs.size() >= 2) std::tie(t.decay_slope, t.decay_r2) = fit_line(xs, ys);
  return t;
}

PotentialTable extract_potentials(const BlockSpace& bs, int n_max) {
  return extract_potentials(bs, std::vector<int>(n_max + 2, bs.all_plus()));
}

std::string potential_table_tsv(const PotentialTable& t) {
  std::string out = "a\tb\tN\tvalue\tresidual\n";
  char buf[160];
  for (const auto& e : t.entries) {
    std::snprintf(buf, sizeof buf, "%d\t%d\t%d\t%.17g\t%.3g\n", e.a, e.b, e.size(), e.value, e.residual);
    out += buf;
  }
  return out;
}

}  // namespace kac
