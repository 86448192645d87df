#include "kac/efp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kac/errors.hpp"
#include "kac/renewal.hpp"

namespace kac {

int StepDistribution::min_step() const {
  for (int u = 0; u <= max_step(); ++u)
    if (q[u] > 0.0) return u;
  return 0;
}

double StepDistribution::mean() const {
  long double m = 0.0L;
  for (int u = 0; u <= max_step(); ++u) m += (long double)u * q[u];
  return double(m);
}

double StepDistribution::tail(int n) const {
  long double s = 0.0L;
  for (int u = std::max(n, 0); u <= max_step(); ++u) s += q[u];
  return double(s);
}

int StepDistribution::gcd() const {
  int g = 0;
  for (int u = 0; u <= max_step(); ++u)
    if (q[u] > 0.0) g = std::gcd(g, u);
  return g;
}

StepDistribution make_step_distribution(const std::map<int, double>& q) {
  StepDistribution s;
  if (q.empty()) throw ParamError("step distribution is empty");
  s.q.assign(q.rbegin()->first + 1, 0.0);
  long double total = 0.0L;
  for (auto [u, p] : q) {
    if (u < 8) throw ParamError("steps must be at least 8");
    if (!(p >= 0.0)) throw ParamError("step probabilities must be nonnegative");
    s.q[u] = p;
    total += p;
  }
  if (std::abs(double(total) - 1.0) > 1e-12) throw ParamError("step probabilities must sum to 1");
  return s;
}

StepDistribution step_distribution_from_law(const RenewalLaw& law) {
  StepDistribution s;
  s.q = law.shells;
  long double total = 0.0L;
  for (double x : s.q) total += x;
  for (double& x : s.q) x = double(x / total);
  return s;
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i]; syy += y[i] * y[i];
  }
  const double cxx = sxx - sx * sx / n, cxy = sxy - sx * sy / n, cyy = syy - sy * sy / n;
  if (!(cxx > 0.0) || !(cyy > 0.0)) return {0.0, 0.0};
  return {cxy / cxx, cxy * cxy / (cxx * cyy)};
}

EfpResult efp_dp(const StepDistribution& q, int n_max, bool allow_periodic) {
  EfpResult r;
  r.periodic = q.gcd() > 1;
  if (r.periodic && !allow_periodic) throw PeriodicSupportWarning("step support has gcd > 1; h(n) has no limit");
  r.mean = q.mean();
  r.limit = 1.0 / r.mean;
  r.h.assign(n_max + 1, 0.0);
  r.h[0] = 1.0;
  const int umax = q.max_step();
  for (int n = 1; n <= n_max; ++n) {
    long double s = 0.0L;
    for (int u = q.min_step(); u <= std::min(n, umax); ++u) s += (long double)q.q[u] * r.h[n - u];
    r.h[n] = double(s);
  }
  // Exact at every finite start: the walk from -N crosses 0 exactly once.
  std::vector<double> tails(umax + 2, 0.0);
  for (int u = umax; u >= 0; --u) tails[u] = tails[u + 1] + q.q[u];
  for (int N = 1; N <= n_max; ++N) {
    long double s = 0.0L;
    for (int j = 1; j <= std::min(N, umax); ++j) s += (long double)r.h[N - j] * tails[j];
    r.identity_error = std::max(r.identity_error, std::abs(double(s) - 1.0));
  }
  if (r.periodic) return r;
  // Envelope over windows of length umax, fitted until it reaches roundoff.
  std::vector<double> xs, ys;
  const int w = std::max(umax, 1);
  for (int lo = w; lo + w <= n_max; lo += w) {
    double m = 0.0;
    for (int n = lo; n < lo + w; ++n) m = std::max(m, std::abs(r.h[n] - r.limit));
    if (m < 1e-13) break;
    xs.push_back(lo + 0.5 * w);
    ys.push_back(std::log(m));
  }
  if (xs.size() >= 3) {
    auto [b, r2] = fit_line(xs, ys);
    r.decay_rate = -b;
    r.decay_r2 = r2;
    r.fit_lo = int(xs.front());
    r.fit_hi = int(xs.back());
  }
  return r;
}

namespace {

struct StepSampler {
  std::vector<double> cum;
  int lo;
  explicit StepSampler(const StepDistribution& q) : lo(q.min_step()) {
    cum.assign(q.q.size(), 0.0);
    double c = 0.0;
    for (size_t u = 0; u < q.q.size(); ++u) cum[u] = (c += q.q[u]);
  }
  int operator()(std::mt19937_64& rng) const {
    const double x = uniform01(rng) * cum.back();
    int u = int(std::upper_bound(cum.begin(), cum.end(), x) - cum.begin());
    return std::clamp(u, lo, int(cum.size()) - 1);
  }
};

}  // namespace

CouplingResult efp_coupling(const StepDistribution& q, std::int64_t x0, std::int64_t y0, std::uint64_t seed,
                            int trials) {
  if (q.gcd() > 1) throw PeriodicSupportWarning("coupling needs aperiodic steps");
  const int gap = q.min_step();  // overshoots in 1..gap-1 cannot be hit by the other walk
  StepSampler draw(q);
  std::mt19937_64 rng(seed);
  CouplingResult out;
  out.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    std::int64_t X = x0, Y = y0, sum = 0;
    // The walk behind shoots at the one ahead; z is its overshoot.
    while (X != Y) {
      std::int64_t& shooter = Y < X ? Y : X;
      const std::int64_t target = Y < X ? X : Y;
      while (shooter < target) shooter += draw(rng);
      if (shooter > target && shooter - target < gap) shooter += draw(rng);
      sum += shooter - target;
    }
    // Meeting point equals the first target plus the summed overshoots, and
    // after meeting both walks take identical steps.
    bool ok = X - std::max(x0, y0) == sum;
    std::int64_t xs = X, ys = Y;
    for (int i = 0; i < 4; ++i) {
      const int u = draw(rng);
      xs += u;
      ys += u;
      ok &= xs == ys;
    }
    if (ok) ++out.met;
    out.sums.push_back(sum);
  }
  // Empirical tail on a grid up to the level where fewer than 20 trials remain.
  std::vector<std::int64_t> sorted = out.sums;
  std::sort(sorted.begin(), sorted.end());
  const std::int64_t step = std::max<std::int64_t>(1, q.max_step());
  std::vector<double> xs, ys;
  for (std::int64_t t = 0;; t += step) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
    if (above < 20) break;
    const double p = double(above) / trials;
    out.t.push_back(int(t));
    out.tail.push_back(p);
    if (t > 0) {
      xs.push_back(double(t));
      ys.push_back(std::log(p));
    }
  }
  if (xs.size() >= 3) {
    auto [bslope, r2] = fit_line(xs, ys);
    out.rate = -bslope;
    out.r2 = r2;
  }
  return out;
}

}  // namespace kac
