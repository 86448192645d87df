#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "kac/weights.hpp"

namespace kac {

// Step law on integers >= 8; q[u] for u = 0..max_step.
struct StepDistribution {
  std::vector<double> q;
  int max_step() const { return int(q.size()) - 1; }
  int min_step() const;
  double mean() const;
  double tail(int n) const;  // sum_{u >= n} q(u)
  int gcd() const;
};

StepDistribution make_step_distribution(const std::map<int, double>& q);
// Shell probabilities of a renewal law, renormalized over |u| <= R_trunc.
StepDistribution step_distribution_from_law(const RenewalLaw& law);

struct EfpResult {
  std::vector<double> h;   // h[n] = P[0 in X | X_0 = -n], n = 0..n_max
  double limit = 0.0;      // 1 / mean
  double mean = 0.0;
  bool periodic = false;
  // max over N <= n_max of |sum_{j=1}^{N} h(N - j) tail(j) - 1|
  double identity_error = 0.0;
  // log-linear fit of the windowed envelope of |h(n) - limit|
  double decay_rate = 0.0, decay_r2 = 0.0;
  int fit_lo = 0, fit_hi = 0;
};

// Renewal recursion h(n) = sum_u q(u) h(n - u), h(0) = 1. Throws
// PeriodicSupportWarning for gcd > 1 unless allow_periodic is set.
EfpResult efp_dp(const StepDistribution& q, int n_max, bool allow_periodic = false);

struct CouplingResult {
  int trials = 0;
  int met = 0;  // trials whose chains met with X_nbar = Y_mbar and a common suffix
  std::vector<std::int64_t> sums;  // z_1 + ... + z_{n+} per trial
  std::vector<int> t;              // tail grid
  std::vector<double> tail;        // empirical P[sum > t]
  double rate = 0.0, r2 = 0.0;     // log-linear fit of the tail
};

// Alternating-target overshoot coupling of two renewal walks from x0 and y0.
CouplingResult efp_coupling(const StepDistribution& q, std::int64_t x0, std::int64_t y0, std::uint64_t seed,
                            int trials);

// Least-squares line y = a + b x; returns {b, r2}.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace kac
