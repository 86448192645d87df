#include "kac/mcmc.hpp"

#include <algorithm>
#include <cmath>

#include "kac/errors.hpp"
#include "kac/renewal.hpp"

namespace kac {

MetropolisChain::MetropolisChain(const ModelParams& p, int L, std::uint64_t seed, double beta)
    : p_(p), N_(L * p.len_plus), beta_(beta), s_(N_), rng_(seed) {
  if (L < 1) throw SizeError("torus needs at least one block");
  for (int x = 0; x < N_; ++x) s_[x] = (rng_() >> 63) ? 1 : -1;
  energy_ = energy_pbc(p_, s_);
}

void MetropolisChain::sweep() {
  const int R = p_.range;
  for (int x = 0; x < N_; ++x) {
    double h = 0.0;
    for (int d = 1; d <= R; ++d) h += p_.coupling[d] * (s_[(x + d) % N_] + s_[(x - d + N_) % N_]);
    const double dE = 2.0 * s_[x] * h;
    // Ties are accepted with probability 1/2: an always-accepted zero-cost
    // flip lets a sequential sweep carry a deterministic wave forever.
    const double u = uniform01(rng_);
    const bool tie = std::abs(dE) <= 1e-12;
    if (tie ? u < 0.5 : (dE < 0.0 || u < std::exp(-beta_ * dE))) {
      s_[x] = -s_[x];
      energy_ += tie ? 0.0 : dE;
      ++accepted_;
    }
  }
  // Refresh the cached energy to remove accumulated drift.
  if (++sweeps_ % 64 == 0) energy_ = energy_pbc(p_, s_);
}

SampleStream run_metropolis(const ModelParams& p, const McConfig& c) {
  if (c.L * p.len_plus <= 2 * p.range) throw SizeError("torus too small for the interaction range");
  if (!(c.sweeps > c.burn_in) || c.thin < 1 || c.burn_in < 0) throw SizeError("need sweeps > burn_in >= 0, thin >= 1");
  const double beta = std::isnan(c.beta) ? p.beta : c.beta;
  MetropolisChain chain(p, c.L, c.seed, beta);
  SampleStream out;
  out.L = c.L;
  out.N = c.L * p.len_plus;
  out.seed = c.seed;
  out.params_hash = params_hash(p);
  for (long t = 1; t <= c.sweeps; ++t) {
    chain.sweep();
    if (t > c.burn_in && (t - c.burn_in) % c.thin == 0) {
      out.sweep.push_back(t);
      out.sigma.emplace_back(chain.sigma().begin(), chain.sigma().end());
      out.energy.push_back(chain.energy());
    }
  }
  return out;
}

McEstimate estimate_series(const std::vector<double>& x, double c) {
  McEstimate e;
  e.n = long(x.size());
  if (x.empty()) return e;
  long double m = 0.0L;
  for (double v : x) m += v;
  e.mean = double(m / x.size());
  const size_t n = x.size();
  double var = 0.0;
  for (double v : x) var += (v - e.mean) * (v - e.mean);
  var /= n;
  if (!(var > 0.0) || n < 2) {
    e.tau = 1.0;
    e.ess = double(n);
    e.stderr_ = 0.0;
    return e;
  }
  double tau = 1.0;
  for (size_t t = 1; t < n; ++t) {
    double a = 0.0;
    for (size_t i = 0; i + t < n; ++i) a += (x[i] - e.mean) * (x[i + t] - e.mean);
    tau += 2.0 * a / (n * var);
    if (double(t) >= c * tau) break;
  }
  e.tau = std::max(tau, 1.0);
  e.ess = n / e.tau;
  e.stderr_ = std::sqrt(var * e.tau / n);
  return e;
}

namespace {

IntervalPartition partition_of(const ModelParams& p, const std::vector<std::int8_t>& s, PbcClass& cls,
                               std::vector<int>& big) {
  Spins sigma(s.begin(), s.end());
  auto labels = phase_labels(sigma, p, true);
  big = labels.big_theta;
  cls = classify_pbc(big);
  if (cls != PbcClass::g) return {};
  return decompose(big, true);
}

}  // namespace

std::vector<double> event_series(const ModelParams& p, const SampleStream& s, const LocalEvent& e) {
  if (e.span() + 2 * 2 > s.L) throw WindowError("event window needs a margin of two blocks in the torus");
  std::vector<double> out;
  out.reserve(s.sigma.size());
  std::vector<int> big;
  for (const auto& sig : s.sigma) {
    PbcClass cls;
    auto w = partition_of(p, sig, cls, big);
    if (cls != PbcClass::g) {
      out.push_back(0.0);
      continue;
    }
    // Atoms matching the pattern, counted once per starting atom.
    int hits = 0;
    for (const Atom& a : w.atoms) {
      if (a.kind != e.first) continue;
      if (event_holds(w, e.shifted(a.left - e.x0))) ++hits;
    }
    out.push_back(double(hits) / s.L);
  }
  return out;
}

McEstimate estimate_event(const ModelParams& p, const SampleStream& s, const LocalEvent& e) {
  return estimate_series(event_series(p, s, e));
}

GeometricFit fit_geometric_tail(const std::vector<int>& lengths, int l_min) {
  GeometricFit f;
  long double excess = 0.0L;
  std::vector<long> hist;
  for (int l : lengths) {
    if (l < l_min) continue;
    ++f.n;
    excess += l - l_min;
    if (int(hist.size()) <= l - l_min) hist.resize(l - l_min + 1, 0);
    ++hist[l - l_min];
  }
  if (f.n == 0) return f;
  const double mean = double(excess / f.n);
  f.p = mean / (1.0 + mean);
  f.rate = f.p > 0.0 ? -std::log(f.p) : INFINITY;
  // Pearson statistic over bins with expected count >= 5, last bin pooled.
  double pooled_obs = double(f.n), pooled_exp = double(f.n);
  int bins = 0;
  for (size_t k = 0; k < hist.size(); ++k) {
    const double ex = f.n * (1.0 - f.p) * std::pow(f.p, double(k));
    if (ex < 5.0) break;
    f.chi2 += (hist[k] - ex) * (hist[k] - ex) / ex;
    pooled_obs -= hist[k];
    pooled_exp -= ex;
    ++bins;
  }
  if (pooled_exp > 0.0) {
    f.chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++bins;
  }
  f.dof = std::max(0, bins - 2);
  return f;
}

IntervalStats interval_statistics(const ModelParams& p, const SampleStream& s, int tail_from) {
  IntervalStats st;
  st.histogram.assign(4, {});
  st.lengths.assign(4, {});
  std::vector<int> big;
  for (const auto& sig : s.sigma) {
    PbcClass cls;
    auto w = partition_of(p, sig, cls, big);
    ++st.class_counts[int(cls)];
    if (cls != PbcClass::g) continue;
    for (const Atom& a : w.atoms) {
      auto& h = st.histogram[int(a.kind)];
      if (int(h.size()) <= a.length) h.resize(a.length + 1, 0);
      ++h[a.length];
      st.lengths[int(a.kind)].push_back(a.length);
    }
  }
  st.plus_tail = fit_geometric_tail(st.lengths[0], tail_from);
  st.minus_tail = fit_geometric_tail(st.lengths[2], tail_from);
  return st;
}

}  // namespace kac
