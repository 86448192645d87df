#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "kac/params.hpp"
#include "kac/phase.hpp"
#include "kac/renewal.hpp"

namespace kac {

struct McConfig {
  int L = 0;  // torus size in blocks
  long sweeps = 0, burn_in = 0, thin = 1;
  std::uint64_t seed = 0;
  // Inverse temperature used for sampling; NaN means params.beta. Lets the
  // sampler run outside the beta > 1 range that ModelParams enforces.
  double beta = std::numeric_limits<double>::quiet_NaN();
};

// Sequential-sweep single-site Metropolis chain on the torus.
class MetropolisChain {
 public:
  MetropolisChain(const ModelParams& p, int L, std::uint64_t seed, double beta);
  void sweep();
  const Spins& sigma() const { return s_; }
  double energy() const { return energy_; }
  long sweeps() const { return sweeps_; }
  std::uint64_t accepted() const { return accepted_; }

 private:
  const ModelParams& p_;
  int N_;
  double beta_;
  Spins s_;
  double energy_;
  long sweeps_ = 0;
  std::uint64_t accepted_ = 0;
  std::mt19937_64 rng_;
};

struct SampleStream {
  int L = 0, N = 0;
  std::uint64_t seed = 0, params_hash = 0;
  std::vector<long> sweep;                   // sweep index of each sample
  std::vector<std::vector<std::int8_t>> sigma;
  std::vector<double> energy;
};

SampleStream run_metropolis(const ModelParams& p, const McConfig& c);

struct McEstimate {
  double mean = 0.0, stderr_ = 0.0, ess = 0.0, tau = 0.0;
  long n = 0;
};

// Windowed integrated autocorrelation with window rule M >= c tau.
McEstimate estimate_series(const std::vector<double>& x, double c = 6.0);

// Per-sample value: fraction of the L block translations at which X* holds.
std::vector<double> event_series(const ModelParams& p, const SampleStream& s, const LocalEvent& e);
McEstimate estimate_event(const ModelParams& p, const SampleStream& s, const LocalEvent& e);

struct GeometricFit {
  double p = 0.0, rate = 0.0;  // P(len = l) ~ (1 - p) p^(l - l_min), rate = -log p
  double chi2 = 0.0;
  int dof = 0;
  long n = 0;
};
GeometricFit fit_geometric_tail(const std::vector<int>& lengths, int l_min);

struct IntervalStats {
  std::vector<std::vector<long>> histogram;  // [kind][length]
  std::vector<std::vector<int>> lengths;     // [kind] raw lengths
  long class_counts[4] = {0, 0, 0, 0};       // indexed by PbcClass
  GeometricFit plus_tail, minus_tail;
};

IntervalStats interval_statistics(const ModelParams& p, const SampleStream& s, int tail_from = 3);

}  // namespace kac
