#pragma once
#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "kac/blocks.hpp"

namespace kac {

// Set of allowed values in {-1, 0, +1}: bit (v + 1).
using ThetaSet = std::uint8_t;
constexpr ThetaSet kAnyTheta = 7;
constexpr ThetaSet theta_set(int v) { return ThetaSet(1u << (v + 1)); }
constexpr ThetaSet kNonNeg = theta_set(0) | theta_set(1);
constexpr ThetaSet kNonPos = theta_set(0) | theta_set(-1);
inline bool contains(ThetaSet m, int v) { return (m >> (v + 1)) & 1u; }

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class EnsembleKind { free, plus_ensemble, plus_interval, iface_pm, iface_mp, theta_spec, custom };

// Per-block masks for blocks 1..n; Theta_1 and Theta_n read the boundary theta.
struct EnsembleConstraint {
  EnsembleKind kind = EnsembleKind::free;
  std::vector<ThetaSet> theta;
  std::vector<ThetaSet> big_theta;
  int n() const { return int(theta.size()); }

  static EnsembleConstraint free_chain(int n);
  static EnsembleConstraint plus_ensemble(int n);
  static EnsembleConstraint plus_interval(int n);
  static EnsembleConstraint iface_pm(int n);
  static EnsembleConstraint iface_mp(int n);
  static EnsembleConstraint theta_spec(const std::vector<int>& spec);
  static EnsembleConstraint custom(std::vector<ThetaSet> theta, std::vector<ThetaSet> big_theta);
};

// Tag automaton driven by Theta values: next[tag][Theta + 1], -1 rejects.
struct TagMap {
  int ntags = 1;
  std::vector<std::array<int, 3>> next;
  static TagMap mask(ThetaSet allowed);
};

// Row vector over (block state, theta of previous block, tag) with a log scale.
struct Chain {
  const BlockSpace* bs = nullptr;
  int ntags = 1;
  std::vector<double> v;  // index (s * 3 + theta_prev + 1) * ntags + tag
  long double log_scale = 0.0L;

  Chain(const BlockSpace& b, int tags = 1);
  size_t idx(int s, int tp, int tag) const { return (size_t(s) * 3 + (tp + 1)) * ntags + tag; }
  // Block 1 after boundary s0.
  void start(int s0, ThetaSet first_theta);
  // Appends block i+1 and applies `m` to Theta_i.
  void step(ThetaSet next_theta, const TagMap& m);
  // log Z for each right boundary; filters theta(s_n) and applies `m` to Theta_n.
  // Result indexed [right][tag].
  std::vector<std::vector<double>> close(const std::vector<int>& rights, ThetaSet last_theta,
                                         const TagMap& m) const;
  void renormalize();
  // Multiplies the mass of every current block s by f[s] >= 0.
  void weight(const std::vector<double>& f);
};

// log of the constrained Boltzmann sum over n blocks between s0 and s_right.
// Throws AdmissibilityError / EmptyEnsembleError.
double restricted_log_z(const BlockSpace& bs, int n, int s0, int s_right, const EnsembleConstraint& c);
// Same without throwing on an empty ensemble (returns -inf).
double restricted_log_z_raw(const BlockSpace& bs, int n, int s0, int s_right, const EnsembleConstraint& c);
// All right boundaries at once; rights given by the caller.
std::vector<double> restricted_log_z_all(const BlockSpace& bs, int s0, const std::vector<int>& rights,
                                         const EnsembleConstraint& c);
void check_admissible(const BlockSpace& bs, int s0, int s_right, const EnsembleConstraint& c);

// log Z^+_n(s0, s') for n = 1..n_max and every s' in rights: out[n][j].
std::vector<std::vector<double>> plus_interval_sweep(const BlockSpace& bs, int s0,
                                                     const std::vector<int>& rights, int n_max);
// log Z^{+-}_u(s0, s') for u = 1..u_max: out[u][j] (u = 1 is always -inf).
std::vector<std::vector<double>> iface_sweep(const BlockSpace& bs, int s0, const std::vector<int>& rights,
                                             int u_max, int sign);

double log_add(double a, double b);
double log_sum(const std::vector<double>& xs);

}  // namespace kac
