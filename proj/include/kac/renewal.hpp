#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kac/weights.hpp"

namespace kac {

// Consecutive atoms of kinds first, next(first), ... with the given lengths,
// the first one starting at x0. The left endpoint x0 + sum(lengths) of the
// following atom is implied.
struct LocalEvent {
  AtomKind first = AtomKind::plus;
  int x0 = 0;
  std::vector<int> lengths;

  int span() const;
  AtomKind kind(int i) const { return AtomKind((int(first) + i) % 4); }
  // False when some atom violates its minimum length.
  bool possible() const;
  LocalEvent flipped() const;
  LocalEvent shifted(int dx) const;
};
std::string event_str(const LocalEvent& e);
LocalEvent parse_event(const std::string& s);

// Linear partitions use absolute positions; cyclic ones compare positions mod size.
bool event_holds(const IntervalPartition& w, const LocalEvent& e);

// Atom matrices re-tilted to exp(-lambda u).
struct TiltedAtoms {
  int d = 0, R = 0;
  double lambda = 0.0;
  std::vector<Eigen::MatrixXd> plus, K, iface;
  std::vector<double> eA;
  TiltedAtoms(const AtomKernel& k, double lambda, int R);
  const Eigen::MatrixXd& full(AtomKind kind, int u) const { return int(kind) % 2 ? iface[u] : plus[u]; }
  // Plus atoms lose the rank-one mark part; other kinds are unchanged.
  const Eigen::MatrixXd& unmarked(AtomKind kind, int u) const { return kind == AtomKind::plus ? K[u] : full(kind, u); }
};

struct EventProbability {
  double p = 0.0;
  double residual = 0.0;  // bound on the mass of covers with a rod longer than R
  int R = 0;
};

// Stationary renewal probability of phi^{-1}(X*). Covers start at the last mark
// at or before x0 and end at the first mark at or after the implied endpoint;
// both partial ranges are truncated at R blocks.
EventProbability local_event_probability(const AtomKernel& k, const RenewalLaw& law, const LocalEvent& e, int R);

// Gibbs probability on a torus of L blocks from atom traces; log_pbc_rel is
// log Z^pbc - beta lp p+ L.
double torus_event_probability(const AtomKernel& k, const LocalEvent& e, int L, double log_pbc_rel);

// Exact sampler of rods under w_lambda, truncated at |u| <= R.
class RodSampler {
 public:
  RodSampler(const AtomKernel& k, const RenewalLaw& law, int R);
  Quadruple sample(std::mt19937_64& rng, bool length_biased) const;
  Quadruple sample_length(std::mt19937_64& rng, int n) const;
  const std::vector<double>& shells() const { return shells_; }
  int R() const { return R_; }

 private:
  TiltedAtoms t_;
  int R_;
  std::vector<std::vector<Eigen::VectorXd>> C_;  // [kind][n]: completions to the rod end
  std::vector<double> shells_, cum_, cum_biased_;
};

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

// Stationary rod sequence covering [0, window): the first rod is length biased
// with a uniform offset, later rods are i.i.d.
RodSequence sample_stationary_renewal(const RodSampler& s, int window, std::uint64_t seed);

}  // namespace kac
