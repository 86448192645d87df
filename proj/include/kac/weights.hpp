#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "kac/boundary.hpp"
#include "kac/phase.hpp"

namespace kac {

// exp(V^m_u) matrices over admissible boundary states. Minus states are
// indexed through the spin flip, which makes the minus-interval matrices
// equal to the plus ones and the -+ interface matrices equal to the +- ones.
// Every atom of length u carries the extra factor exp(-tilt u).
struct AtomKernel {
  int d = 0;
  int max_len = 0;
  double tilt = 0.0;
  // Per-atom constant factor exp(beta lp p+) is not included: weights are
  // relative to the plus pressure.
  std::vector<Eigen::MatrixXd> plus;   // exp(V^1_u), u = 1..max_len
  std::vector<Eigen::MatrixXd> K;      // K_u (curly bracket for u >= 3)
  std::vector<double> eA;              // exp(A_{u-2}), u >= 3
  std::vector<Eigen::MatrixXd> iface;  // exp(V^2_u), u = 2..max_len

  const Eigen::MatrixXd& atom(AtomKind k, int u) const;
};

AtomKernel build_atom_kernel(const BlockSpace& bs, const BoundaryFit& fit, const InterfaceTable& t,
                             int max_len, double tilt);

// w_lambda(u) = exp(-lambda |u|) w(u), from the explicit product over u's atoms.
double quadruple_weight(const Quadruple& u, const AtomKernel& k, double lambda = 0.0);

// All elements of the rod set with |u| = n.
std::vector<Quadruple> enumerate_quadruples(int n);

struct WeightTable {
  int R_trunc = 0;
  int R_enum = 0;
  double tilt = 0.0;
  std::vector<double> shells;          // tilted shell sums exp(-tilt n) sum_{|u|=n} w(u)
  std::map<Quadruple, double> entries; // w(u), |u| <= R_enum
  double tail_c = 0.0, tail_delta = 0.0;  // tilted shells ~ c exp(-delta n) on the last quartile
  std::uint64_t params_hash = 0, fit_hash = 0;

  double shell(int n, double lambda) const;
  double tail_mass(double lambda) const;
  double tail_moment(double lambda) const;
  double mass(double lambda) const;    // including the tail estimate
  double moment(double lambda) const;  // sum w_lambda(u) |u| including the tail
};

// exp(-tilt n) sum_{|u| = n} w(u) for n <= R by a DP over atom boundaries.
std::vector<double> tilted_shells(const AtomKernel& k, int R);
// Root of the truncated (tail-free) normalization; used to pick a tilt.
double rough_lambda(const AtomKernel& k, int R);

// Shell sums by a position DP over atoms; explicit entries up to R_enum.
WeightTable build_weight_table(const AtomKernel& k, int R_trunc, int R_enum = 24);

struct RenewalLaw {
  double lambda = 0.0;
  double alpha = 0.0;
  double mass = 0.0;           // sum w_lambda including tail
  double truncated_mass = 0.0; // without tail
  double tail = 0.0;
  double tail_moment = 0.0;    // sum over |u| > R_trunc of |u| w_lambda(u), estimated
  double eps = 0.0;            // interface weight used for the diagnostics
  double lambda_over_eps = 0.0;
  double alpha_over_half_eps = 0.0;
  std::vector<double> shells;  // w_lambda shells, index |u|
  int iterations = 0;
};

// Bisection on lambda -> sum w_lambda starting from [eps/2, 3 eps/2].
RenewalLaw solve_lambda(const WeightTable& t, double eps, double tol = 1e-10);

}  // namespace kac
