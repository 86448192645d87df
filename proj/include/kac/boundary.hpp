#pragma once
#include <cstdint>
#include <vector>

#include "kac/blocks.hpp"
#include "kac/transfer.hpp"

namespace kac {

// Fitted factorization log Z^+_n(s, s') = beta lp n p + F1(s) + F2(s') + G_n(s, s').
// Tables are indexed by position in BlockSpace::plus_states; the minus
// counterparts use the same index through the spin flip.
struct BoundaryFit {
  int n_min = 0, n_max = 0, n_table = 0;
  int gauge_ref = 0;  // block pattern of the reference state r
  double p_plus = 0.0;
  int d = 0;
  std::vector<int> states;
  std::vector<double> F1, F2;
  std::vector<std::vector<double>> logZ;  // [n][i * d + j], n = 1..n_table
  std::vector<std::vector<double>> G;     // same layout
  std::vector<double> A;                  // A[n] = min G_n
  std::uint64_t params_hash = 0;

  double F3(int i) const { return F1[i]; }
  double F4(int i) const { return F2[i]; }
  double g(int n, int i, int j) const { return G[n][size_t(i) * d + j]; }
  // sup over boundary pairs of |G_n|.
  double sup_abs_G(int n) const;
  std::uint64_t hash() const;
};

// gauge_ref < 0 selects the all-plus block; n_table >= n_max sets how far G is tabulated.
BoundaryFit fit_boundary(const BlockSpace& bs, int n_min, int n_max, int n_table = 0, int gauge_ref = -1);

// Interface weights. logZ[u][i * d + j] = log Z^{+-}_u(plus_states[i], minus_states[j]).
struct InterfaceTable {
  int u_max = 0;
  int d = 0;
  std::vector<std::vector<double>> logZ;
  std::vector<std::vector<double>> V2;
  std::vector<double> eps;  // eps[u], u >= 2

  double v2(int u, int i, int j) const { return V2[u][size_t(i) * d + j]; }
};

InterfaceTable interface_table(const BlockSpace& bs, const BoundaryFit& fit, int u_max);

// Same construction from the -+ side (V^4 with F4, F1), used as a symmetry check.
std::vector<double> interface_eps_mirror(const BlockSpace& bs, const BoundaryFit& fit, int u_max);

struct EpsTotal {
  double eps = 0.0;
  double tail = 0.0;   // geometric estimate of sum over u > u_max
  int u_max = 0;
};
// Throws TruncationError if tail > tol * eps or the tail is not contracting.
EpsTotal eps_total(const InterfaceTable& t, double tol);

}  // namespace kac
