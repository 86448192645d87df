#pragma once
#include <Eigen/Dense>
#include <vector>

#include "kac/weights.hpp"

namespace kac {

// Matrix-valued generating polynomial indexed by total length in blocks.
using MatPoly = std::vector<Eigen::MatrixXd>;

MatPoly convolve(const MatPoly& a, const MatPoly& b, int n_max);

// Sum over one quadruple of atom products; `bare` puts K in the plus slot.
MatPoly quadruple_poly(const AtomKernel& k, int n_max, bool bare);

// log of sum_k (L / k) [z^L] Tr(Q^k).
double log_cyclic_trace(const MatPoly& q, int L);
// Scalar version for rod shells S[n]: log sum_k (L / k) [z^L] S^k.
double log_cyclic_scalar(const std::vector<double>& s, int L);

// Torus sums divided by exp(beta lp p+ L), as logs. All tilt factors are removed.
struct TorusAtomSums {
  int L = 0;
  double log_g = 0.0;            // all cyclic atom sequences
  double log_gb = 0.0;           // no plus atom carries the rank-one mark
  double log_gg_renewal = 0.0;   // cyclic rod sequences
};

TorusAtomSums torus_atom_sums(const AtomKernel& k, int L);

}  // namespace kac
