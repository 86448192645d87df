#pragma once
#include <vector>

#include "kac/boundary.hpp"

namespace kac {

// Plus interval [-m-1, 0], +- interface [1, n], minus interval [n+1, n+m+2] between
// boundary blocks b (theta = 1) and b2 (theta = -1); 2m + n + 2 interior blocks.
double log_split_sum(const BlockSpace& bs, int m, int n, int b, int b2);
// Same sum assembled from its three factors; used as an independent check.
double log_split_sum_product(const BlockSpace& bs, int m, int n, int b, int b2);

// log of A^{+-}_{m,n}(b, b2) / Z^+_{2m+n+2}(b, -b2).
double log_split_ratio(const BlockSpace& bs, int m, int n, int b, int b2);

struct SurfaceTension {
  int m = 0, n_max = 0;
  std::vector<double> ratio;  // ratio[n], n = 2..n_max, at the given m
  double tail = 0.0;          // geometric estimate for n > n_max
  double weight = 0.0;        // sum of ratios plus tail: exp(-beta phi)
  double phi = 0.0;
  double tolerance = 0.0;     // combined truncation tolerance, relative
};

// exp(-beta phi) from split ratios at fixed m; the tolerance combines the
// G_m-controlled bracket of each ratio with both geometric tails.
SurfaceTension surface_tension(const BlockSpace& bs, const BoundaryFit& fit, const InterfaceTable& t, int m,
                               int n_max, int b = -1, int b2 = -1);

struct InfluenceRow {
  int distance = 0;
  double gap = 0.0;
};

// |E[f | right = s1] - E[f | right = s2]| for f evaluated on the block next to the
// left boundary, theta = 1 on all blocks in between and `distance` blocks of separation.
std::vector<InfluenceRow> boundary_influence_decay(const BlockSpace& bs, const std::vector<double>& f, int left,
                                                   int s1, int s2, const std::vector<int>& distances);

}  // namespace kac
