#pragma once
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "kac/blocks.hpp"
#include "kac/errors.hpp"

namespace kac {

// theta values on a support of n >= 3 blocks with theta_1 = theta_n = 1 and
// Theta_i = 0 on every block, reading theta_0 = theta_{n+1} = 1.
using ContourSpec = std::vector<int>;

struct Contour {
  int left = 0;  // first block of the support
  ContourSpec theta;
  int length() const { return int(theta.size()); }
  int right() const { return left + length() - 1; }
};

bool is_contour_spec(const ContourSpec& theta);
// All contour specs on an n-block support, n in 3..12, in lexicographic order.
std::vector<ContourSpec> enumerate_contours(int n);

// log W(Gamma | s_left, s_right): spec-constrained sum over the support divided
// by the theta = 1 sum between the same boundary blocks. -inf when empty.
double contour_log_weight(const BlockSpace& bs, const ContourSpec& theta, int s_left, int s_right);
double contour_weight(const BlockSpace& bs, const ContourSpec& theta, int s_left, int s_right);
// log of the sum of W over every spec on an n-block support.
double support_log_weight(const BlockSpace& bs, int n, int s_left, int s_right);

// Separated supports leave at least one block between two contours, which is
// the gap a Theta = 1 block needs. Disjoint only forbids overlap.
enum class Compatibility { separated, disjoint };

// log Xi over blocks 1..n of a theta = 1 chain given as blocks 0..n+1.
double polymer_log_xi(const BlockSpace& bs, const std::vector<int>& chain,
                      Compatibility c = Compatibility::separated);

struct PolymerReport {
  int n = 0;
  long chains = 0;
  double log_z_plus = 0.0;     // constrained transfer sum
  double log_z_polymer = 0.0;  // sum over theta = 1 chains of Xi exp(-beta H)
  double rel_error = 0.0;
  double min_log_xi = 0.0;
};

// Checks the polymer representation of Z^+_n(s0, s_{n+1}); n <= 8.
PolymerReport polymer_partition(const BlockSpace& bs, int n, int s0, int s_right,
                                Compatibility c = Compatibility::separated);

struct KpReport {
  int n_pool = 0;
  double b_prime = 0.0;
  std::vector<double> sup_weight;  // [N] max over specs and boundary pairs, N = 3..n_pool
  std::vector<double> spec_sum;    // [N] sum over specs of the boundary supremum
  double kp_sum = 0.0;             // sum_{Gamma containing x} exp(b' range N) sup W
  bool kp_holds = false;
  double b_prime_threshold = 0.0;  // largest b' with kp_sum <= 1; NaN if none
  double peierls_slope = 0.0, peierls_r2 = 0.0;
};

KpReport kp_diagnostic(const BlockSpace& bs, int n_pool, double b_prime);

struct PotentialEntry {
  int a = 0, b = 0;  // interval [a, b] of blocks, N = b - a + 1
  double value = 0.0;
  double residual = 0.0;  // reconstruction error of -(1/beta) log Xi over [a+1, b-1]
  int size() const { return b - a + 1; }
};

struct PotentialTable {
  int n_max = 0;
  std::vector<int> chain;  // boundary family: theta = 1 blocks 0..n_max+1
  std::vector<PotentialEntry> entries;
  double max_residual = 0.0;
  double decay_slope = 0.0, decay_r2 = 0.0;  // log max |u| vs N over populated sizes
  double value(int a, int b) const;
};

PotentialTable extract_potentials(const BlockSpace& bs, const std::vector<int>& chain,
                                  Compatibility c = Compatibility::separated);
// Constant chain of the all-plus block.
PotentialTable extract_potentials(const BlockSpace& bs, int n_max);

std::string potential_table_tsv(const PotentialTable& t);

}  // namespace kac
