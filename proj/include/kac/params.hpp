#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "kac/errors.hpp"

namespace kac {

// Shape of the Kac kernel on [0,1] before normalization.
enum class Kernel { triangular, uniform, parabolic };

std::string kernel_name(Kernel k);
Kernel kernel_from_name(const std::string& name);
double kernel_shape(Kernel k, double r);

struct ModelParams {
  double beta = 2.0;
  double zeta = 0.2;
  int len_cg = 1;
  int len_minus = 2;
  int range = 4;
  int len_plus = 8;
  Kernel kernel = Kernel::triangular;
  // Derived, filled by build_params.
  double m_beta = 0.0;
  double c_gamma = 0.0;
  std::vector<double> coupling;  // coupling[d] for d = 0..range; coupling[0] = 0

  double j(int d) const { return (d >= 1 && d <= range) ? coupling[d] : 0.0; }
  int blocks_minus_per_plus() const { return len_plus / len_minus; }
};

// Raw scalar inputs, validated by build_params.
struct RawParams {
  double beta = 2.0;
  double zeta = 0.2;
  int len_cg = 1;
  int len_minus = 2;
  int range = 4;
  int len_plus = 8;
  std::string kernel = "triangular";
};

ModelParams build_params(const RawParams& raw);
RawParams raw_of(const ModelParams& p);

// Largest nonnegative root of m = tanh(beta m); 0 for beta <= 1.
double solve_m_beta(double beta);

// Flat key-value text: one "key = value" line per field.
std::string serialize_params(const ModelParams& p);
ModelParams parse_params(const std::string& text);

// FNV-1a over the canonical serialization.
std::uint64_t params_hash(const ModelParams& p);
std::string hex64(std::uint64_t h);

using Spins = std::vector<int>;

// Window spins with explicit boundary spins. left.back() is adjacent to
// values.front(); right.front() is adjacent to values.back().
struct Window {
  Spins values;
  Spins left;
  Spins right;
};

// -sum J sigma sigma over unordered pairs touching the window.
double energy(const ModelParams& p, const Window& w);
// Periodic energy on a torus of values.size() sites.
double energy_pbc(const ModelParams& p, const Spins& torus);

}  // namespace kac
