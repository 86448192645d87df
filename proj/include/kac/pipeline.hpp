#pragma once
#include <cstdint>

#include "kac/boundary.hpp"
#include "kac/cache.hpp"
#include "kac/weights.hpp"

namespace kac {

struct PipelineOptions {
  int fit_n_min = 20, fit_n_max = 40;
  int R_trunc = 400, R_enum = 16;
  int rough_R = 64;
  double eps_tol = 1e-6, lambda_tol = 1e-10;
  int gauge_ref = -1;
};

// Everything between ModelParams and the renewal law, built once.
struct RenewalSetup {
  BlockSpace bs;
  BoundaryFit fit;
  InterfaceTable it;
  EpsTotal eps;
  AtomKernel k;
  WeightTable table;
  RenewalLaw law;
  PipelineOptions options;
};

// cache may be null.
RenewalSetup build_renewal_setup(const ModelParams& p, const PipelineOptions& o, CacheStore* cache = nullptr);

// Counter-based stream splitting: splitmix64 finalizer over (root, stream).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

}  // namespace kac
