#include "kac/pipeline.hpp"

namespace kac {

RenewalSetup build_renewal_setup(const ModelParams& p, const PipelineOptions& o, CacheStore* cache) {
  RenewalSetup s{build_block_space(p), {}, {}, {}, {}, {}, {}, o};
  const int n_table = o.R_trunc + 2;
  s.fit = cache ? cache->boundary_fit(s.bs, o.fit_n_min, o.fit_n_max, n_table, o.gauge_ref)
                : fit_boundary(s.bs, o.fit_n_min, o.fit_n_max, n_table, o.gauge_ref);
  s.it = interface_table(s.bs, s.fit, n_table);
  s.eps = eps_total(s.it, o.eps_tol);
  const double tilt = rough_lambda(build_atom_kernel(s.bs, s.fit, s.it, o.rough_R, 0.0), o.rough_R);
  s.k = build_atom_kernel(s.bs, s.fit, s.it, o.R_trunc, tilt);
  s.table = cache ? cache->weight_table(s.k, s.fit, o.R_trunc, o.R_enum) : build_weight_table(s.k, o.R_trunc, o.R_enum);
  s.table.params_hash = s.fit.params_hash;
  s.table.fit_hash = s.fit.hash();
  s.law = solve_lambda(s.table, s.eps.eps, o.lambda_tol);
  return s;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return mix(root ^ mix(stream));
}

}  // namespace kac
