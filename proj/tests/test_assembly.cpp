#include <cmath>

#include "doctest.h"
#include "kac/assembly.hpp"
#include "kac/torus.hpp"

using namespace kac;

namespace {

struct Setup {
  BlockSpace bs;
  BoundaryFit fit;
  AtomKernel k;
};

Setup make(double beta, double zeta, int lm, int range, int lp, int L) {
  RawParams r;
  r.beta = beta; r.zeta = zeta; r.len_cg = 1; r.len_minus = lm; r.range = range; r.len_plus = lp;
  Setup s{build_block_space(build_params(r)), {}, {}};
  s.fit = fit_boundary(s.bs, 8, 24, L + 4);
  auto it = interface_table(s.bs, s.fit, L + 4);
  s.k = build_atom_kernel(s.bs, s.fit, it, L + 2, 0.0);
  return s;
}

}  // namespace

TEST_CASE("cyclic atom traces reproduce the class-g torus sum") {
  for (auto [lm, lp] : {std::pair{2, 4}, std::pair{4, 4}}) {
    auto s = make(2.0, lm == 2 ? 0.2 : 0.5, lm, 4, lp, 14);
    for (int L : {8, 11, 14}) {
      auto tr = pbc_by_transfer(s.bs, L);
      auto a = torus_atom_sums(s.k, L);
      double g = tr.log_g - s.bs.p.beta * s.bs.lp * s.fit.p_plus * L;
      CHECK(a.log_g == doctest::Approx(g).epsilon(1e-11));
      // The marked part is the rod-sequence sum.
      double gg = std::log(std::exp(g) - std::exp(a.log_gb));
      CHECK(std::exp(a.log_gg_renewal - gg) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("no rod fits below eight blocks") {
  auto s = make(2.0, 0.2, 2, 4, 4, 10);
  CHECK(torus_atom_sums(s.k, 7).log_gg_renewal == kNegInf);
  CHECK(torus_atom_sums(s.k, 8).log_gg_renewal > kNegInf);
}

TEST_CASE("scalar cyclic sum counts rotations") {
  // S = z^2: one cyclic word of k = L/2 letters, L/k rotations of the anchor.
  std::vector<double> s(3, 0.0);
  s[2] = 1.0;
  CHECK(std::exp(log_cyclic_scalar(s, 6)) == doctest::Approx(2.0));
  CHECK(log_cyclic_scalar(s, 7) == kNegInf);
}
