#include <cmath>

#include "doctest.h"
#include "kac/continuum.hpp"
#include "kac/errors.hpp"

using namespace kac;

namespace {

// Bulk and penalty parts of the excess functional, summed directly.
std::pair<double, double> bulk_and_penalty(const Profile& p, double beta) {
  const double mb = solve_m_beta(beta);
  const int M = int(std::lround(1.0 / p.h)), n = p.size();
  double norm = 0.0;
  for (int j = -M; j <= M; ++j) norm += 1.0 - std::abs(j) * p.h;
  double bulk = 0.0, pen = 0.0;
  for (int i = 0; i < n; ++i) {
    bulk += p.h * (mf_free_energy(p.m[i], beta) - mf_free_energy(mb, beta));
    for (int t = std::max(0, i - M); t <= std::min(n - 1, i + M); ++t) {
      const double J = (1.0 - std::abs(t - i) * p.h) / norm;
      pen += p.h * J * (p.m[i] - p.m[t]) * (p.m[i] - p.m[t]);
    }
  }
  return {bulk, pen};
}

}  // namespace

TEST_CASE("mean-field entropy and free energy") {
  CHECK(entropy(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(entropy(1.0) == 0.0);
  CHECK(entropy(-1.0) == 0.0);
  CHECK_THROWS_AS(entropy(1.0 + 1e-12), DomainError);
  for (double m : {0.1, 0.5, 0.9, 0.999}) CHECK(mf_free_energy(m, 2.0) == mf_free_energy(-m, 2.0));
  const double mb = solve_m_beta(2.0), h = 1e-5;
  const double d = (mf_free_energy(mb + h, 2.0) - mf_free_energy(mb - h, 2.0)) / (2 * h);
  CHECK(std::abs(d) <= 1e-8);
}

TEST_CASE("functional vanishes on the pure phases and is flip invariant") {
  const double beta = 2.0, mb = solve_m_beta(beta);
  for (auto conv : {Convention::excess_intro5, Convention::lp_F5}) {
    FunctionalConfig c{conv, beta, Kernel::triangular};
    for (double s : {1.0, -1.0}) {
      Profile p = make_profile(5.0, 0.1, s * mb, s * mb);
      for (double& v : p.m) v = s * mb;
      CHECK(std::abs(lp_functional(p, c)) <= 1e-13);
    }
    Profile zero = make_profile(5.0, 0.1, 0.0, 0.0);
    CHECK(lp_functional(zero, c) ==
          doctest::Approx(10.0 * (mf_free_energy(0.0, beta) - mf_free_energy(mb, beta))).epsilon(1e-12));
    Profile t = tanh_profile(12.0, 0.05, mb, 1.5), f = t;
    for (double& v : f.m) v = -v;
    f.left_clamp = -f.left_clamp;
    f.right_clamp = -f.right_clamp;
    CHECK(lp_functional(f, c) == doctest::Approx(lp_functional(t, c)).epsilon(1e-12));
  }
}

TEST_CASE("functional quadrature is second order on a smooth profile") {
  const double beta = 2.0, mb = solve_m_beta(beta);
  for (auto conv : {Convention::excess_intro5, Convention::lp_F5}) {
    FunctionalConfig c{conv, beta, Kernel::triangular};
    double F[3];
    const double hs[3] = {0.1, 0.05, 0.025};
    for (int k = 0; k < 3; ++k) F[k] = lp_functional(tanh_profile(12.0, hs[k], mb, 2.0), c);
    CHECK(std::abs(F[1] - F[0]) < 0.01 * std::abs(F[1]));
    CHECK((F[1] - F[0]) / (F[2] - F[1]) == doctest::Approx(4.0).epsilon(0.05));
  }
  CHECK_THROWS_AS(make_profile(5.0, 0.3, 0.0, 0.0), ResolutionError);
}

TEST_CASE("the two conventions differ by a quarter of the penalty term") {
  const double beta = 2.0, mb = solve_m_beta(beta);
  Profile p = tanh_profile(12.0, 0.05, mb, 1.0);
  auto [bulk, pen] = bulk_and_penalty(p, beta);
  FunctionalConfig a{Convention::excess_intro5, beta, Kernel::triangular};
  FunctionalConfig b{Convention::lp_F5, beta, Kernel::triangular};
  CHECK(lp_functional(p, a) == doctest::Approx(bulk + pen).epsilon(1e-12));
  // Exterior pairs only differ by the tail of the front beyond the domain.
  CHECK(lp_functional(p, b) == doctest::Approx(bulk + 0.25 * pen).epsilon(1e-9));
}

TEST_CASE("instanton converges, is antisymmetric, and its free energy is grid stable") {
  FunctionalConfig c{Convention::lp_F5, 2.0, Kernel::triangular};
  InstantonOptions o;
  auto r = instanton_solve(c, o);
  CHECK(r.residual <= o.tol);
  CHECK(r.antisymmetry <= 1e-6);
  const int n = r.profile.size();
  CHECK(r.profile.m[n / 2 - 1] <= 0.0);
  CHECK(r.profile.m[n / 2] >= 0.0);
  CHECK(r.fbar_F5 > 0.0);
  CHECK(r.fbar_intro5 > 0.0);
  auto fine = o;
  fine.h = o.h / 2;
  auto wide = o;
  wide.L = 2 * o.L;
  CHECK(instanton_solve(c, fine).fbar_F5 == doctest::Approx(r.fbar_F5).epsilon(0.01));
  CHECK(instanton_solve(c, wide).fbar_F5 == doctest::Approx(r.fbar_F5).epsilon(0.01));
  // The fixed point minimizes the lp_F5 functional: a tanh trial front costs more.
  const double mb = solve_m_beta(2.0);
  for (double w : {0.5, 1.0, 2.0})
    CHECK(lp_functional(tanh_profile(o.L, o.h, mb, w), c) > r.fbar_F5);
}

TEST_CASE("constant seed stays at the pure phase") {
  FunctionalConfig c{Convention::excess_intro5, 2.0, Kernel::triangular};
  InstantonOptions o;
  o.constant_seed = true;
  auto r = instanton_solve(c, o);
  CHECK(r.iterations == 0);
  CHECK(r.residual <= 1e-15);
  CHECK(std::abs(r.fbar_intro5) <= 1e-13);
  CHECK(std::abs(r.fbar_F5) <= 1e-13);
}

TEST_CASE("instanton reports non-convergence and rejects short domains") {
  FunctionalConfig c{Convention::lp_F5, 2.0, Kernel::triangular};
  InstantonOptions o;
  o.max_iter = 3;
  CHECK_THROWS_AS(instanton_solve(c, o), NonConvergence);
  o.max_iter = 1000;
  o.L = 5.0;
  CHECK_THROWS_AS(instanton_solve(c, o), DomainError);
}

TEST_CASE("scaling report columns and trend") {
  std::vector<ScalingInput> fam = {{4, 2.0, 0.06, 0.01, 2.3, 1e-6}, {8, 2.0, 0.02, 0.001, 3.45, 1e-6},
                                   {6, 2.0, 0.04, 0.004, 2.76, 1e-6}};
  auto rep = scaling_report(fam, 0.21, Convention::lp_F5);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].gamma == doctest::Approx(0.25));
  CHECK(rep.rows[2].gamma == doctest::Approx(0.125));
  CHECK(rep.rows[0].lambda_over_eps == doctest::Approx(6.0));
  CHECK(rep.rows[1].minus_gamma_log_eps == doctest::Approx(-std::log(0.004) / 6 / 2.0));
  CHECK(rep.rows[0].phi_check == doctest::Approx(std::exp(-4.6) / 0.01));
  CHECK(rep.log_eps_monotone);
  auto tsv = scaling_tsv(rep);
  CHECK(tsv.find("lambda_over_eps") != std::string::npos);
  CHECK(tsv.find("lp_F5") != std::string::npos);
}
