#include <cmath>
#include <random>

#include "doctest.h"
#include "kac/errors.hpp"
#include "oracle.hpp"

using namespace kac;

namespace {

RawParams raw(int lc, int lm, int range, int lp, double beta = 2.0, double zeta = 0.2) {
  RawParams r;
  r.len_cg = lc; r.len_minus = lm; r.range = range; r.len_plus = lp; r.beta = beta; r.zeta = zeta;
  return r;
}

// Plain bisection on m - tanh(beta m) over (0, 1].
double bisect_m_beta(double beta) {
  double lo = 1e-6, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (mid - std::tanh(beta * mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Spins random_spins(std::mt19937_64& rng, int n) {
  Spins s(n);
  for (auto& v : s) v = (rng() & 1) ? 1 : -1;
  return s;
}

}  // namespace

TEST_CASE("reference parameter set builds with the mean-field root") {
  auto p = build_params(raw(1, 2, 4, 8));
  CHECK(p.m_beta == doctest::Approx(bisect_m_beta(2.0)).epsilon(1e-12));
  CHECK(p.m_beta == doctest::Approx(0.9575).epsilon(1e-4));
  CHECK(std::abs(p.m_beta - std::tanh(2.0 * p.m_beta)) <= 1e-12);
}

TEST_CASE("kernel normalization, symmetry and support") {
  for (const char* k : {"triangular", "uniform", "parabolic"})
    for (auto [lm, range, lp] : {std::tuple{1, 2, 2}, std::tuple{2, 4, 8}, std::tuple{1, 3, 6}, std::tuple{2, 6, 12}}) {
      auto r = raw(1, lm, range, lp, 1.5, 0.3);
      r.kernel = k;
      auto p = build_params(r);
      double sum = 0.0;
      for (int d = 1; d <= p.range; ++d) {
        CHECK(p.j(d) >= 0.0);
        sum += 2.0 * p.j(d);
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
      CHECK(p.j(0) == 0.0);
      CHECK(p.j(p.range + 1) == 0.0);
      CHECK(p.j(-1) == 0.0);
    }
}

TEST_CASE("parameter validation errors") {
  CHECK_THROWS_AS(build_params(raw(2, 3, 6, 6)), DivisibilityError);
  CHECK_THROWS_AS(build_params(raw(1, 2, 3, 6)), DivisibilityError);
  CHECK_THROWS_AS(build_params(raw(1, 2, 4, 6)), DivisibilityError);
  CHECK_THROWS_AS(build_params(raw(1, 2, 4, 16)), EnumerationCapError);
  CHECK_THROWS_AS(build_params(raw(1, 2, 4, 8, 1.0)), ParamError);
  CHECK_THROWS_AS(build_params(raw(1, 2, 4, 8, 0.5)), ParamError);
  CHECK_THROWS_AS(build_params(raw(1, 2, 4, 8, 2.0, 0.0)), ParamError);
  CHECK_THROWS_AS(build_params(raw(1, 2, 4, 8, 2.0, 0.99)), ParamError);
  CHECK_THROWS_AS(build_params(raw(0, 2, 4, 8)), ParamError);
  // The triangular shape vanishes at r = 1, so range 1 leaves no lattice mass.
  CHECK_THROWS_AS(build_params(raw(1, 1, 1, 2, 1.5, 0.3)), ParamError);
}

TEST_CASE("serialization round trip with exact keys") {
  auto r = raw(1, 2, 4, 8, 1.7, 0.35);
  r.kernel = "parabolic";
  auto p = build_params(r);
  auto q = parse_params(serialize_params(p));
  CHECK(serialize_params(q) == serialize_params(p));
  CHECK(params_hash(q) == params_hash(p));
  CHECK(q.beta == p.beta);
  CHECK(q.kernel == Kernel::parabolic);
  CHECK(params_hash(build_params(raw(1, 2, 4, 8, 1.7, 0.36))) != params_hash(p));
  const std::string s = serialize_params(p);
  CHECK_THROWS_AS(parse_params(s + "\nextra = 1"), ConfigError);
  const auto cut = s.find("zeta");
  REQUIRE(cut != std::string::npos);
  CHECK_THROWS_AS(parse_params(s.substr(0, cut)), ConfigError);
}

TEST_CASE("m_beta increases with beta") {
  double prev = 0.0;
  for (double b = 1.05; b <= 6.0; b += 0.05) {
    double m = solve_m_beta(b);
    CHECK(m > prev);
    CHECK(std::abs(m - std::tanh(b * m)) <= 1e-12);
    prev = m;
  }
  CHECK(solve_m_beta(0.8) == 0.0);
}

TEST_CASE("torus energy: brute pair sum, flip and shift invariance") {
  auto p = build_params(raw(1, 2, 4, 8));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_spins(rng, 16);
    const double e = energy_pbc(p, s);
    CHECK(e == doctest::Approx(oracle::torus_energy(p, s)).epsilon(1e-12));
    Spins f = s;
    for (auto& v : f) v = -v;
    CHECK(std::abs(energy_pbc(p, f) - e) <= 1e-12);
    for (int k = 1; k < 16; ++k) {
      Spins r(16);
      for (int i = 0; i < 16; ++i) r[i] = s[(i + k) % 16];
      CHECK(std::abs(energy_pbc(p, r) - e) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(energy_pbc(p, Spins(8, 1)), TorusTooSmall);
}

TEST_CASE("window energy counts each touching pair once") {
  auto p = build_params(raw(1, 2, 4, 8));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Window w{random_spins(rng, 10), random_spins(rng, 4), random_spins(rng, 4)};
    Spins all = w.left;
    all.insert(all.end(), w.values.begin(), w.values.end());
    all.insert(all.end(), w.right.begin(), w.right.end());
    CHECK(energy(p, w) == doctest::Approx(oracle::pair_energy(p, all, 4, 14)).epsilon(1e-12));
    Window f = w;
    for (auto* v : {&f.values, &f.left, &f.right})
      for (auto& x : *v) x = -x;
    CHECK(std::abs(energy(p, f) - energy(p, w)) <= 1e-12);
  }
  CHECK_THROWS_AS(energy(p, Window{Spins(4, 1), Spins(3, 1), Spins(4, 1)}), BoundaryError);
}
