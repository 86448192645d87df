#include <cmath>
#include <map>

#include "doctest.h"
#include "kac/efp.hpp"
#include "kac/errors.hpp"

using namespace kac;

TEST_CASE("efp on steps {8, 9} converges to the inverse mean step") {
  auto q = make_step_distribution({{8, 0.5}, {9, 0.5}});
  CHECK(q.mean() == doctest::Approx(8.5));
  CHECK(q.gcd() == 1);
  auto r = efp_dp(q, 2000);
  CHECK(std::abs(r.h[2000] - 2.0 / 17.0) <= 1e-8);
  CHECK(r.identity_error <= 1e-12);
  CHECK(r.decay_rate > 0.0);
  CHECK(r.decay_r2 >= 0.99);
}

TEST_CASE("efp starting values: h(0) = 1 and h vanishes below the minimum step") {
  auto q = make_step_distribution({{8, 0.25}, {11, 0.75}});
  auto r = efp_dp(q, 200);
  CHECK(r.h[0] == 1.0);
  for (int n = 1; n < 8; ++n) CHECK(r.h[n] == 0.0);
  CHECK(r.h[8] == doctest::Approx(0.25));
  for (double v : r.h) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("efp renewal equation holds at every n") {
  auto q = make_step_distribution({{8, 0.3}, {10, 0.2}, {13, 0.5}});
  auto r = efp_dp(q, 500);
  for (int n = 1; n <= 500; ++n) {
    double s = 0.0;
    for (int j = 8; j <= 13 && j <= n; ++j) s += q.q[j] * r.h[n - j];
    CHECK(r.h[n] == doctest::Approx(s).epsilon(1e-14));
  }
}

TEST_CASE("periodic step support is rejected unless allowed") {
  auto q = make_step_distribution({{8, 1.0}});
  CHECK(q.gcd() == 8);
  CHECK_THROWS_AS(efp_dp(q, 100), PeriodicSupportWarning);
  auto r = efp_dp(q, 100, true);
  CHECK(r.periodic);
  for (int n = 0; n <= 100; ++n) CHECK(r.h[n] == (n % 8 == 0 ? 1.0 : 0.0));
}

TEST_CASE("step distributions validate their support and mass") {
  CHECK_THROWS_AS(make_step_distribution({{7, 1.0}}), ParamError);
  CHECK_THROWS_AS(make_step_distribution({{8, 0.5}}), ParamError);
  CHECK_THROWS_AS(make_step_distribution({{8, 1.5}, {9, -0.5}}), ParamError);
}

TEST_CASE("coupled walks from the same start meet at once") {
  auto q = make_step_distribution({{8, 0.5}, {9, 0.5}});
  auto c = efp_coupling(q, 0, 0, 7, 200);
  CHECK(c.met == 200);
  for (auto z : c.sums) CHECK(z == 0);
}

TEST_CASE("coupling time has a log-linear tail and is deterministic") {
  auto q = make_step_distribution({{8, 0.5}, {9, 0.5}});
  auto a = efp_coupling(q, -100, -1000, 11, 20000);
  auto b = efp_coupling(q, -100, -1000, 11, 20000);
  CHECK(a.met == a.trials);
  CHECK(a.rate > 0.0);
  CHECK(a.r2 >= 0.98);
  CHECK(a.sums == b.sums);
}
