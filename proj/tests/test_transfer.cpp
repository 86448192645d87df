#include "doctest.h"
#include "oracle.hpp"

using namespace kac;

TEST_CASE("transfer matches brute force on small windows") {
  RawParams r;
  r.len_cg = 1; r.len_minus = 2; r.range = 2; r.len_plus = 4; r.beta = 1.7; r.zeta = 0.5;
  auto p = build_params(r);
  auto bs = build_block_space(p);
  std::vector<int> bounds = {bs.all_plus(), 0b1011, bs.flip(bs.all_plus()), 0b0110};
  for (int n = 1; n <= 3; ++n)
    for (int s0 : bounds)
      for (int sr : bounds) {
        auto c = EnsembleConstraint::free_chain(n);
        double a = restricted_log_z_raw(bs, n, s0, sr, c);
        double b = oracle::brute_log_z(bs, n, s0, sr, oracle::predicate(c));
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
      }
}

namespace {

BlockSpace small_space() {
  RawParams r;
  r.len_cg = 1; r.len_minus = 1; r.range = 2; r.len_plus = 2; r.beta = 1.5; r.zeta = 0.3;
  return build_block_space(build_params(r));
}

}  // namespace

TEST_CASE("every constraint kind matches brute force") {
  auto bs = small_space();
  for (int n = 1; n <= 4; ++n) {
    std::vector<EnsembleConstraint> cs = {EnsembleConstraint::plus_ensemble(n), EnsembleConstraint::plus_interval(n),
                                          EnsembleConstraint::iface_pm(n), EnsembleConstraint::iface_mp(n)};
    std::vector<int> spec(n, 0);
    spec[0] = 1;
    cs.push_back(EnsembleConstraint::theta_spec(spec));
    cs.push_back(EnsembleConstraint::custom(std::vector<ThetaSet>(n, kNonNeg), std::vector<ThetaSet>(n, kNonPos)));
    for (const auto& c : cs)
      for (int s0 = 0; s0 < bs.nb; ++s0)
        for (int sr = 0; sr < bs.nb; ++sr) {
          const double a = restricted_log_z_raw(bs, n, s0, sr, c);
          const double b = oracle::brute_log_z(bs, n, s0, sr, oracle::predicate(c));
          if (b == kNegInf) CHECK(a == kNegInf);
          else CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
  }
}

TEST_CASE("Theta masks partition the free sum") {
  auto bs = small_space();
  const int n = 4;
  for (int s0 : {0, 3})
    for (int sr : {0, 1, 3}) {
      std::vector<double> parts;
      for (int code = 0; code < 81; ++code) {
        std::vector<ThetaSet> T(n);
        for (int i = 0, c = code; i < n; ++i, c /= 3) T[i] = theta_set(c % 3 - 1);
        parts.push_back(restricted_log_z_raw(bs, n, s0, sr,
                                             EnsembleConstraint::custom(std::vector<ThetaSet>(n, kAnyTheta), T)));
      }
      CHECK(log_sum(parts) ==
            doctest::Approx(restricted_log_z_raw(bs, n, s0, sr, EnsembleConstraint::free_chain(n))).epsilon(1e-12));
    }
}

TEST_CASE("spin flip exchanges the interface kinds") {
  auto bs = small_space();
  for (int n = 2; n <= 5; ++n)
    for (int s0 = 0; s0 < bs.nb; ++s0)
      for (int sr = 0; sr < bs.nb; ++sr) {
        const double a = restricted_log_z_raw(bs, n, s0, sr, EnsembleConstraint::iface_pm(n));
        const double b = restricted_log_z_raw(bs, n, bs.flip(s0), bs.flip(sr), EnsembleConstraint::iface_mp(n));
        if (a == kNegInf) CHECK(b == kNegInf);
        else CHECK(a == doctest::Approx(b).epsilon(1e-12));
      }
}

TEST_CASE("admissibility and empty ensembles") {
  auto bs = small_space();
  const int plus = bs.all_plus(), minus = bs.flip(plus);
  CHECK_THROWS_AS(restricted_log_z(bs, 3, minus, minus, EnsembleConstraint::iface_pm(3)), AdmissibilityError);
  CHECK_THROWS_AS(restricted_log_z(bs, 3, plus, minus, EnsembleConstraint::plus_interval(3)), AdmissibilityError);
  // A one-block interface cannot join theta = 1 to theta = -1.
  CHECK_THROWS_AS(restricted_log_z(bs, 1, plus, minus, EnsembleConstraint::iface_pm(1)), EmptyEnsembleError);
  CHECK(restricted_log_z_raw(bs, 1, plus, minus, EnsembleConstraint::iface_pm(1)) == kNegInf);
}
