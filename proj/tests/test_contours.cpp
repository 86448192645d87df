#include <cmath>
#include <algorithm>
#include <functional>

#include "doctest.h"
#include "kac/contours.hpp"
#include "kac/transfer.hpp"
#include "oracle.hpp"

using namespace kac;

namespace {

BlockSpace space(int len_minus, double beta = 2.0, double zeta = 0.5) {
  RawParams r;
  r.beta = beta; r.zeta = zeta; r.len_cg = 1; r.len_minus = len_minus; r.range = 4; r.len_plus = 4;
  return build_block_space(build_params(r));
}

std::vector<int> plus_blocks(const BlockSpace& bs) {
  std::vector<int> out;
  for (int s = 0; s < bs.nb; ++s)
    if (bs.theta[s] == 1) out.push_back(s);
  return out;
}

// Every theta sequence in {-1, 0, 1}^n checked against the Theta rule directly.
std::vector<ContourSpec> contours_by_definition(int n) {
  std::vector<ContourSpec> out;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (long c = 0; c < total; ++c) {
    std::vector<int> t(n + 2, 1);
    long x = c;
    for (int i = 1; i <= n; ++i, x /= 3) t[i] = int(x % 3) - 1;
    bool ok = t[1] == 1 && t[n] == 1;
    for (int i = 1; i <= n && ok; ++i) ok = oracle::Theta(t, i) == 0;
    if (ok) out.emplace_back(t.begin() + 1, t.end() - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Xi by explicit enumeration of contour collections over chain blocks 1..n.
double xi_by_collections(const BlockSpace& bs, const std::vector<int>& chain, int gap) {
  const int n = int(chain.size()) - 2;
  std::function<double(int)> from = [&](int a) -> double {
    // Collections whose supports all start at or after block a.
    double total = 1.0;
    for (int l = a; l <= n; ++l)
      for (int r = l + 2; r <= n; ++r) {
        double w = 0.0;
        for (const auto& spec : enumerate_contours(r - l + 1)) w += contour_weight(bs, spec, chain[l - 1], chain[r + 1]);
        total += w * from(r + gap);
      }
    return total;
  };
  return from(1);
}

}  // namespace

TEST_CASE("contour enumeration equals the Theta-rule definition") {
  for (int n = 3; n <= 8; ++n) {
    auto specs = enumerate_contours(n);
    CHECK(specs == contours_by_definition(n));
    for (const auto& s : specs) {
      CHECK(is_contour_spec(s));
      CHECK(s != ContourSpec(n, 1));
    }
  }
  CHECK(enumerate_contours(3) == std::vector<ContourSpec>{{1, -1, 1}, {1, 0, 1}});
  size_t prev = 0;
  for (int n = 3; n <= 6; ++n) {
    CHECK(enumerate_contours(n).size() >= prev);
    prev = enumerate_contours(n).size();
  }
  CHECK_THROWS_AS(enumerate_contours(2), SizeError);
  CHECK_THROWS_AS(enumerate_contours(13), SizeError);
}

TEST_CASE("contour weights match spin enumeration") {
  auto bs = space(4);
  auto plus = plus_blocks(bs);
  REQUIRE(plus.size() > 1);
  for (int sl : {plus.front(), plus.back()})
    for (int sr : {plus.front(), plus[plus.size() / 2]})
      for (const auto& spec : enumerate_contours(3)) {
        auto is_spec = [&](const std::vector<int>& t) {
          for (int i = 0; i < 3; ++i)
            if (t[i + 1] != spec[i]) return false;
          return true;
        };
        auto all_plus = [](const std::vector<int>& t) { return t[1] == 1 && t[2] == 1 && t[3] == 1; };
        const double want = std::exp(oracle::brute_log_z(bs, 3, sl, sr, is_spec) -
                                     oracle::brute_log_z(bs, 3, sl, sr, all_plus));
        CHECK(contour_weight(bs, spec, sl, sr) == doctest::Approx(want).epsilon(1e-12));
      }
  CHECK_THROWS_AS(contour_weight(bs, {1, 0, 1}, bs.flip(plus[0]), plus[0]), AdmissibilityError);
}

TEST_CASE("contour weights are invariant under the global spin flip") {
  auto bs = space(4);
  auto plus = plus_blocks(bs);
  for (const auto& spec : enumerate_contours(5)) {
    ContourSpec neg(spec.size());
    for (size_t i = 0; i < spec.size(); ++i) neg[i] = -spec[i];
    const int sl = plus[1], sr = plus[3];
    const double num = restricted_log_z_raw(bs, 5, bs.flip(sl), bs.flip(sr), EnsembleConstraint::theta_spec(neg));
    const double den = restricted_log_z_raw(bs, 5, bs.flip(sl), bs.flip(sr),
                                            EnsembleConstraint::theta_spec(std::vector<int>(5, -1)));
    const double w = contour_log_weight(bs, spec, sl, sr);
    if (w == kNegInf) {
      CHECK(num == kNegInf);
    } else {
      CHECK(num - den == doctest::Approx(w).epsilon(1e-12));
    }
  }
}

TEST_CASE("polymer Xi equals the sum over explicit contour collections") {
  auto bs = space(4);
  auto plus = plus_blocks(bs);
  std::vector<int> chain = {plus[0], plus[2], plus[1], plus[4], plus[3], plus[0], plus[2], plus[1], plus[4]};
  const double sep = xi_by_collections(bs, chain, 2), dis = xi_by_collections(bs, chain, 1);
  CHECK(std::exp(polymer_log_xi(bs, chain)) == doctest::Approx(sep).epsilon(1e-12));
  CHECK(std::exp(polymer_log_xi(bs, chain, Compatibility::disjoint)) == doctest::Approx(dis).epsilon(1e-12));
  CHECK(dis > sep);
  CHECK(sep >= 1.0);
}

TEST_CASE("polymer representation reproduces the plus-interval partition function") {
  for (int lm : {2, 4}) {
    auto bs = space(lm);
    auto plus = plus_blocks(bs);
    for (int n = 1; n <= 5; ++n) {
      auto r = polymer_partition(bs, n, plus.front(), plus.back());
      CHECK(r.rel_error <= 1e-9);
      CHECK(r.min_log_xi >= 0.0);
      CHECK(r.chains == long(std::llround(std::pow(double(plus.size()), n))));
      if (n <= 2) {
        // No contour fits, so Xi = 1 and Z^+ is the theta = 1 chain sum.
        CHECK(r.min_log_xi == 0.0);
        const double zpp = restricted_log_z(bs, n, plus.front(), plus.back(),
                                            EnsembleConstraint::theta_spec(std::vector<int>(n, 1)));
        CHECK(r.log_z_plus == doctest::Approx(zpp).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(polymer_partition(space(4), 9, 15, 15), SizeError);
}

TEST_CASE("touching contours break the polymer identity") {
  auto bs = space(4);
  auto plus = plus_blocks(bs);
  auto sep = polymer_partition(bs, 6, plus[0], plus[0]);
  auto dis = polymer_partition(bs, 6, plus[0], plus[0], Compatibility::disjoint);
  CHECK(sep.rel_error <= 1e-9);
  CHECK(dis.rel_error > 1e-6);
}

TEST_CASE("Kotecky-Preiss diagnostic and Peierls slope") {
  auto bs = space(4);
  auto k0 = kp_diagnostic(bs, 7, 0.0);
  CHECK(k0.kp_sum > 0.0);
  CHECK(k0.peierls_slope > 0.0);
  if (k0.kp_holds) {
    CHECK(k0.b_prime_threshold > 0.0);
    auto k1 = kp_diagnostic(bs, 7, 2.0 * k0.b_prime_threshold);
    CHECK_FALSE(k1.kp_holds);
    CHECK(k1.b_prime_threshold == doctest::Approx(k0.b_prime_threshold));
  }
  auto cold = kp_diagnostic(space(4, 6.0, 0.5), 7, 0.0);
  CHECK(cold.peierls_slope > 0.0);
  for (int N = 3; N <= 7; ++N) CHECK(cold.spec_sum[N] >= cold.sup_weight[N]);
}

TEST_CASE("interval potentials reconstruct log Xi and are local") {
  auto bs = space(4);
  auto plus = plus_blocks(bs);
  auto t = extract_potentials(bs, 6);
  CHECK(t.max_residual <= 1e-10);
  bool populated = false;
  for (const auto& e : t.entries) {
    if (e.size() < 5) CHECK(e.value == 0.0);
    populated |= e.value != 0.0;
  }
  CHECK(populated);
  std::vector<int> c1 = {plus[0], plus[1], plus[2], plus[3], plus[4], plus[0], plus[1], plus[2], plus[3], plus[4]};
  auto c2 = c1;
  c2[0] = plus[3];
  c2[1] = plus[4];
  c2[9] = plus[1];
  auto t1 = extract_potentials(bs, c1), t2 = extract_potentials(bs, c2);
  for (int a = 2; a <= 8; ++a)
    for (int b = a; b <= 8; ++b) CHECK(t1.value(a, b) == doctest::Approx(t2.value(a, b)).epsilon(1e-9));
  CHECK(t1.decay_slope < 0.0);
  // The whole-table sum is -(1/beta) log Xi of the full chain.
  double s = 0.0;
  for (const auto& e : t1.entries) s += e.value;
  CHECK(s == doctest::Approx(-polymer_log_xi(bs, c1) / bs.p.beta).epsilon(1e-10));
}
