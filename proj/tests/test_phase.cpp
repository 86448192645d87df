#include <random>

#include "doctest.h"
#include "kac/phase.hpp"
#include "oracle.hpp"

using namespace kac;

namespace {

ModelParams params() {
  RawParams r;
  r.len_cg = 1; r.len_minus = 2; r.range = 4; r.len_plus = 4; r.beta = 2.0; r.zeta = 0.2;
  return build_params(r);
}

// Random cyclic theta sequence built from runs of constant value.
std::vector<int> random_theta(std::mt19937_64& rng, int n) {
  std::vector<int> t;
  while (int(t.size()) < n) {
    int v = int(rng() % 3) - 1, len = 1 + int(rng() % 6);
    for (int k = 0; k < len && int(t.size()) < n; ++k) t.push_back(v);
  }
  return t;
}

std::vector<int> cyclic_Theta(const std::vector<int>& t) {
  const int n = int(t.size());
  std::vector<int> T(n);
  for (int i = 0; i < n; ++i) T[i] = big_theta_of(t[(i + n - 1) % n], t[i], t[(i + 1) % n]);
  return T;
}

bool has_both(const std::vector<int>& T) {
  bool p = false, m = false;
  for (int v : T) { p |= v == 1; m |= v == -1; }
  return p && m;
}

// Checks the partition against the label definitions directly.
void check_partition(const IntervalPartition& w, const std::vector<int>& T) {
  const int n = int(T.size());
  int total = 0;
  for (size_t i = 0; i < w.atoms.size(); ++i) {
    const auto& a = w.atoms[i];
    total += a.length;
    if (i > 0) {
      CHECK(a.kind == next_kind(w.atoms[i - 1].kind));
      CHECK(a.left == w.atoms[i - 1].left + w.atoms[i - 1].length);
    }
    auto at = [&](int k) { return T[((a.left + k) % n + n) % n]; };
    const int sign = a.kind == AtomKind::plus ? 1 : (a.kind == AtomKind::minus ? -1 : 0);
    if (sign == 0) {
      CHECK(a.length >= 2);
      for (int k = 0; k < a.length; ++k) CHECK(at(k) == 0);
    } else {
      CHECK(at(0) == sign);
      CHECK(at(a.length - 1) == sign);
      for (int k = 0; k < a.length; ++k) CHECK(at(k) * sign >= 0);
    }
  }
  CHECK(w.atoms.front().kind == next_kind(w.atoms.back().kind));
  CHECK(total == n);
  // Anchored at the atom containing index 0.
  CHECK(w.atoms.front().left <= 0);
  CHECK(w.atoms.front().left + w.atoms.front().length > 0);
}

}  // namespace

TEST_CASE("eta, theta and Theta follow the band definitions") {
  auto p = params();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Spins s(32);
    for (auto& v : s) v = (rng() % 4) ? 1 : -1;
    if (trial % 2) for (auto& v : s) v = -v;
    auto l = phase_labels(s, p, true);
    REQUIRE(l.eta.size() == 16);
    REQUIRE(l.theta.size() == 8);
    for (int b = 0; b < 16; ++b) {
      const double mean = 0.5 * (s[2 * b] + s[2 * b + 1]);
      const int e = std::abs(mean - p.m_beta) <= p.zeta ? 1 : (std::abs(mean + p.m_beta) <= p.zeta ? -1 : 0);
      CHECK(l.eta[b] == e);
    }
    for (int i = 0; i < 8; ++i) {
      CHECK(l.theta[i] == oracle::theta_of_block(p, Spins(s.begin() + 4 * i, s.begin() + 4 * i + 4)));
      const int a = l.theta[(i + 7) % 8], b = l.theta[i], c = l.theta[(i + 1) % 8];
      CHECK(l.big_theta[i] == ((a == b && b == c) ? b : 0));
    }
    auto open = phase_labels(s, p, false);
    CHECK(open.big_theta.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(open.big_theta[i] == l.big_theta[i + 1]);
  }
  CHECK_THROWS_AS(eta_labels(Spins(5, 1), p), AlignmentError);
  CHECK_THROWS_AS(phase_labels(Spins(6, 1), p, true), AlignmentError);
}

TEST_CASE("decompose tiles random label sequences and cycles kinds") {
  std::mt19937_64 rng(7);
  int checked = 0;
  while (checked < 200) {
    auto T = cyclic_Theta(random_theta(rng, 40));
    if (!has_both(T)) continue;
    auto w = decompose(T, true);
    check_partition(w, T);
    std::vector<int> neg(T.size());
    for (size_t i = 0; i < T.size(); ++i) neg[i] = -T[i];
    CHECK(decompose(neg, true) == flip(w));
    CHECK(parse_partition(serialize_partition(w)) == w);
    ++checked;
  }
}

TEST_CASE("decompose errors and the single-cycle example") {
  CHECK_THROWS_AS(decompose(std::vector<int>(10, 0)), NoPhaseError);
  CHECK_THROWS_AS(decompose(std::vector<int>(10, 1)), SinglePhaseError);
  // plus[3], iface[2], minus[1], iface[2] on an 8-block torus.
  std::vector<int> T = {1, 1, 1, 0, 0, -1, 0, 0};
  auto w = decompose(T);
  REQUIRE(w.atoms.size() == 4);
  auto r = mark_rods(w);
  REQUIRE(r.rods.size() == 1);
  CHECK(r.rods[0].u.rows == std::vector<std::array<int, 4>>{{3, 2, 1, 2}});
  CHECK(r.rods[0].u.length() == 8);
  CHECK(r.rods[0].x == 0);
}

TEST_CASE("classify_pbc matches the class definitions") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    auto T = cyclic_Theta(random_theta(rng, 12));
    bool p = false, m = false;
    for (int v : T) { p |= v == 1; m |= v == -1; }
    PbcClass want = p && m ? PbcClass::g : (p ? PbcClass::Xplus : (m ? PbcClass::Xminus : PbcClass::X0));
    CHECK(classify_pbc(T) == want);
  }
}

TEST_CASE("short plus intervals are absorbed into the preceding rod") {
  // plus lengths 3, 2, 3 in succession.
  std::vector<int> T = {1, 1, 1, 0, 0, -1, 0, 0, 1, 1, 0, 0, -1, 0, 0, 1, 1, 1, 0, 0, -1, 0, 0};
  T.push_back(0);
  auto r = mark_rods(decompose(T));
  REQUIRE(r.rods.size() == 2);
  int two_row = 0;
  for (auto& rod : r.rods) {
    CHECK(rod.u.valid());
    two_row += rod.u.k() == 2;
  }
  CHECK(two_row == 1);
  CHECK_THROWS_AS(mark_rods(decompose(std::vector<int>{1, 1, 0, 0, -1, -1, -1, 0, 0, 0})), NoAnchorError);
}

TEST_CASE("mark_rods then forget_marks is the identity") {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 100) {
    auto T = cyclic_Theta(random_theta(rng, 48));
    if (!has_both(T)) continue;
    auto w = decompose(T);
    bool anchor = false;
    for (auto& a : w.atoms) anchor |= a.kind == AtomKind::plus && a.length >= 3;
    if (!anchor) continue;
    auto r = mark_rods(w);
    int total = 0;
    for (size_t k = 0; k < r.rods.size(); ++k) {
      CHECK(r.rods[k].u.valid());
      if (k > 0) CHECK(r.rods[k].x == r.rods[k - 1].x + r.rods[k - 1].u.length());
      total += r.rods[k].u.length();
    }
    CHECK(total == 48);
    CHECK(forget_marks(r) == w);
    ++checked;
  }
}
