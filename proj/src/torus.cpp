#include "kac/torus.hpp"

#include <cmath>

namespace kac {

double PbcSums::log_class(PbcClass c) const {
  switch (c) {
    case PbcClass::g: return log_g;
    case PbcClass::X0: return log_X0;
    case PbcClass::Xplus: return log_Xplus;
    case PbcClass::Xminus: return log_Xminus;
  }
  return kNegInf;
}

PbcSums pbc_by_enumeration(const BlockSpace& bs, int L) {
  const int N = L * bs.lp;
  if (N > 20) throw SizeError("enumeration limited to 20 spins");
  if (L < 3) throw SizeError("torus needs at least three blocks");
  PbcSums out;
  out.L = L;
  out.exact_enumeration = true;
  std::vector<double> terms[4];
  std::vector<double> all;
  Spins s(N);
  for (long long c = 0; c < (1LL << N); ++c) {
    for (int k = 0; k < N; ++k) s[k] = (c >> k & 1) ? 1 : -1;
    double w = -bs.p.beta * energy_pbc(bs.p, s);
    auto labels = phase_labels(s, bs.p, true);
    terms[int(classify_pbc(labels.big_theta))].push_back(w);
    all.push_back(w);
  }
  out.log_pbc = log_sum(all);
  out.log_g = log_sum(terms[int(PbcClass::g)]);
  out.log_X0 = log_sum(terms[int(PbcClass::X0)]);
  out.log_Xplus = log_sum(terms[int(PbcClass::Xplus)]);
  out.log_Xminus = log_sum(terms[int(PbcClass::Xminus)]);
  return out;
}

namespace {

// Runs the periodic chain for every group (head of s0, theta(s0), theta(s_{L-1})).
// `step_map(i)` gives the tag map applied to Theta_i; `theta(i)` the allowed theta of block i.
template <class StepMap, class ThetaOf>
std::vector<double> periodic_tags(const BlockSpace& bs, int L, int ntags, StepMap step_map, ThetaOf theta_of) {
  std::vector<std::vector<double>> terms(ntags);
  for (int h = 0; h < bs.nh; ++h)
    for (int t0 = -1; t0 <= 1; ++t0) {
      if (!contains(theta_of(0), t0)) continue;
      int rep = -1;
      for (int s = 0; s < bs.nb; ++s)
        if (bs.head[s] == h && bs.theta[s] == t0) { rep = s; break; }
      if (rep < 0) continue;
      for (int tl = -1; tl <= 1; ++tl) {
        if (!contains(theta_of(L - 1), tl)) continue;
        Chain ch(bs, ntags);
        for (int s = 0; s < bs.nb; ++s)
          if (bs.head[s] == h && bs.theta[s] == t0) ch.v[ch.idx(s, tl, 0)] = bs.wintra[s];
        ch.renormalize();
        for (int i = 0; i + 1 < L; ++i) ch.step(theta_of(i + 1), step_map(i));
        auto z = ch.close({rep}, theta_set(tl), step_map(L - 1));
        for (int tag = 0; tag < ntags; ++tag)
          if (z[0][tag] != kNegInf) terms[tag].push_back(z[0][tag]);
      }
    }
  std::vector<double> out(ntags);
  for (int tag = 0; tag < ntags; ++tag) out[tag] = log_sum(terms[tag]);
  return out;
}

}  // namespace

PbcSums pbc_by_transfer(const BlockSpace& bs, int L) {
  if (L < 3) throw SizeError("torus needs at least three blocks");
  // Tags record which nonzero Theta values have been seen: bit 0 for +1, bit 1 for -1.
  TagMap flags;
  flags.ntags = 4;
  flags.next.resize(4);
  for (int tag = 0; tag < 4; ++tag) {
    flags.next[tag][0] = tag | 2;
    flags.next[tag][1] = tag;
    flags.next[tag][2] = tag | 1;
  }
  auto z = periodic_tags(bs, L, 4, [&](int) -> const TagMap& { return flags; },
                         [](int) { return kAnyTheta; });
  PbcSums out;
  out.L = L;
  out.log_X0 = z[0];
  out.log_Xplus = z[1];
  out.log_Xminus = z[2];
  out.log_g = z[3];
  out.log_pbc = log_sum(z);
  return out;
}

PbcSums pbc_decomposition(const BlockSpace& bs, int L) {
  if (L * bs.lp <= 20) return pbc_by_enumeration(bs, L);
  return pbc_by_transfer(bs, L);
}

double pbc_masked_log_z(const BlockSpace& bs, const std::vector<ThetaSet>& theta,
                        const std::vector<ThetaSet>& big_theta) {
  const int L = int(theta.size());
  if (L < 3 || int(big_theta.size()) != L) throw SizeError("mask length mismatch");
  std::vector<TagMap> maps;
  for (int i = 0; i < L; ++i) maps.push_back(TagMap::mask(big_theta[i]));
  auto z = periodic_tags(bs, L, 1, [&](int i) -> const TagMap& { return maps[i]; },
                         [&](int i) { return theta[i]; });
  return z[0];
}

}  // namespace kac
