#include "kac/blocks.hpp"

#include <algorithm>
#include <cmath>

#include "kac/phase.hpp"

namespace kac {

Spins BlockSpace::spins(int s) const {
  Spins out(lp);
  for (int k = 0; k < lp; ++k) out[k] = (s >> k & 1) ? 1 : -1;
  return out;
}

int BlockSpace::index_of(const Spins& block) const {
  int s = 0;
  for (int k = 0; k < lp; ++k)
    if (block[k] == 1) s |= 1 << k;
  return s;
}

int BlockSpace::plus_index(int s) const {
  auto it = std::lower_bound(plus_states.begin(), plus_states.end(), s);
  return (it != plus_states.end() && *it == s) ? int(it - plus_states.begin()) : -1;
}

BlockSpace build_block_space(const ModelParams& p) {
  if (p.range > 10) throw SizeError("transfer operators need range <= 10");
  BlockSpace b;
  b.p = p;
  b.lp = p.len_plus;
  b.R = p.range;
  b.nb = 1 << b.lp;
  b.nh = 1 << b.R;
  b.theta.resize(b.nb);
  b.intra.resize(b.nb);
  b.wintra.resize(b.nb);
  b.head.resize(b.nb);
  b.tail.resize(b.nb);
  const int q = p.blocks_minus_per_plus();
  for (int s = 0; s < b.nb; ++s) {
    Spins sp = b.spins(s);
    auto eta = eta_labels(sp, p);
    bool all_p = true, all_m = true;
    for (int k = 0; k < q; ++k) {
      all_p &= eta[k] == 1;
      all_m &= eta[k] == -1;
    }
    b.theta[s] = all_p ? 1 : (all_m ? -1 : 0);
    double e = 0.0;
    for (int x = 0; x < b.lp; ++x)
      for (int d = 1; d <= b.R && x + d < b.lp; ++d) e -= p.j(d) * sp[x] * sp[x + d];
    b.intra[s] = e;
    b.wintra[s] = std::exp(-p.beta * e);
    b.head[s] = s & (b.nh - 1);
    b.tail[s] = s >> (b.lp - b.R);
    if (b.theta[s] == 1) b.plus_states.push_back(s);
  }
  for (int s : b.plus_states) b.minus_states.push_back(b.flip(s));
  b.wcross.assign(size_t(b.nh) * b.nh, 0.0);
  b.ecross.assign(size_t(b.nh) * b.nh, 0.0);
  for (int t = 0; t < b.nh; ++t)
    for (int h = 0; h < b.nh; ++h) {
      double e = 0.0;
      // Tail bit j is at distance R - j from the boundary; head bit k at k + 1.
      for (int j = 0; j < b.R; ++j)
        for (int k = 0; k < b.R; ++k) {
          int d = (b.R - j) + k;
          if (d > b.R) continue;
          int a = (t >> j & 1) ? 1 : -1;
          int c = (h >> k & 1) ? 1 : -1;
          e -= p.j(d) * a * c;
        }
      b.wcross[size_t(t) * b.nh + h] = e;
      b.ecross[size_t(t) * b.nh + h] = std::exp(-p.beta * e);
    }
  return b;
}

}  // namespace kac
