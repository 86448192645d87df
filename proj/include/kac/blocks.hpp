#pragma once
#include <cstdint>
#include <vector>

#include "kac/params.hpp"

namespace kac {

// Enumerated len_plus block patterns. Site k of a block is bit k (set = +1).
struct BlockSpace {
  ModelParams p;
  int lp = 0;   // len_plus
  int R = 0;    // range
  int nb = 0;   // 2^lp
  int nh = 0;   // 2^R, number of head / tail patterns
  std::vector<int> theta;
  std::vector<double> intra;   // H(s): pair energy inside the block
  std::vector<double> wintra;  // exp(-beta H(s))
  std::vector<int> head;       // first R sites
  std::vector<int> tail;       // last R sites
  std::vector<double> wcross;  // W[tail * nh + head]: pair energy across a block boundary
  std::vector<double> ecross;  // exp(-beta W)
  // Admissible boundary states; minus_states[i] = flip(plus_states[i]).
  std::vector<int> plus_states;
  std::vector<int> minus_states;

  int all_plus() const { return nb - 1; }
  int flip(int s) const { return s ^ (nb - 1); }
  double W(int s, int s2) const { return wcross[size_t(tail[s]) * nh + head[s2]]; }
  Spins spins(int s) const;
  int index_of(const Spins& block) const;
  int plus_index(int s) const;  // position in plus_states, -1 if absent
};

// Transfer budget: range <= 10 keeps the boundary table at 2^20 entries.
BlockSpace build_block_space(const ModelParams& p);

}  // namespace kac
