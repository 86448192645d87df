#pragma once
#include <vector>

#include "kac/blocks.hpp"
#include "kac/phase.hpp"
#include "kac/transfer.hpp"

namespace kac {

// Periodic partition function split by label class; values are logs.
struct PbcSums {
  int L = 0;
  bool exact_enumeration = false;
  double log_pbc = kNegInf;
  double log_g = kNegInf, log_X0 = kNegInf, log_Xplus = kNegInf, log_Xminus = kNegInf;
  double log_class(PbcClass c) const;
};

// Enumeration when L * len_plus <= 20, class-resolved transfer otherwise.
PbcSums pbc_decomposition(const BlockSpace& bs, int L);
PbcSums pbc_by_enumeration(const BlockSpace& bs, int L);
PbcSums pbc_by_transfer(const BlockSpace& bs, int L);

// Periodic sum restricted by a per-block Theta mask (size L) and theta mask.
double pbc_masked_log_z(const BlockSpace& bs, const std::vector<ThetaSet>& theta,
                        const std::vector<ThetaSet>& big_theta);

}  // namespace kac
