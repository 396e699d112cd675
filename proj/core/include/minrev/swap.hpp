#pragma once

#include <vector>

#include "minrev/crown.hpp"
#include "minrev/neighborhood.hpp"
#include "minrev/structure.hpp"

namespace minrev {

/// Vertex sequence of a single-cycle structure, starting at vertex 0 and
/// proceeding toward its higher-indexed neighbor. On graphs built by
/// to_colored_graph this reproduces the crown construction order
/// a_1, b_2, a_2, b_3, ..., a_s, b_1, which is the pinned orientation for
/// "successor" below.
std::vector<int> cycle_order(const RelationalStructure& g);

struct SwapResult {
  RelationalStructure result;
  int a = -1;
  int a_succ = -1;
  int b = -1;
  int b_succ = -1;
  GameParameters params;
};

/// Edge-swap surgery on an L1/L2-alternating colored cycle with ell
/// extension colors: picks the lexicographically smallest vertex pair (a, b)
/// at cycle distance >= 2r+2 with equal r-neighborhood types, removes the
/// edges to their successors and reconnects crosswise, splitting the cycle
/// in two. Cycles of length >= (4r+4)*T always contain such a pair by
/// pigeonhole; shorter inputs are attempted and fail with an error when no
/// pair exists. Requires q >= 1 so both split cycles stay simple.
SwapResult swap_construction(const RelationalStructure& c1prime, int q, int ell);

struct SplitReport {
  bool verdict = false;
  bool sizes_match = false;
  bool double_crown = false;
  bool regular_preserved = false;  // regular-disconnected when the input was regular
  bool q_equivalent_holds = false;
  SwapResult swap;
  RelationalStructure g1_ext;
  RelationalStructure g2_ext;
  PartialPreorder m2_order;
};

/// Full split pipeline: color-encodes the extended crown, applies the given
/// extension subsets, runs the swap on the cycle part, carries the surgery
/// over to the bottoms-attached structure, decodes the result back to an
/// order and checks it is an extended double crown of equal size
/// (regular-disconnected when the input order is regular), then plays the
/// q-round game on the two full extended structures. verdict is the
/// conjunction; failures are reported, never masked.
SplitReport verify_crown_split(const CrownOrder& m1, int q,
                               const std::vector<DynBitset>& extension);

}  // namespace minrev
