#pragma once

#include <vector>

#include "minrev/structure.hpp"

namespace minrev {

enum class Winner { Spoiler, Duplicator };

/// One recorded game move. side 0 means Spoiler picked in the left
/// structure; left/right are the pair after Duplicator's reply, with the
/// response -1 when no reply keeps the map partial-isomorphic.
struct EFMove {
  int round = 0;
  int side = 0;
  int left = -1;
  int right = -1;
};

struct EFResult {
  Winner winner = Winner::Duplicator;
  int rounds = 0;
  std::vector<EFMove> trace;  // a winning Spoiler line; empty for Duplicator wins
};

/// Exact q-round Ehrenfeucht game value by exhaustive recursion, memoized on
/// the picked-pair set. Duplicator replies are enumerated through candidate
/// bitsets (color profile, self-loop, and both relation directions against
/// every earlier pair), and a partially played position is re-solved as a
/// fresh game on the remaining rounds, which is exact because extra rounds
/// never help the Duplicator. Hard caps, never estimates: q = 0 any size,
/// q in {1, 2} sizes up to 300, q = 3 sizes up to 64, q >= 4 rejected.
EFResult ef_game(const RelationalStructure& s1, const RelationalStructure& s2, int q,
                 bool want_trace = true);

bool q_equivalent(const RelationalStructure& s1, const RelationalStructure& s2, int q);

}  // namespace minrev
