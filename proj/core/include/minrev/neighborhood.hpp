#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "minrev/structure.hpp"

namespace minrev {

/// The numbers a q-round game fixes once the signature has ell extension
/// colors: Gaifman radius r = (3^q - 1) / 2 and the neighborhood-type budget
/// T = 2 * 2^(ell * (2r + 1)), the count used by the pigeonhole argument on
/// alternating cycles. type_budget saturates at uint64 max.
struct GameParameters {
  int q = 0;
  int ell = 0;
  int r = 0;
  std::uint64_t type_budget = 0;

  static GameParameters derive(int q, int ell);
};

int locality_radius(int q);

/// Canonical form of a vertex neighborhood, comparable with == / <.
/// Opaque beyond that: equal codes mean isomorphic rooted neighborhoods.
using TypeCode = std::vector<std::uint32_t>;

/// Vertices within distance r of v, v included. Distance ignores edge
/// direction.
DynBitset ball(const RelationalStructure& g, int v, int r);

struct RootedStructure {
  RelationalStructure s;
  int root = 0;
  std::vector<int> original;  // original[i] = vertex of g at local index i
};

/// Induced substructure on ball(g, v, r), root relabeled to local index 0,
/// remaining vertices in ascending original order.
RootedStructure r_neighborhood(const RelationalStructure& g, int v, int r);

/// Exact canonical form of a connected rooted structure: the
/// lexicographically least vertex-by-vertex encoding over all orderings that
/// start at the root and grow by adjacency. Capped at 12 vertices and a
/// fixed search-node budget (CapError); ties only branch on locally
/// indistinguishable vertices, so paths and cycles stay tiny.
TypeCode canonical_code(const RelationalStructure& s, int root);

TypeCode neighborhood_type(const RelationalStructure& g, int v, int r);

/// Bijection preserving r-neighborhood types, if one exists: sort both
/// vertex sets by type code and pair them off; equal multisets are exactly
/// the bijective case. Sizes and signatures must match.
std::optional<std::vector<int>> hanf_check(const RelationalStructure& s1,
                                           const RelationalStructure& s2, int r);

}  // namespace minrev
