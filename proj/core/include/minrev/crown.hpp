#pragma once

#include <string>

#include "minrev/order.hpp"
#include "minrev/revision.hpp"
#include "minrev/structure.hpp"

namespace minrev {

/// Shape parameters of a crown-family order. s2 is 0 for single crowns.
struct CrownSpec {
  int s1 = 0;
  int s2 = 0;
  int bottoms = 0;

  bool is_double() const { return s2 > 0; }
  int crown_size() const { return 2 * (s1 + s2); }
  int size() const { return crown_size() + bottoms; }
};

/// A crown-family order together with its layout. Elements are laid out as
/// a_1..a_s1, b_1..b_s1, then the second crown's tops and mids when double,
/// bottoms last. Top a_i covers mids b_i and b_(i+1 mod s), which makes the
/// comparability graph on each crown the alternating cycle
/// a_1, b_2, a_2, b_3, ..., a_s, b_1.
struct CrownOrder {
  PartialPreorder order;
  CrownSpec spec;
};

CrownOrder build_crown(int s);  // s >= 2; s = 2 degenerates to a 4-cycle
CrownOrder build_double_crown(int s1, int s2);

/// Appends k mutually incomparable bottoms below every crown element.
CrownOrder extend_with_bottom(const CrownOrder& m, int k);

/// Comparability graph with the layer coloring: L1 = crown tops, L2 = crown
/// mids, L3 = bottoms.
RelationalStructure to_colored_graph(const CrownOrder& m);

/// Decodes a layer-colored comparability graph back into an order: each
/// edge is read as strictly-below from the lower layer (L3 under L2 under
/// L1), then the reflexive transitive closure is taken. Colors other than
/// L1/L2/L3 are ignored. Edges within one layer are rejected.
PartialPreorder from_colored_graph(const RelationalStructure& g);

/// Isomorphism-closed recognizers for the extended families (at least one
/// bottom below everything, upper part one or two crowns).
bool is_extended_crown(const PartialPreorder& r);
bool is_extended_double_crown(const PartialPreorder& r);

/// Named recognizers usable with is_representable: "regular",
/// "regular-disconnected", "extended-crown", "extended-double-crown".
FamilyOracle family_oracle(const std::string& name);

}  // namespace minrev
