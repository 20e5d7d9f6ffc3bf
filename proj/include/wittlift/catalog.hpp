#pragma once

#include "wittlift/rep.hpp"

namespace wittlift {

// One catalog row: a group, its abelian type when abelian (prime-power
// cyclic factor orders, primes ascending then exponents descending; empty
// for non-abelian entries), and -- for the non-cyclic 2- and 3-groups --
// a module on which one element acts as a single unipotent Jordan block
// (the situation of the H^1 lemma).
struct CatalogEntry {
  GroupPtr group;
  std::vector<uint32_t> abelian_type;
  std::optional<Representation> jordan_module;
  uint32_t jordan_element = 0;  // element realizing the single block
};

// All abelian groups of order <= max_order plus the named non-abelian
// entries whose order fits (S3, D4, Q8, H27, SL2(F3), SL2(F5)), sorted by
// (order, name). max_order <= 64; SL2(F5) at order 120 therefore only ever
// appears through FiniteGroup::sl2 directly.
std::vector<CatalogEntry> group_catalog(uint32_t max_order);

// g - I is nilpotent of index exactly n, i.e. g is conjugate to one
// unipotent Jordan block of full size
bool acts_as_single_jordan_block(const Mat& g);

// the defining 2-dimensional representation of SL2(F_q) over F_q
Representation sl2_natural_rep(uint32_t q);

}  // namespace wittlift
