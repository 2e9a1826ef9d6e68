#ifndef PMD_AUTOMORPHISM_HPP
#define PMD_AUTOMORPHISM_HPP

#include "pmd/graph.hpp"

namespace pmd {

/// All automorphisms of a small graph as vertex permutations. `cap` guards
/// against group blowup; throws when exceeded.
std::vector<std::vector<int>> automorphisms(const Graph& g, size_t cap = 200000);

/// Canonical representative of a matching under a permutation group:
/// the lexicographically least image (as a sorted edge list).
Matching matching_orbit_representative(const Graph& g, const Matching& m,
                                       const std::vector<std::vector<int>>& autos);

}  // namespace pmd

#endif
