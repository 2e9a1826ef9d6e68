#ifndef PMD_Q4_HPP
#define PMD_Q4_HPP

#include "pmd/graph.hpp"

namespace pmd {

struct Q4ConfigReport {
    Matching m1;                       // the fixed first part (4 edges)
    bool m1_positive = false;
    uint64_t matchings_size7 = 0;      // matchings of size 7 in graph - m1
    uint64_t positive_size7 = 0;       // how many of them are positive
};

struct Q4Report {
    std::vector<Q4ConfigReport> configs;  // the five fixed configurations
    bool all_zero() const;
    uint64_t total_checked() const;
};

/// The 4-cube as Cay(Z_2^4, {e1..e4}); vertex v is its 4-bit mask.
Graph q4_cayley_graph();

/// The five first-part configurations checked by the staged argument.
std::vector<Matching> q4_configurations();

/// Exhaustively enumerates size-7 matchings of Q4 minus each configuration
/// and counts the positive ones (expected zero). `jobs` > 1 parallelizes
/// over the leading edge of the enumeration.
Q4Report q4_staged_verification(int jobs = 1);

}  // namespace pmd

#endif
