#ifndef PMD_POSITIVITY_HPP
#define PMD_POSITIVITY_HPP

#include <boost/rational.hpp>
#include <functional>

#include "pmd/graph.hpp"

namespace pmd {

using Rational = boost::rational<long long>;

struct NotAMatching : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotPositive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordering e_1..e_k with e_i pendant in the subgraph induced by V({e_1..e_i}).
struct PendantOrder {
    std::vector<Edge> order;
};

/// Closed walk v_0..v_{2t}=v_0 whose edges alternate matching / non-matching,
/// starting with a matching edge; all edges inside the host graph induced on V(M).
struct AlternatingWalkWitness {
    std::vector<Vertex> walk;
};

struct PositivityResult {
    bool positive = false;
    PendantOrder order;          // set when positive
    AlternatingWalkWitness walk;  // set when not positive
};

/// Exact rational vertex weights with w(u)+w(v) > 0 exactly on matching edges.
struct WeightCertificate {
    std::vector<Rational> weight;  // per vertex of the host graph
};

void require_matching(const Graph& g, const Matching& m);

/// Theorem-style positivity decision with a machine-checkable witness either way.
PositivityResult check_positive(const Graph& g, const Matching& m);

/// Replay checks used by tests and verify_pmd reports.
bool replay_pendant_order(const Graph& g, const Matching& m, const PendantOrder& po);
bool replay_alternating_walk(const Graph& g, const Matching& m, const AlternatingWalkWitness& w);

WeightCertificate weight_certificate(const Graph& g, const Matching& m);
bool verify_certificate(const Graph& g, const Matching& m, const WeightCertificate& w);

/// Emits positive matchings with size in [min_size, max_size] in lexicographic
/// order of sorted edge lists. Return false from the callback to stop.
void for_each_positive_matching(const Graph& g, int min_size, int max_size,
                                const std::function<bool(const Matching&)>& fn);
std::vector<Matching> enumerate_positive_matchings(const Graph& g, int min_size, int max_size);

}  // namespace pmd

#endif
