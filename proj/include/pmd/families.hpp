#ifndef PMD_FAMILIES_HPP
#define PMD_FAMILIES_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pmd/graph.hpp"

namespace pmd {

struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Part sizes of a non-prefix binary graph, keyed by binary strings of
/// length 1..depth. Missing keys mean empty parts. At maximal depth, the two
/// children of a common prefix must be empty or non-empty together.
struct NPBFamily {
    int depth = 0;
    std::map<std::string, int> part_size;

    int size_of(const std::string& s) const;
    int total_vertices() const;
    void validate() const;
    /// Swap the subtrees below `prefix+0` / `prefix+1`.
    NPBFamily swapped_below(const std::string& prefix) const;
};

struct FamilySpec {
    enum class Kind {
        Path, Cycle, Complete, CompleteBipartite, CompleteMultipartite,
        Hypercube, NPB, CircularWall, DisjointUnion, BoxProduct, Join
    };
    Kind kind = Kind::Path;
    std::vector<int> params;
    std::vector<FamilySpec> children;
    NPBFamily npb;

    static FamilySpec parse(const std::string& text);
    std::string name() const;
};

Graph generate_family(const FamilySpec& spec);

Graph path_graph(int m);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph complete_multipartite(const std::vector<int>& sizes);
Graph hypercube(int n);
Graph circular_wall(int m, int n);
Graph npb_graph(const NPBFamily& f);
/// Vertex blocks of npb_graph in the canonical (length, lex) string order.
std::vector<std::pair<std::string, std::vector<Vertex>>> npb_blocks(const NPBFamily& f);

/// Box product with vertex (i,j) -> i*|V2|+j; labels combine factor labels.
Graph cartesian_product(const Graph& g1, const Graph& g2);
Graph join_graphs(const Graph& g1, const Graph& g2);
Graph disjoint_union(const Graph& g1, const Graph& g2);
MultiGraph multiply(const Graph& g, int n);

}  // namespace pmd

#endif
