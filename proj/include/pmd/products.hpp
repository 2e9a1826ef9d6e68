#ifndef PMD_PRODUCTS_HPP
#define PMD_PRODUCTS_HPP

#include "pmd/coloring.hpp"
#include "pmd/covers.hpp"
#include "pmd/decomposition.hpp"
#include "pmd/families.hpp"

namespace pmd {

struct NotATree : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct OutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct HypothesisViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidCover : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Edge partition into forests whose residual-induced subgraphs are forests.
struct ForestDecomposition {
    std::vector<std::vector<Edge>> forests;          // F_i
    std::vector<std::vector<Edge>> induced_forests;  // F'_i (equal to F_i here)
    std::vector<int> delta;                          // max degree of F'_i
    int stage_count() const { return static_cast<int>(forests.size()); }
};

/// Greedy induced-forest peeling: each stage takes every residual edge inside
/// a grown vertex set whose residual-induced subgraph stays a forest.
ForestDecomposition forest_decomposition(const Graph& g);

/// Proper edge coloring of a forest into Delta matchings (color classes).
std::vector<Matching> forest_matchings(const Graph& forest);

struct BuiltDecomposition {
    Graph graph;
    Decomposition decomposition;
};

/// Vertical copies of g1's parts sliced by g2's color classes, then
/// horizontal copies of g2's parts: p1*chi2 + p2 parts on g1 box g2.
BuiltDecomposition product_pmd_basic(const Graph& g1, const Graph& g2,
                                     const Decomposition& pmd1, const Coloring& col2,
                                     const Decomposition& pmd2);

/// Latin-rectangle combination of a tree's Delta matchings with g2's color
/// classes: max(Delta, chi2) + p2 parts on t box g2.
BuiltDecomposition tree_box_construction(const Graph& t, const Graph& g2,
                                         const Coloring& col2, const Decomposition& pmd2);

/// Stage the forest decomposition of g1 through tree_box_construction.
BuiltDecomposition forest_bound_1(const Graph& g1, const Graph& g2);

/// AFE-cover route: a generalized Latin rectangle built from the cover's
/// row partition aligns matchings with color classes; |cover| + p2 parts.
BuiltDecomposition afe_cover_construction(const Graph& g1, const Graph& g2,
                                          const Decomposition& pmd1, const Coloring& col2,
                                          const CoverSolution& cover,
                                          const Decomposition& pmd2);

/// Twisted forest route via afe_cover_construction; requires
/// sum of Delta(F'_i) <= |V(g2)|.
BuiltDecomposition forest_bound_2(const Graph& g1, const Graph& g2);

/// Box product of trees with Delta + m - [m != 0] parts (m = number of
/// two-vertex factors).
BuiltDecomposition construct_tree_product(const std::vector<Graph>& trees);

struct GridKind {
    enum class Type { PmCn, CmCn, CW, TreeProduct };
    Type type = Type::PmCn;
    int m = 0, n = 0;
    std::vector<Graph> trees;

    static GridKind pm_cn(int m, int n) { return {Type::PmCn, m, n, {}}; }
    static GridKind cm_cn(int m, int n) { return {Type::CmCn, m, n, {}}; }
    static GridKind cw(int m, int n) { return {Type::CW, m, n, {}}; }
    static GridKind tree_product(std::vector<Graph> ts) {
        return {Type::TreeProduct, 0, 0, std::move(ts)};
    }
};

/// Explicit decompositions for grid-like families, verified on construction:
/// P_m box C_n -> 4 or 5 parts, CW(m,n) -> 3 or 4, C_m box C_n -> 5 or 6.
BuiltDecomposition construct_grid(const GridKind& kind);

/// Expected part count of construct_grid for in-range parameters.
int grid_claimed_parts(const GridKind& kind);

/// Four parts on the prism K2 box C_n for even n >= 6 (used by the torus
/// construction's residual).
Decomposition prism_four_parts(const Graph& prism_host, int n);

}  // namespace pmd

#endif
