#ifndef PMD_COVERS_HPP
#define PMD_COVERS_HPP

#include <optional>
#include <variant>

#include "pmd/families.hpp"
#include "pmd/graph.hpp"
#include "pmd/solver.hpp"

namespace pmd {

struct NoCover : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfDomain : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidFamily : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct Disconnected : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// True iff the union of host-induced subgraphs of the members is acyclic
/// (induced on each member's vertex set, per the Gamma[V(E)] convention).
bool is_afe(const Graph& g, const std::vector<std::vector<Edge>>& family);

/// Subfamilies of a pmd family covering every member at least n times,
/// each subfamily an AFE family.
struct CoverSolution {
    std::vector<std::vector<int>> subfamilies;  // indices into the pmd family
    int size() const { return static_cast<int>(subfamilies.size()); }
};

/// Minimum vertex n-cover of the AFE clutter of a pmd family. Exhaustive
/// branch and bound over maximal AFE subfamilies.
CoverSolution tau_n_cover(const Graph& g, const std::vector<Matching>& family, int n,
                          const Budget& budget = Budget());

/// kappa_G(n,p): infimum of tau_n over all unordered pmd families of size p.
/// Returns nullopt when no size-p pmd family admits an AFE cover.
std::optional<int> kappa(const Graph& g, int n, int p, const Budget& budget = Budget());

/// Closed form for cycles; domain m >= p >= 3, (m,p) != (4,3).
int kappa_cycle_closed_form(int m, int n, int p);

enum class RhoMode { Formula, Oracle };

/// Minimum number of forests covering every edge instance of a multigraph.
/// Formula mode evaluates the subset maximum (half-set pruning applies on
/// uniform multigraphs); oracle mode is an exhaustive multicover search.
int rho(const MultiGraph& mg, RhoMode mode, const Budget& budget = Budget(),
        bool half_set_pruning = true, int jobs = 1);

bool is_eps_set(const Graph& g, const std::vector<Vertex>& X, const Rational& eps);
bool is_eps_graph(const Graph& g, const Rational& eps);

struct NPBWitness {
    Edge e1, e2;  // disjoint edges inducing an acyclic subgraph
};
using NPBResult = std::variant<NPBFamily, NPBWitness>;

/// Structural recognition by the minimal-neighborhood join recursion.
NPBResult recognize_npb(const Graph& g);

/// Direct predicate: every two disjoint edges induce a cycle.
bool npb_predicate(const Graph& g, NPBWitness* witness = nullptr);

struct VertexEdgeWitness {
    Vertex v;
    Edge e;
};
using MultipartiteResult = std::variant<std::vector<int>, VertexEdgeWitness>;

MultipartiteResult recognize_complete_multipartite(const Graph& g);

/// ceil(nm/k) k-subsets of [m] covering n*[m] (cyclic construction).
std::vector<std::vector<int>> k_subset_cover(int n, int m, int k);

struct OrderedPartitionFamily {
    int b = 0, k = 0;
    std::vector<std::vector<int>> assignment;  // per row: element -> part (0-based)
};

/// Minimum k such that [b] has an acyclic family of `a` ordered k-partitions.
std::pair<int, OrderedPartitionFamily> min_acyclic_ordered_kpartitions(
    int a, int b, const Budget& budget = Budget());

/// rho(n * NPB graph) via the restricted subset maximum over supersets of
/// X' = B_0 u B_10 u ... (after sibling normalization); complete multipartite
/// inputs evaluate at the full vertex set directly.
int kappa_npb_rho_restricted(const NPBFamily& f, int n, const Budget& budget = Budget());

/// Detail view of the restricted evaluation (used by reports):
struct NPBRhoDetail {
    int value = 0;
    int value_at_xprime = 0;
    int value_at_v = 0;
    std::vector<Vertex> xprime;
    std::vector<Vertex> best_set;
};
NPBRhoDetail kappa_npb_rho_restricted_detail(const NPBFamily& f, int n,
                                             const Budget& budget = Budget());

/// All unordered pmd families of g with exactly p parts (used by kappa and tests).
std::vector<std::vector<Matching>> enumerate_pmd_families(const Graph& g, int p,
                                                          const Budget& budget = Budget());

}  // namespace pmd

#endif
