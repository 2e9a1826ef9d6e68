#ifndef PMD_GRAPH_HPP
#define PMD_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmd {

using Vertex = int;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    Vertex u = 0, v = 0;  // normalized so that u < v
    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {
        if (a == b) throw std::invalid_argument("loop edge " + std::to_string(a));
    }
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Matching = std::vector<Edge>;  // sorted, vertex-disjoint

struct GraphStats {
    int max_degree = 0;
    int min_degree = 0;
    bool is_regular = true;
    int component_count = 0;
};

/// Immutable simple undirected graph. Vertices are 0-based indices;
/// optional labels carry human-readable names (1-based grid coordinates etc.).
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n) { rebuild(); }
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int idx) const { return edges_[idx]; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    bool adjacent(Vertex u, Vertex v) const;
    /// Index into edges() or -1.
    int edge_index(Vertex u, Vertex v) const;
    int edge_index(const Edge& e) const { return edge_index(e.u, e.v); }

    bool has_labels() const { return !labels_.empty(); }
    const std::string& label(Vertex v) const { return labels_[v]; }
    std::string display_label(Vertex v) const;  // label or 1-based index
    void set_labels(std::vector<std::string> labels);

    /// Induced subgraph on `vs`; `back_map[i]` gives the original vertex of new vertex i.
    Graph induced(const std::vector<Vertex>& vs, std::vector<Vertex>* back_map = nullptr) const;
    Graph without_edges(const std::vector<Edge>& removed) const;
    std::vector<int> component_ids() const;           // per vertex
    std::vector<std::vector<Vertex>> components() const;
    bool connected() const;
    bool is_forest() const;
    bool is_tree() const;
    bool is_bipartite(std::vector<int>* side = nullptr) const;

    GraphStats stats() const;
    Graph complement() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<int> edge_idx_flat_;  // n*n lookup, -1 when absent
    std::vector<std::string> labels_;
    void rebuild();
};

/// Multigraph with per-pair multiplicities (no loops, all multiplicities >= 1).
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n) : n_(n) {}
    MultiGraph(int n, std::map<Edge, int> mult);

    int vertex_count() const { return n_; }
    const std::map<Edge, int>& multiplicities() const { return mult_; }
    int multiplicity(const Edge& e) const;
    int edge_instance_count() const;  // sum of multiplicities
    bool uniform_multiplicity() const;
    Graph underlying() const;

private:
    int n_ = 0;
    std::map<Edge, int> mult_;
};

GraphStats graph_stats(const Graph& g);

/// Acyclicity of an arbitrary edge set over n vertices (union-find).
bool edge_set_acyclic(int n, const std::vector<Edge>& edges);

/// Backtracking isomorphism test with degree refinement; intended for small graphs.
bool is_isomorphic(const Graph& a, const Graph& b);

/// Vertex map a -> b when isomorphic.
std::optional<std::vector<int>> find_isomorphism(const Graph& a, const Graph& b);

/// Canonical key of a small labeled graph (n plus canonically relabeled edge set).
std::string canonical_key(const Graph& g);

}  // namespace pmd

#endif
