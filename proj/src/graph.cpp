#include "pmd/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pmd {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    for (size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u < 0 || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
        if (i > 0 && edges_[i] == edges_[i - 1]) throw std::invalid_argument("duplicate edge");
    }
    rebuild();
}

void Graph::rebuild() {
    adj_.assign(n_, {});
    edge_idx_flat_.assign(static_cast<size_t>(n_) * n_, -1);
    for (size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
        edge_idx_flat_[static_cast<size_t>(e.u) * n_ + e.v] = static_cast<int>(i);
        edge_idx_flat_[static_cast<size_t>(e.v) * n_ + e.u] = static_cast<int>(i);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::adjacent(Vertex u, Vertex v) const { return edge_index(u, v) >= 0; }

int Graph::edge_index(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return -1;
    return edge_idx_flat_[static_cast<size_t>(u) * n_ + v];
}

std::string Graph::display_label(Vertex v) const {
    if (has_labels()) return labels_[v];
    return std::to_string(v + 1);
}

void Graph::set_labels(std::vector<std::string> labels) {
    if (static_cast<int>(labels.size()) != n_)
        throw std::invalid_argument("label count mismatch");
    labels_ = std::move(labels);
}

Graph Graph::induced(const std::vector<Vertex>& vs, std::vector<Vertex>* back_map) const {
    std::vector<int> newid(n_, -1);
    for (size_t i = 0; i < vs.size(); ++i) newid[vs[i]] = static_cast<int>(i);
    std::vector<Edge> es;
    for (const Edge& e : edges_)
        if (newid[e.u] >= 0 && newid[e.v] >= 0) es.emplace_back(newid[e.u], newid[e.v]);
    if (back_map) *back_map = vs;
    Graph g(static_cast<int>(vs.size()), std::move(es));
    if (has_labels()) {
        std::vector<std::string> lab;
        lab.reserve(vs.size());
        for (Vertex v : vs) lab.push_back(labels_[v]);
        g.set_labels(std::move(lab));
    }
    return g;
}

Graph Graph::without_edges(const std::vector<Edge>& removed) const {
    std::set<Edge> rem(removed.begin(), removed.end());
    std::vector<Edge> es;
    for (const Edge& e : edges_)
        if (!rem.count(e)) es.push_back(e);
    Graph g(n_, std::move(es));
    if (has_labels()) g.set_labels(labels_);
    return g;
}

namespace {
struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};
}  // namespace

std::vector<int> Graph::component_ids() const {
    Dsu d(n_);
    for (const Edge& e : edges_) d.unite(e.u, e.v);
    std::vector<int> root_to_id(n_, -1), ids(n_);
    int next = 0;
    for (int v = 0; v < n_; ++v) {
        int r = d.find(v);
        if (root_to_id[r] < 0) root_to_id[r] = next++;
        ids[v] = root_to_id[r];
    }
    return ids;
}

std::vector<std::vector<Vertex>> Graph::components() const {
    auto ids = component_ids();
    int k = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
    std::vector<std::vector<Vertex>> comps(k);
    for (int v = 0; v < n_; ++v) comps[ids[v]].push_back(v);
    return comps;
}

bool Graph::connected() const {
    if (n_ <= 1) return true;
    auto ids = component_ids();
    return std::all_of(ids.begin(), ids.end(), [](int c) { return c == 0; });
}

bool Graph::is_forest() const { return edge_set_acyclic(n_, edges_); }

bool Graph::is_tree() const { return is_forest() && connected() && n_ >= 1; }

bool Graph::is_bipartite(std::vector<int>* side) const {
    std::vector<int> col(n_, -1);
    for (int s = 0; s < n_; ++s) {
        if (col[s] >= 0) continue;
        col[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj_[v]) {
                if (col[w] < 0) {
                    col[w] = 1 - col[v];
                    stack.push_back(w);
                } else if (col[w] == col[v]) {
                    return false;
                }
            }
        }
    }
    if (side) *side = col;
    return true;
}

GraphStats Graph::stats() const { return graph_stats(*this); }

Graph Graph::complement() const {
    std::vector<Edge> es;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (!adjacent(u, v)) es.emplace_back(u, v);
    return Graph(n_, std::move(es));
}

GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    s.component_count = g.vertex_count() == 0 ? 0 : 1 + *std::max_element(
        g.component_ids().begin(), g.component_ids().end());
    if (g.vertex_count() == 0) {
        s.component_count = 0;
        return s;
    }
    s.max_degree = 0;
    s.min_degree = g.vertex_count() ? g.degree(0) : 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        s.max_degree = std::max(s.max_degree, g.degree(v));
        s.min_degree = std::min(s.min_degree, g.degree(v));
    }
    s.is_regular = s.max_degree == s.min_degree;
    return s;
}

bool edge_set_acyclic(int n, const std::vector<Edge>& edges) {
    Dsu d(n);
    std::set<Edge> seen;
    for (const Edge& e : edges) {
        if (!seen.insert(e).second) continue;
        if (!d.unite(e.u, e.v)) return false;
    }
    return true;
}

MultiGraph::MultiGraph(int n, std::map<Edge, int> mult) : n_(n), mult_(std::move(mult)) {
    for (const auto& [e, m] : mult_) {
        if (e.u < 0 || e.v >= n_) throw std::invalid_argument("multigraph edge out of range");
        if (m < 1) throw std::invalid_argument("multiplicity must be positive");
    }
}

int MultiGraph::multiplicity(const Edge& e) const {
    auto it = mult_.find(e);
    return it == mult_.end() ? 0 : it->second;
}

int MultiGraph::edge_instance_count() const {
    int s = 0;
    for (const auto& [e, m] : mult_) s += m;
    return s;
}

bool MultiGraph::uniform_multiplicity() const {
    int m = -1;
    for (const auto& [e, k] : mult_) {
        if (m < 0) m = k;
        else if (k != m) return false;
    }
    return true;
}

Graph MultiGraph::underlying() const {
    std::vector<Edge> es;
    es.reserve(mult_.size());
    for (const auto& [e, m] : mult_) es.push_back(e);
    return Graph(n_, std::move(es));
}

namespace {

// Degree-profile refinement: iterated multiset of neighbor classes.
std::vector<int> refine_classes(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> cls(n);
    for (int v = 0; v < n; ++v) cls[v] = g.degree(v);
    for (int round = 0; round < n; ++round) {
        std::vector<std::pair<std::vector<int>, int>> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> nb;
            for (int w : g.neighbors(v)) nb.push_back(cls[w]);
            std::sort(nb.begin(), nb.end());
            nb.push_back(cls[v]);
            sig[v] = {std::move(nb), v};
        }
        std::vector<std::pair<std::vector<int>, int>> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> next(n);
        int id = 0;
        for (size_t i = 0; i < sorted.size(); ++i) {
            if (i > 0 && sorted[i].first != sorted[i - 1].first) ++id;
            next[sorted[i].second] = id;
        }
        if (next == cls) break;
        cls = next;
    }
    return cls;
}

bool extend_iso(const Graph& a, const Graph& b, const std::vector<int>& ca,
                const std::vector<int>& cb, std::vector<int>& map, std::vector<char>& used,
                int v) {
    int n = a.vertex_count();
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
        if (used[w] || ca[v] != cb[w]) continue;
        bool ok = true;
        for (int x : a.neighbors(v)) {
            if (x < v && !b.adjacent(map[x], w)) { ok = false; break; }
        }
        if (ok) {
            // same number of mapped neighbors required
            int deg_mapped_a = 0;
            for (int x : a.neighbors(v)) if (x < v) ++deg_mapped_a;
            int deg_mapped_b = 0;
            for (int y : b.neighbors(w)) if (y < n && used[y]) ++deg_mapped_b;
            if (deg_mapped_a != deg_mapped_b) ok = false;
        }
        if (!ok) continue;
        map[v] = w;
        used[w] = 1;
        if (extend_iso(a, b, ca, cb, map, used, v + 1)) return true;
        used[w] = 0;
    }
    return false;
}

}  // namespace

bool is_isomorphic(const Graph& a, const Graph& b) {
    return find_isomorphism(a, b).has_value();
}

std::optional<std::vector<int>> find_isomorphism(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
        return std::nullopt;
    int n = a.vertex_count();
    if (n == 0) return std::vector<int>{};
    auto ca = refine_classes(a), cb = refine_classes(b);
    auto hist = [](std::vector<int> c) { std::sort(c.begin(), c.end()); return c; };
    if (hist(ca) != hist(cb)) return std::nullopt;
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    if (!extend_iso(a, b, ca, cb, map, used, 0)) return std::nullopt;
    return map;
}

std::string canonical_key(const Graph& g) {
    // Exact canonical form by brute force for tiny graphs, refinement-guided
    // branch for slightly bigger ones. Used by test oracles on <= 8 vertices.
    int n = g.vertex_count();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    auto encode = [&](const std::vector<int>& p) {
        std::vector<Edge> es;
        es.reserve(g.edges().size());
        for (const Edge& e : g.edges()) es.emplace_back(p[e.u], p[e.v]);
        std::sort(es.begin(), es.end());
        std::string s = std::to_string(n) + ":";
        for (const Edge& e : es) s += std::to_string(e.u) + "," + std::to_string(e.v) + ";";
        return s;
    };
    do {
        std::string s = encode(perm);
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace pmd
