#include "pmd/positivity.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pmd {

void require_matching(const Graph& g, const Matching& m) {
    std::set<Vertex> seen;
    for (const Edge& e : m) {
        if (g.edge_index(e) < 0) throw NotAMatching("edge not in graph");
        if (!seen.insert(e.u).second || !seen.insert(e.v).second)
            throw NotAMatching("edges share a vertex");
    }
}

namespace {

// Degree table of the host graph induced on the residual matching's vertices.
struct InducedView {
    const Graph& g;
    std::vector<char> in;   // vertex membership
    std::vector<int> deg;   // induced degree

    InducedView(const Graph& host, const Matching& m) : g(host) {
        in.assign(g.vertex_count(), 0);
        deg.assign(g.vertex_count(), 0);
        for (const Edge& e : m) in[e.u] = in[e.v] = 1;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (!in[v]) continue;
            for (int w : g.neighbors(v))
                if (in[w]) ++deg[v];
        }
    }
    void remove_vertex(Vertex v) {
        in[v] = 0;
        for (int w : g.neighbors(v))
            if (in[w]) --deg[w];
    }
};

}  // namespace

PositivityResult check_positive(const Graph& g, const Matching& m) {
    require_matching(g, m);
    PositivityResult res;
    // Elimination: repeatedly take the lowest-indexed residual edge that is
    // pendant in the host graph induced on the residual vertices.
    std::vector<Edge> residual(m);
    std::sort(residual.begin(), residual.end());
    InducedView view(g, residual);
    std::vector<Edge> elim;
    std::vector<char> alive(residual.size(), 1);
    size_t left = residual.size();
    while (left > 0) {
        int pick = -1;
        for (size_t i = 0; i < residual.size(); ++i) {
            if (!alive[i]) continue;
            const Edge& e = residual[i];
            if (view.deg[e.u] == 1 || view.deg[e.v] == 1) { pick = static_cast<int>(i); break; }
        }
        if (pick < 0) break;  // stuck
        elim.push_back(residual[pick]);
        view.remove_vertex(residual[pick].u);
        view.remove_vertex(residual[pick].v);
        alive[pick] = 0;
        --left;
    }
    if (left == 0) {
        res.positive = true;
        res.order.order.assign(elim.rbegin(), elim.rend());
        return res;
    }

    // Stuck residual: every residual matching edge has both endpoints of
    // induced degree >= 2, so an alternating closed walk exists. Walk with
    // states (vertex, next edge type) until a state repeats, then cut.
    std::vector<Edge> stuck;
    for (size_t i = 0; i < residual.size(); ++i)
        if (alive[i]) stuck.push_back(residual[i]);
    std::vector<int> mate(g.vertex_count(), -1);
    for (const Edge& e : stuck) {
        mate[e.u] = e.v;
        mate[e.v] = e.u;
    }
    InducedView sview(g, stuck);
    auto next_non_matching = [&](Vertex v) {
        for (int w : g.neighbors(v))
            if (sview.in[w] && mate[v] != w) return w;
        return -1;
    };
    Vertex start = stuck.front().u;
    std::vector<Vertex> seq{start};
    std::map<std::pair<Vertex, int>, int> seen;  // state -> index in seq
    int type = 0;                                // 0 = matching edge next
    seen[{start, 0}] = 0;
    for (;;) {
        Vertex v = seq.back();
        Vertex w = type == 0 ? mate[v] : next_non_matching(v);
        if (w < 0) throw std::logic_error("stuck walk has no continuation");
        seq.push_back(w);
        type ^= 1;
        auto key = std::make_pair(w, type);
        auto it = seen.find(key);
        if (it != seen.end()) {
            res.positive = false;
            res.walk.walk.assign(seq.begin() + it->second, seq.end());
            if (it->second % 2 == 1) {
                // ensure the cut starts on a matching edge: states at even
                // positions expect a matching edge next
                std::vector<Vertex>& wv = res.walk.walk;
                std::rotate(wv.begin(), wv.begin() + 1, wv.end());
                wv.back() = wv.front();
            }
            return res;
        }
        seen[key] = static_cast<int>(seq.size()) - 1;
    }
}

bool replay_pendant_order(const Graph& g, const Matching& m, const PendantOrder& po) {
    std::vector<Edge> sorted_m(m), sorted_o(po.order);
    std::sort(sorted_m.begin(), sorted_m.end());
    std::sort(sorted_o.begin(), sorted_o.end());
    if (sorted_m != sorted_o) return false;
    std::vector<Edge> prefix;
    for (const Edge& e : po.order) {
        prefix.push_back(e);
        InducedView view(g, prefix);
        if (view.deg[e.u] != 1 && view.deg[e.v] != 1) return false;
    }
    return true;
}

bool replay_alternating_walk(const Graph& g, const Matching& m,
                             const AlternatingWalkWitness& w) {
    const std::vector<Vertex>& walk = w.walk;
    if (walk.size() < 5 || walk.front() != walk.back()) return false;
    if ((walk.size() - 1) % 2 != 0) return false;
    std::set<Edge> mset(m.begin(), m.end());
    std::set<Vertex> support;
    for (const Edge& e : m) {
        support.insert(e.u);
        support.insert(e.v);
    }
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
        Vertex a = walk[i], b = walk[i + 1];
        if (!support.count(a) || !support.count(b)) return false;
        if (!g.adjacent(a, b)) return false;
        bool in_m = mset.count(Edge(a, b)) > 0;
        if ((i % 2 == 0) != in_m) return false;  // even steps use matching edges
    }
    return true;
}

WeightCertificate weight_certificate(const Graph& g, const Matching& m) {
    PositivityResult res = check_positive(g, m);
    if (!res.positive) throw NotPositive("matching is not positive");
    WeightCertificate cert;
    cert.weight.assign(g.vertex_count(), Rational(0));
    std::vector<char> assigned(g.vertex_count(), 0);

    auto max_abs = [&]() {
        Rational best(0);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (assigned[v]) best = std::max(best, boost::abs(cert.weight[v]));
        return best;
    };

    // Follow the pendant order: the pendant endpoint u_i has no assigned
    // neighbors yet, so only v_i's non-matching sums need the doubling fixup.
    std::vector<Edge> prefix;
    for (const Edge& e : res.order.order) {
        prefix.push_back(e);
        InducedView view(g, prefix);
        Vertex u = e.u, v = e.v;
        if (view.deg[e.v] == 1 && view.deg[e.u] != 1) std::swap(u, v);
        cert.weight[v] = Rational(-1);
        cert.weight[u] = Rational(1) - cert.weight[v];
        assigned[u] = assigned[v] = 1;
        for (;;) {
            bool bad = false;
            for (int w : g.neighbors(v))
                if (assigned[w] && w != u && cert.weight[v] + cert.weight[w] >= 0) bad = true;
            for (int w : g.neighbors(u))
                if (assigned[w] && w != v && cert.weight[u] + cert.weight[w] >= 0) bad = true;
            if (!bad) break;
            cert.weight[v] *= 2;
            cert.weight[u] = Rational(1) - cert.weight[v];
            // the pendant endpoint u has no assigned neighbors besides v, so
            // raising w(u) while lowering w(v) converges
        }
    }
    Rational big = max_abs();
    Rational outside = -(Rational(1) + big * 2);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!assigned[v]) cert.weight[v] = outside;
    if (!verify_certificate(g, m, cert))
        throw std::logic_error("certificate construction failed verification");
    return cert;
}

bool verify_certificate(const Graph& g, const Matching& m, const WeightCertificate& w) {
    if (static_cast<int>(w.weight.size()) != g.vertex_count()) return false;
    std::set<Edge> mset(m.begin(), m.end());
    for (const Edge& e : g.edges()) {
        bool pos = w.weight[e.u] + w.weight[e.v] > 0;
        if (pos != (mset.count(e) > 0)) return false;
    }
    return true;
}

namespace {

struct Enumerator {
    const Graph& g;
    int min_size, max_size;
    const std::function<bool(const Matching&)>& fn;
    std::vector<Edge> current;
    std::vector<char> used;  // vertex usage
    bool stopped = false;

    bool pendant_free_check() {
        // incremental positivity via full elimination on the small current set
        return check_positive(g, current).positive;
    }

    void run(int from) {
        if (stopped) return;
        if (static_cast<int>(current.size()) >= min_size) {
            if (!fn(current)) { stopped = true; return; }
        }
        if (static_cast<int>(current.size()) == max_size) return;
        for (int i = from; i < g.edge_count(); ++i) {
            const Edge& e = g.edge(i);
            if (used[e.u] || used[e.v]) continue;
            current.push_back(e);
            used[e.u] = used[e.v] = 1;
            // subsets of positive matchings are positive, so pruning here is exact
            if (pendant_free_check()) run(i + 1);
            used[e.u] = used[e.v] = 0;
            current.pop_back();
            if (stopped) return;
        }
    }
};

}  // namespace

void for_each_positive_matching(const Graph& g, int min_size, int max_size,
                                const std::function<bool(const Matching&)>& fn) {
    max_size = std::min(max_size, g.vertex_count() / 2);
    Enumerator en{g, min_size, max_size, fn};
    en.used.assign(g.vertex_count(), 0);
    if (min_size > max_size) return;
    en.run(0);
}

std::vector<Matching> enumerate_positive_matchings(const Graph& g, int min_size, int max_size) {
    std::vector<Matching> out;
    for_each_positive_matching(g, min_size, max_size, [&](const Matching& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

}  // namespace pmd
