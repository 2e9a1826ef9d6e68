#include "pmd/q4.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pmd/positivity.hpp"

namespace pmd {

bool Q4Report::all_zero() const {
    return std::all_of(configs.begin(), configs.end(),
                       [](const Q4ConfigReport& c) { return c.m1_positive && c.positive_size7 == 0; });
}

uint64_t Q4Report::total_checked() const {
    uint64_t t = 0;
    for (const auto& c : configs) t += c.matchings_size7;
    return t;
}

Graph q4_cayley_graph() {
    std::vector<Edge> es;
    for (int v = 0; v < 16; ++v)
        for (int b = 0; b < 4; ++b)
            if (!(v & (1 << b))) es.emplace_back(v, v | (1 << b));
    Graph g(16, std::move(es));
    std::vector<std::string> lab(16);
    for (int v = 0; v < 16; ++v) {
        std::string s;
        for (int b = 0; b < 4; ++b) s += (v & (1 << b)) ? '1' : '0';
        lab[v] = s;
    }
    g.set_labels(std::move(lab));
    return g;
}

std::vector<Matching> q4_configurations() {
    const int E1 = 1, E2 = 2, E3 = 4, E4 = 8;
    auto edge_at = [](int x, int gen) { return Edge(x, x ^ gen); };
    std::vector<Matching> cfgs;
    // {e1, e2+e3, e3+e4, e1+e4+e2}
    cfgs.push_back({edge_at(0, E1), edge_at(E2, E3), edge_at(E3, E4), edge_at(E1 ^ E4, E2)});
    // {e1, e2+e3, e3+e4, e1+e2+e4+e3}
    cfgs.push_back({edge_at(0, E1), edge_at(E2, E3), edge_at(E3, E4), edge_at(E1 ^ E2 ^ E4, E3)});
    // {e1, e2+e3, e3+e4, e1+e3+e4+e2}
    cfgs.push_back({edge_at(0, E1), edge_at(E2, E3), edge_at(E3, E4), edge_at(E1 ^ E3 ^ E4, E2)});
    // {e1, e2+e4, e3+e4, e1+e2+e4+e3}
    cfgs.push_back({edge_at(0, E1), edge_at(E2, E4), edge_at(E3, E4), edge_at(E1 ^ E2 ^ E4, E3)});
    // {e1, e2+e4, e3+e4, e1+e3+e4+e2}
    cfgs.push_back({edge_at(0, E1), edge_at(E2, E4), edge_at(E3, E4), edge_at(E1 ^ E3 ^ E4, E2)});
    for (auto& m : cfgs) std::sort(m.begin(), m.end());
    return cfgs;
}

namespace {

struct FastEnum {
    const Graph& g;
    std::vector<std::vector<std::pair<int, int>>> incident;  // v -> (edge idx, other)
    std::vector<char> removed_edge;

    explicit FastEnum(const Graph& host, const Matching& banned) : g(host) {
        incident.assign(g.vertex_count(), {});
        removed_edge.assign(g.edge_count(), 0);
        for (const Edge& e : banned) removed_edge[g.edge_index(e)] = 1;
        for (int i = 0; i < g.edge_count(); ++i) {
            if (removed_edge[i]) continue;
            const Edge& e = g.edge(i);
            incident[e.u].push_back({i, e.v});
            incident[e.v].push_back({i, e.u});
        }
    }

    // pendant elimination for the current matching in the residual graph
    bool positive(const std::vector<int>& medges) const {
        static thread_local std::vector<int> deg;
        static thread_local std::vector<char> in;
        deg.assign(g.vertex_count(), 0);
        in.assign(g.vertex_count(), 0);
        for (int ei : medges) in[g.edge(ei).u] = in[g.edge(ei).v] = 1;
        for (int ei : medges)
            for (Vertex v : {g.edge(ei).u, g.edge(ei).v}) {
                int d = 0;
                for (auto [idx, w] : incident[v])
                    if (in[w]) ++d;
                deg[v] = d;
            }
        size_t left = medges.size();
        static thread_local std::vector<char> alive;
        alive.assign(medges.size(), 1);
        while (left > 0) {
            bool progress = false;
            for (size_t i = 0; i < medges.size(); ++i) {
                if (!alive[i]) continue;
                const Edge& e = g.edge(medges[i]);
                if (deg[e.u] == 1 || deg[e.v] == 1) {
                    alive[i] = 0;
                    --left;
                    for (Vertex x : {e.u, e.v}) {
                        in[x] = 0;
                        for (auto [idx, w] : incident[x])
                            if (in[w]) --deg[w];
                    }
                    progress = true;
                }
            }
            if (!progress) return false;
        }
        return true;
    }

    // enumerate all matchings of exactly `target` edges starting from `first`,
    // counting total and positive ones
    void count_from(int first, int target, uint64_t& total, uint64_t& positive_count) const {
        std::vector<int> current{first};
        std::vector<char> used(g.vertex_count(), 0);
        used[g.edge(first).u] = used[g.edge(first).v] = 1;
        rec(first + 1, target, current, used, total, positive_count);
    }

    void rec(int from, int target, std::vector<int>& current, std::vector<char>& used,
             uint64_t& total, uint64_t& positive_count) const {
        if (static_cast<int>(current.size()) == target) {
            ++total;
            if (positive(current)) ++positive_count;
            return;
        }
        int need = target - static_cast<int>(current.size());
        for (int i = from; i + (need - 1) < g.edge_count(); ++i) {
            if (removed_edge[i]) continue;
            const Edge& e = g.edge(i);
            if (used[e.u] || used[e.v]) continue;
            current.push_back(i);
            used[e.u] = used[e.v] = 1;
            rec(i + 1, target, current, used, total, positive_count);
            used[e.u] = used[e.v] = 0;
            current.pop_back();
        }
    }
};

}  // namespace

Q4Report q4_staged_verification(int jobs) {
    Graph g = q4_cayley_graph();
    Q4Report rep;
    for (const Matching& m1 : q4_configurations()) {
        Q4ConfigReport cr;
        cr.m1 = m1;
        cr.m1_positive = check_positive(g, m1).positive;
        FastEnum fe(g, m1);
        std::atomic<uint64_t> total{0}, pos{0};
        int ne = g.edge_count();
#ifdef _OPENMP
        int threads = std::max(1, jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
#else
        (void)jobs;
#endif
        for (int first = 0; first < ne; ++first) {
            if (fe.removed_edge[first]) continue;
            uint64_t t = 0, p = 0;
            fe.count_from(first, 7, t, p);
            total.fetch_add(t, std::memory_order_relaxed);
            pos.fetch_add(p, std::memory_order_relaxed);
        }
        cr.matchings_size7 = total.load();
        cr.positive_size7 = pos.load();
        rep.configs.push_back(std::move(cr));
    }
    return rep;
}

}  // namespace pmd
