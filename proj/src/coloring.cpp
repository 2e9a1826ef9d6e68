#include "pmd/coloring.hpp"

#include <algorithm>
#include <set>

namespace pmd {

std::vector<std::vector<Vertex>> Coloring::classes() const {
    std::vector<std::vector<Vertex>> cls(num_colors);
    for (int v = 0; v < static_cast<int>(color.size()); ++v) cls[color[v]].push_back(v);
    return cls;
}

void Coloring::validate(const Graph& g) const {
    if (static_cast<int>(color.size()) != g.vertex_count())
        throw std::invalid_argument("coloring size mismatch");
    std::vector<int> count(num_colors, 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (color[v] < 0 || color[v] >= num_colors)
            throw std::invalid_argument("color index out of range");
        ++count[color[v]];
    }
    for (int c = 0; c < num_colors; ++c)
        if (count[c] == 0) throw std::invalid_argument("empty color class");
    for (const Edge& e : g.edges())
        if (color[e.u] == color[e.v])
            throw std::invalid_argument("improper coloring at edge");
}

namespace {

Coloring dsatur(const Graph& g) {
    int n = g.vertex_count();
    Coloring col;
    col.color.assign(n, -1);
    std::vector<std::set<int>> sat(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (col.color[v] >= 0) continue;
            if (best < 0 ||
                sat[v].size() > sat[best].size() ||
                (sat[v].size() == sat[best].size() && g.degree(v) > g.degree(best)))
                best = v;
        }
        int c = 0;
        while (sat[best].count(c)) ++c;
        col.color[best] = c;
        col.num_colors = std::max(col.num_colors, c + 1);
        for (int w : g.neighbors(best)) sat[w].insert(c);
    }
    if (n == 0) col.num_colors = 0;
    return col;
}

struct ExactCtx {
    const Graph& g;
    std::vector<int> order;   // by descending degree
    std::vector<int> color;
    std::vector<int> best_color;
    int best = 0;  // number of colors in the best complete coloring found
    int lb = 1;

    void search(int idx, int used) {
        if (used >= best) return;
        if (idx == static_cast<int>(order.size())) {
            best = used;
            best_color = color;
            return;
        }
        int v = order[idx];
        uint64_t forbidden = 0;
        for (int w : g.neighbors(v))
            if (color[w] >= 0) forbidden |= 1ull << color[w];
        int limit = std::min(used + 1, best - 1);
        for (int c = 0; c < limit; ++c) {
            if (forbidden & (1ull << c)) continue;
            color[v] = c;
            search(idx + 1, std::max(used, c + 1));
            color[v] = -1;
            if (best <= lb) return;
        }
    }
};

}  // namespace

int clique_lower_bound(const Graph& g) {
    // greedy clique from each vertex, highest degree first inside
    int best = g.vertex_count() > 0 ? 1 : 0;
    for (int s = 0; s < g.vertex_count(); ++s) {
        std::vector<int> clique{s};
        std::vector<int> cand(g.neighbors(s));
        std::sort(cand.begin(), cand.end(),
                  [&](int a, int b) { return g.degree(a) > g.degree(b); });
        for (int v : cand) {
            bool ok = true;
            for (int u : clique)
                if (!g.adjacent(u, v)) { ok = false; break; }
            if (ok) clique.push_back(v);
        }
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

Coloring proper_coloring(const Graph& g, ColorMode mode, int exact_cap) {
    if (g.vertex_count() == 0) return Coloring{};
    Coloring greedy = dsatur(g);
    if (mode == ColorMode::Greedy) return greedy;
    if (g.vertex_count() > exact_cap)
        throw BudgetExceeded("exact coloring refused above " + std::to_string(exact_cap) +
                             " vertices");
    int lb = clique_lower_bound(g);
    if (greedy.num_colors == lb) return greedy;
    ExactCtx ctx{g};
    ctx.order.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) ctx.order[v] = v;
    std::sort(ctx.order.begin(), ctx.order.end(),
              [&](int a, int b) { return g.degree(a) > g.degree(b); });
    ctx.color.assign(g.vertex_count(), -1);
    ctx.best = greedy.num_colors;
    ctx.best_color = greedy.color;
    ctx.lb = lb;
    ctx.search(0, 0);
    Coloring out;
    out.color = ctx.best_color;
    out.num_colors = ctx.best;
    return out;
}

Coloring coloring_with_classes(const Graph& g, int k, ColorMode mode) {
    Coloring base = proper_coloring(g, mode);
    if (k < base.num_colors) throw std::invalid_argument("fewer classes than chromatic number");
    if (k > g.vertex_count()) throw std::invalid_argument("more classes than vertices");
    // split largest classes until k classes exist
    while (base.num_colors < k) {
        auto cls = base.classes();
        int big = 0;
        for (int c = 1; c < base.num_colors; ++c)
            if (cls[c].size() > cls[big].size()) big = c;
        if (cls[big].size() < 2) throw std::invalid_argument("cannot split singleton class");
        base.color[cls[big].back()] = base.num_colors;
        ++base.num_colors;
    }
    base.validate(g);
    return base;
}

}  // namespace pmd
