#include "pmd/automorphism.hpp"

#include <algorithm>

namespace pmd {

namespace {

struct AutoCtx {
    const Graph& g;
    size_t cap;
    std::vector<int> map;
    std::vector<char> used;
    std::vector<std::vector<int>>& out;

    void search(int v) {
        int n = g.vertex_count();
        if (v == n) {
            out.push_back(map);
            if (out.size() > cap) throw BudgetExceededError();
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || g.degree(v) != g.degree(w)) continue;
            bool ok = true;
            for (int x : g.neighbors(v)) {
                if (x < v && !g.adjacent(map[x], w)) { ok = false; break; }
            }
            if (ok) {
                int mapped_a = 0;
                for (int x : g.neighbors(v)) if (x < v) ++mapped_a;
                int mapped_b = 0;
                for (int y : g.neighbors(w)) if (used[y]) ++mapped_b;
                if (mapped_a != mapped_b) ok = false;
            }
            if (!ok) continue;
            map[v] = w;
            used[w] = 1;
            search(v + 1);
            used[w] = 0;
        }
    }
    struct BudgetExceededError {};
};

}  // namespace

std::vector<std::vector<int>> automorphisms(const Graph& g, size_t cap) {
    std::vector<std::vector<int>> out;
    AutoCtx ctx{g, cap, std::vector<int>(g.vertex_count(), -1),
                std::vector<char>(g.vertex_count(), 0), out};
    try {
        ctx.search(0);
    } catch (const AutoCtx::BudgetExceededError&) {
        throw std::runtime_error("automorphism group larger than cap");
    }
    return out;
}

Matching matching_orbit_representative(const Graph& g, const Matching& m,
                                       const std::vector<std::vector<int>>& autos) {
    Matching best(m);
    std::sort(best.begin(), best.end());
    for (const auto& p : autos) {
        Matching img;
        img.reserve(m.size());
        for (const Edge& e : m) img.emplace_back(p[e.u], p[e.v]);
        std::sort(img.begin(), img.end());
        if (img < best) best = img;
    }
    return best;
}

}  // namespace pmd
