#include "pmd/solver.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <functional>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pmd/automorphism.hpp"

namespace pmd {

namespace {

using Clock = std::chrono::steady_clock;

int lower_bound_for_degrees(int n, const std::vector<int>& deg,
                            const std::vector<int>& comp_of, int comp_count) {
    // per residual component: Delta, and r+1 when r-regular with r >= 2
    std::vector<int> mx(comp_count, 0), mn(comp_count, INT_MAX);
    for (int v = 0; v < n; ++v) {
        if (deg[v] == 0) continue;
        int c = comp_of[v];
        mx[c] = std::max(mx[c], deg[v]);
        mn[c] = std::min(mn[c], deg[v]);
    }
    int lb = 0;
    for (int c = 0; c < comp_count; ++c) {
        if (mx[c] == 0) continue;
        int b = mx[c];
        if (mn[c] == mx[c] && mx[c] >= 2) b = mx[c] + 1;
        lb = std::max(lb, b);
    }
    return lb;
}

struct CompCtx {
    Graph comp;
    std::vector<std::vector<std::pair<int, int>>> incident;  // v -> (edge idx, other)

    explicit CompCtx(Graph g) : comp(std::move(g)) {
        incident.assign(comp.vertex_count(), {});
        for (int i = 0; i < comp.edge_count(); ++i) {
            const Edge& e = comp.edge(i);
            incident[e.u].push_back({i, e.v});
            incident[e.v].push_back({i, e.u});
        }
    }

    std::vector<int> degrees(uint64_t mask) const {
        std::vector<int> deg(comp.vertex_count(), 0);
        for (int i = 0; i < comp.edge_count(); ++i)
            if (mask & (1ull << i)) {
                ++deg[comp.edge(i).u];
                ++deg[comp.edge(i).v];
            }
        return deg;
    }

    int residual_lower_bound(uint64_t mask) const {
        int n = comp.vertex_count();
        std::vector<int> deg = degrees(mask);
        std::vector<int> parent(n);
        for (int v = 0; v < n; ++v) parent[v] = v;
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int i = 0; i < comp.edge_count(); ++i)
            if (mask & (1ull << i)) parent[find(comp.edge(i).u)] = find(comp.edge(i).v);
        std::vector<int> comp_of(n), remap(n, -1);
        int cc = 0;
        for (int v = 0; v < n; ++v) {
            int r = find(v);
            if (remap[r] < 0) remap[r] = cc++;
            comp_of[v] = remap[r];
        }
        return lower_bound_for_degrees(n, deg, comp_of, cc);
    }

    bool matching_positive(uint64_t mask, const std::vector<int>& medges) const {
        int n = comp.vertex_count();
        static thread_local std::vector<int> deg, in;
        deg.assign(n, 0);
        in.assign(n, 0);
        for (int ei : medges) {
            in[comp.edge(ei).u] = 1;
            in[comp.edge(ei).v] = 1;
        }
        for (int ei : medges) {
            for (Vertex v : {comp.edge(ei).u, comp.edge(ei).v}) {
                int d = 0;
                for (auto [idx, w] : incident[v])
                    if ((mask & (1ull << idx)) && in[w]) ++d;
                deg[v] = d;
            }
        }
        size_t left = medges.size();
        std::vector<char> alive(medges.size(), 1);
        while (left > 0) {
            bool progress = false;
            for (size_t i = 0; i < medges.size(); ++i) {
                if (!alive[i]) continue;
                const Edge& e = comp.edge(medges[i]);
                if (deg[e.u] == 1 || deg[e.v] == 1) {
                    alive[i] = 0;
                    --left;
                    for (Vertex x : {e.u, e.v}) {
                        in[x] = 0;
                        for (auto [idx, w] : incident[x])
                            if ((mask & (1ull << idx)) && in[w]) --deg[w];
                    }
                    progress = true;
                }
            }
            if (!progress) return false;
        }
        return true;
    }
};

struct CandidateCollector {
    const CompCtx& ctx;
    uint64_t mask;
    std::vector<int> required;  // vertices that every candidate must cover
    int max_size;
    std::vector<std::vector<int>> out;

    std::vector<int> current;
    std::vector<char> used;
    int uncovered = 0;
    std::vector<char> is_req;

    void collect() {
        used.assign(ctx.comp.vertex_count(), 0);
        is_req.assign(ctx.comp.vertex_count(), 0);
        for (int v : required) is_req[v] = 1;
        uncovered = static_cast<int>(required.size());
        dfs(0);
    }

    bool feasible(int from) const {
        if (uncovered > 2 * (max_size - static_cast<int>(current.size()))) return false;
        for (int r : required) {
            if (used[r]) continue;
            bool ok = false;
            for (auto [idx, w] : ctx.incident[r])
                if (idx >= from && (mask & (1ull << idx)) && !used[w]) { ok = true; break; }
            if (!ok) return false;
        }
        return true;
    }

    void dfs(int from) {
        if (!current.empty() && uncovered == 0) out.push_back(current);
        if (static_cast<int>(current.size()) == max_size) return;
        if (!feasible(from)) return;
        for (int i = from; i < ctx.comp.edge_count(); ++i) {
            if (!(mask & (1ull << i))) continue;
            const Edge& e = ctx.comp.edge(i);
            if (used[e.u] || used[e.v]) continue;
            current.push_back(i);
            used[e.u] = used[e.v] = 1;
            int delta = (is_req[e.u] ? 1 : 0) + (is_req[e.v] ? 1 : 0);
            uncovered -= delta;
            if (ctx.matching_positive(mask, current)) dfs(i + 1);
            uncovered += delta;
            used[e.u] = used[e.v] = 0;
            current.pop_back();
        }
    }
};

enum class Res { Found, Impossible, Budget };

struct SearchState {
    const CompCtx& ctx;
    Clock::time_point deadline;
    bool has_deadline;
    uint64_t node_cap;
    uint64_t nodes = 0;
    std::unordered_map<uint64_t, int> memo;  // mask -> max parts_left proven impossible
    std::vector<std::vector<int>> solution;  // parts as edge-index lists
    const std::atomic<int>* stop_flag = nullptr;  // parallel early-stop (root index)
    int my_root_index = -1;

    bool out_of_budget() {
        if (++nodes > node_cap) return true;
        if (has_deadline && (nodes & 1023) == 0 && Clock::now() > deadline) return true;
        if (stop_flag && (nodes & 255) == 0 && stop_flag->load(std::memory_order_relaxed) < my_root_index)
            return true;  // treated as budget: result will be discarded
        return false;
    }

    std::vector<std::vector<int>> candidates(uint64_t mask, int parts_left) {
        std::vector<int> deg = ctx.degrees(mask);
        CandidateCollector cc{ctx, mask};
        for (int v = 0; v < ctx.comp.vertex_count(); ++v)
            if (deg[v] == parts_left) cc.required.push_back(v);
        cc.max_size = ctx.comp.vertex_count() / 2;
        cc.collect();
        std::stable_sort(cc.out.begin(), cc.out.end(),
                         [](const std::vector<int>& a, const std::vector<int>& b) {
                             if (a.size() != b.size()) return a.size() > b.size();
                             return a < b;
                         });
        return cc.out;
    }

    Res search(uint64_t mask, int parts_left) {
        if (mask == 0) return Res::Found;
        if (parts_left <= 0) return Res::Impossible;
        if (out_of_budget()) return Res::Budget;
        auto it = memo.find(mask);
        if (it != memo.end() && it->second >= parts_left) return Res::Impossible;
        if (ctx.residual_lower_bound(mask) > parts_left) {
            remember(mask, parts_left);
            return Res::Impossible;
        }
        bool budget_hit = false;
        for (const auto& cand : candidates(mask, parts_left)) {
            uint64_t next = mask;
            for (int ei : cand) next &= ~(1ull << ei);
            Res r = search(next, parts_left - 1);
            if (r == Res::Found) {
                solution.push_back(cand);
                return Res::Found;
            }
            if (r == Res::Budget) { budget_hit = true; break; }
        }
        if (budget_hit) return Res::Budget;
        remember(mask, parts_left);
        return Res::Impossible;
    }

    void remember(uint64_t mask, int parts_left) {
        auto [it, fresh] = memo.try_emplace(mask, parts_left);
        if (!fresh) it->second = std::max(it->second, parts_left);
    }
};

struct CompOutcome {
    Res res = Res::Budget;
    std::vector<std::vector<int>> parts;  // edge-index lists, first part first
    uint64_t nodes = 0;
};

CompOutcome decide_component(const CompCtx& ctx, int p, const Budget& budget,
                             Clock::time_point start, bool symmetry, int jobs) {
    CompOutcome out;
    if (ctx.comp.edge_count() > 64) return out;  // budget-style refusal
    uint64_t full = ctx.comp.edge_count() == 64 ? ~0ull : (1ull << ctx.comp.edge_count()) - 1;
    bool has_deadline = budget.wall != std::chrono::milliseconds::max();
    Clock::time_point deadline =
        has_deadline ? start + budget.wall : Clock::time_point::max();

    if (full == 0) {
        out.res = Res::Found;
        return out;
    }

    // Root candidates, optionally folded to automorphism orbit representatives.
    SearchState root{ctx, deadline, has_deadline, budget.max_nodes};
    auto cands = root.candidates(full, p);
    out.nodes += root.nodes;
    if (ctx.residual_lower_bound(full) > p) {
        out.res = Res::Impossible;
        return out;
    }
    if (symmetry) {
        try {
            auto autos = automorphisms(ctx.comp);
            std::vector<std::vector<int>> reps;
            std::vector<Matching> seen;
            for (const auto& cand : cands) {
                Matching m;
                for (int ei : cand) m.push_back(ctx.comp.edge(ei));
                Matching rep = matching_orbit_representative(ctx.comp, m, autos);
                if (std::find(seen.begin(), seen.end(), rep) == seen.end()) {
                    seen.push_back(rep);
                    reps.push_back(cand);
                }
            }
            cands = std::move(reps);
        } catch (const std::runtime_error&) {
            // group too large: fall through with all candidates
        }
    }
    if (cands.empty()) {
        out.res = Res::Impossible;
        return out;
    }

    int nc = static_cast<int>(cands.size());
    std::vector<Res> results(nc, Res::Budget);
    std::vector<std::vector<std::vector<int>>> sols(nc);
    std::atomic<int> stop_at{nc};
    std::atomic<uint64_t> total_nodes{0};

#ifdef _OPENMP
    int threads = std::max(1, jobs);
#else
    int threads = 1;
    (void)jobs;
#endif

    auto run_candidate = [&](int i) {
        if (stop_at.load(std::memory_order_relaxed) < i) return;
        SearchState st{ctx, deadline, has_deadline, budget.max_nodes};
        st.stop_flag = threads > 1 ? &stop_at : nullptr;
        st.my_root_index = i;
        uint64_t next = full;
        for (int ei : cands[i]) next &= ~(1ull << ei);
        Res r = st.search(next, p - 1);
        total_nodes.fetch_add(st.nodes, std::memory_order_relaxed);
        results[i] = r;
        if (r == Res::Found) {
            st.solution.push_back(cands[i]);
            std::reverse(st.solution.begin(), st.solution.end());
            sols[i] = std::move(st.solution);
            int cur = stop_at.load();
            while (i < cur && !stop_at.compare_exchange_weak(cur, i)) {}
        }
    };

#ifdef _OPENMP
    if (threads > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (int i = 0; i < nc; ++i) run_candidate(i);
    } else
#endif
    {
        for (int i = 0; i < nc; ++i) {
            run_candidate(i);
            if (results[i] == Res::Found || results[i] == Res::Budget) break;
        }
    }

    out.nodes += total_nodes.load();
    for (int i = 0; i < nc; ++i) {
        if (results[i] == Res::Found) {
            out.res = Res::Found;
            out.parts = sols[i];
            return out;
        }
        if (results[i] == Res::Budget) {
            out.res = Res::Budget;
            return out;
        }
    }
    out.res = Res::Impossible;
    return out;
}

}  // namespace

int pmd_lower_bound(const Graph& g) {
    std::vector<int> deg(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
    auto ids = g.component_ids();
    int cc = g.vertex_count() ? 1 + *std::max_element(ids.begin(), ids.end()) : 0;
    return lower_bound_for_degrees(g.vertex_count(), deg, ids, cc);
}

SolveOutcome pmd_decide(const Graph& g, int p, const Budget& budget, bool symmetry, int jobs) {
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    SolveOutcome out;
    out.target_p = p;
    out.best_lower = pmd_lower_bound(g);
    Clock::time_point start = Clock::now();

    auto comps = g.components();
    std::vector<std::vector<std::vector<Edge>>> comp_parts;
    for (const auto& vs : comps) {
        std::vector<Vertex> back;
        Graph sub = g.induced(vs, &back);
        if (sub.edge_count() == 0) continue;
        CompCtx ctx(std::move(sub));
        CompOutcome co = decide_component(ctx, p, budget, start, symmetry, jobs);
        out.nodes += co.nodes;
        if (co.res == Res::Impossible) {
            out.kind = SolveOutcome::Kind::ProvedImpossible;
            return out;
        }
        if (co.res == Res::Budget) {
            out.kind = SolveOutcome::Kind::OutOfBudget;
            return out;
        }
        std::vector<std::vector<Edge>> parts;
        for (const auto& part : co.parts) {
            std::vector<Edge> pe;
            for (int ei : part) {
                const Edge& e = ctx.comp.edge(ei);
                pe.emplace_back(back[e.u], back[e.v]);
            }
            std::sort(pe.begin(), pe.end());
            parts.push_back(std::move(pe));
        }
        comp_parts.push_back(std::move(parts));
    }
    size_t max_parts = 0;
    for (const auto& parts : comp_parts) max_parts = std::max(max_parts, parts.size());
    Decomposition d;
    d.parts.resize(max_parts);
    for (const auto& parts : comp_parts)
        for (size_t i = 0; i < parts.size(); ++i)
            d.parts[i].insert(d.parts[i].end(), parts[i].begin(), parts[i].end());
    for (auto& part : d.parts) std::sort(part.begin(), part.end());
    out.kind = SolveOutcome::Kind::Found;
    out.decomposition = std::move(d);
    out.best_upper = static_cast<int>(max_parts);
    return out;
}

std::pair<int, Decomposition> pmd_exact(const Graph& g, const Budget& budget, bool symmetry,
                                        int jobs) {
    if (g.edge_count() == 0) return {0, Decomposition{}};
    int lb = std::max(1, pmd_lower_bound(g));
    Clock::time_point start = Clock::now();
    bool has_deadline = budget.wall != std::chrono::milliseconds::max();
    for (int p = lb;; ++p) {
        Budget rem = budget;
        if (has_deadline) {
            auto elapsed =
                std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
            if (elapsed >= budget.wall)
                throw BudgetExceeded("pmd_exact: budget exhausted; bounds [" +
                                     std::to_string(p) + ", ?]");
            rem.wall = budget.wall - elapsed;
        }
        SolveOutcome oc = pmd_decide(g, p, rem, symmetry, jobs);
        if (oc.found()) return {oc.decomposition.part_count(), std::move(oc.decomposition)};
        if (oc.kind == SolveOutcome::Kind::OutOfBudget)
            throw BudgetExceeded("pmd_exact: budget exhausted; bounds [" + std::to_string(p) +
                                 ", ?]");
    }
}

namespace {

// Reference search: ordered parts, every positive matching of the residual
// tried in lexicographic order, no pruning beyond the part budget.
bool naive_decide(const Graph& residual, int parts_left) {
    if (residual.edge_count() == 0) return true;
    if (parts_left == 0) return false;
    bool ok = false;
    for_each_positive_matching(residual, 1, residual.vertex_count() / 2,
                               [&](const Matching& m) {
                                   if (naive_decide(residual.without_edges(m), parts_left - 1))
                                       ok = true;
                                   return !ok;
                               });
    return ok;
}

}  // namespace

int pmd_exact_naive(const Graph& g) {
    for (int p = 0;; ++p)
        if (naive_decide(g, p)) return p;
}

namespace {

bool maximal_decide(const Graph& residual, int parts_left,
                    std::vector<std::vector<Edge>>& acc) {
    if (residual.edge_count() == 0) return true;
    if (parts_left == 0) return false;
    auto all = enumerate_positive_matchings(residual, 1, residual.vertex_count() / 2);
    std::vector<char> maximal(all.size(), 1);
    for (size_t i = 0; i < all.size(); ++i) {
        for (size_t j = 0; j < all.size() && maximal[i]; ++j) {
            if (i == j || all[j].size() <= all[i].size()) continue;
            if (std::includes(all[j].begin(), all[j].end(), all[i].begin(), all[i].end()))
                maximal[i] = 0;
        }
    }
    std::vector<size_t> order;
    for (size_t i = 0; i < all.size(); ++i)
        if (maximal[i]) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return all[a].size() > all[b].size(); });
    for (size_t i : order) {
        acc.push_back(all[i]);
        if (maximal_decide(residual.without_edges(all[i]), parts_left - 1, acc)) return true;
        acc.pop_back();
    }
    return false;
}

}  // namespace

std::pair<int, Decomposition> pmd_upper_bound_maximal(const Graph& g, const Budget& budget) {
    (void)budget;
    if (g.edge_count() == 0) return {0, Decomposition{}};
    for (int p = std::max(1, pmd_lower_bound(g));; ++p) {
        std::vector<std::vector<Edge>> acc;
        if (maximal_decide(g, p, acc)) {
            Decomposition d;
            d.parts = acc;
            return {p, d};
        }
    }
}

}  // namespace pmd
