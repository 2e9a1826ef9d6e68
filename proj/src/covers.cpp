#include "pmd/covers.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pmd/positivity.hpp"

namespace pmd {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    Clock::time_point at;
    bool active;
    explicit Deadline(const Budget& b)
        : at(b.wall == std::chrono::milliseconds::max() ? Clock::time_point::max()
                                                        : Clock::now() + b.wall),
          active(b.wall != std::chrono::milliseconds::max()) {}
    void check(const char* what) const {
        if (active && Clock::now() > at) throw BudgetExceeded(what);
    }
};

std::vector<Edge> induced_edges(const Graph& g, const std::vector<Edge>& member) {
    std::vector<char> in(g.vertex_count(), 0);
    for (const Edge& e : member) in[e.u] = in[e.v] = 1;
    std::vector<Edge> out;
    for (const Edge& e : g.edges())
        if (in[e.u] && in[e.v]) out.push_back(e);
    return out;
}

}  // namespace

bool is_afe(const Graph& g, const std::vector<std::vector<Edge>>& family) {
    std::set<Edge> uni;
    for (const auto& member : family)
        for (const Edge& e : induced_edges(g, member)) uni.insert(e);
    return edge_set_acyclic(g.vertex_count(), {uni.begin(), uni.end()});
}

namespace {

// ---- multiset multicover branch and bound -------------------------------

struct Multicover {
    int ground = 0;
    std::vector<int> demand;
    std::vector<std::vector<int>> circuits;  // each: sorted ground elements
    const Deadline* deadline = nullptr;
    uint64_t nodes = 0, node_cap = UINT64_C(1) << 40;

    std::vector<int> best_choice;  // circuit indices (with repetition)
    int best = INT_MAX;

    std::vector<std::vector<int>> circuits_with;  // per element

    void prepare() {
        circuits_with.assign(ground, {});
        for (int c = 0; c < static_cast<int>(circuits.size()); ++c)
            for (int e : circuits[c]) circuits_with[e].push_back(c);
        for (int e = 0; e < ground; ++e)
            if (demand[e] > 0 && circuits_with[e].empty())
                throw NoCover("element " + std::to_string(e) + " lies in no circuit");
    }

    int lower_bound(const std::vector<int>& deficit) const {
        int mx = 0, total = 0;
        size_t biggest = 1;
        for (const auto& c : circuits) biggest = std::max(biggest, c.size());
        for (int e = 0; e < ground; ++e) {
            mx = std::max(mx, deficit[e]);
            total += std::max(0, deficit[e]);
        }
        return std::max(mx, static_cast<int>((total + biggest - 1) / biggest));
    }

    void greedy_seed() {
        std::vector<int> deficit(demand);
        std::vector<int> pick;
        for (;;) {
            int total = 0;
            for (int e = 0; e < ground; ++e) total += std::max(0, deficit[e]);
            if (total == 0) break;
            int best_c = -1, best_gain = -1;
            for (int c = 0; c < static_cast<int>(circuits.size()); ++c) {
                int gain = 0;
                for (int e : circuits[c])
                    if (deficit[e] > 0) ++gain;
                if (gain > best_gain) { best_gain = gain; best_c = c; }
            }
            if (best_gain <= 0) throw NoCover("greedy cannot cover");
            pick.push_back(best_c);
            for (int e : circuits[best_c]) --deficit[e];
        }
        best = static_cast<int>(pick.size());
        best_choice = pick;
    }

    void dfs(std::vector<int>& deficit, std::vector<int>& chosen) {
        if (deadline && (++nodes & 255) == 0) deadline->check("cover search budget");
        if (nodes > node_cap) throw BudgetExceeded("cover search node cap");
        int lb = lower_bound(deficit);
        if (static_cast<int>(chosen.size()) + lb >= best) return;
        // most-deficient element with fewest circuit options
        int pick_e = -1;
        for (int e = 0; e < ground; ++e) {
            if (deficit[e] <= 0) continue;
            if (pick_e < 0 || circuits_with[e].size() < circuits_with[pick_e].size() ||
                (circuits_with[e].size() == circuits_with[pick_e].size() &&
                 deficit[e] > deficit[pick_e]))
                pick_e = e;
        }
        if (pick_e < 0) {
            best = static_cast<int>(chosen.size());
            best_choice = chosen;
            return;
        }
        for (int c : circuits_with[pick_e]) {
            chosen.push_back(c);
            for (int e : circuits[c]) --deficit[e];
            dfs(deficit, chosen);
            for (int e : circuits[c]) ++deficit[e];
            chosen.pop_back();
        }
    }

    std::vector<int> solve() {
        prepare();
        greedy_seed();
        std::vector<int> deficit(demand), chosen;
        dfs(deficit, chosen);
        std::sort(best_choice.begin(), best_choice.end());
        return best_choice;
    }
};

}  // namespace

CoverSolution tau_n_cover(const Graph& g, const std::vector<Matching>& family, int n,
                          const Budget& budget) {
    int p = static_cast<int>(family.size());
    if (p > 24) throw BudgetExceeded("tau_n: family too large for subset enumeration");
    Deadline dl(budget);
    // AFE is closed under subfamilies, so maximal subfamilies suffice.
    std::vector<uint32_t> afe_sets;
    for (uint32_t s = 1; s < (1u << p); ++s) {
        std::vector<std::vector<Edge>> sub;
        for (int i = 0; i < p; ++i)
            if (s & (1u << i)) sub.push_back(family[i]);
        if (is_afe(g, sub)) afe_sets.push_back(s);
        if ((s & 1023) == 0) dl.check("tau_n subset scan budget");
    }
    std::vector<uint32_t> maximal;
    for (uint32_t s : afe_sets) {
        bool is_max = true;
        for (int i = 0; i < p && is_max; ++i)
            if (!(s & (1u << i)) &&
                std::binary_search(afe_sets.begin(), afe_sets.end(), s | (1u << i)))
                is_max = false;
        if (is_max) maximal.push_back(s);
    }
    Multicover mc;
    mc.ground = p;
    mc.demand.assign(p, n);
    for (uint32_t s : maximal) {
        std::vector<int> c;
        for (int i = 0; i < p; ++i)
            if (s & (1u << i)) c.push_back(i);
        mc.circuits.push_back(std::move(c));
    }
    mc.deadline = &dl;
    auto picks = mc.solve();
    CoverSolution sol;
    for (int c : picks) sol.subfamilies.push_back(mc.circuits[c]);
    return sol;
}

namespace {

// ---- pmd family enumeration ---------------------------------------------

struct FamilyEnum {
    const Graph& g;
    int p;
    const Deadline& dl;
    std::vector<std::vector<int>> parts;  // edge indices
    std::vector<std::vector<char>> used;  // per part: vertex usage
    std::vector<std::vector<Matching>> out;

    bool part_can_take(int part, const Edge& e) const {
        return !used[part][e.u] && !used[part][e.v];
    }

    void rec(int ei) {
        dl.check("pmd family enumeration budget");
        int remaining = g.edge_count() - ei;
        int open_needed = p - static_cast<int>(parts.size());
        if (remaining < open_needed) return;
        if (ei == g.edge_count()) {
            if (static_cast<int>(parts.size()) == p) emit();
            return;
        }
        const Edge& e = g.edge(ei);
        for (size_t i = 0; i < parts.size(); ++i) {
            if (!part_can_take(static_cast<int>(i), e)) continue;
            parts[i].push_back(ei);
            used[i][e.u] = used[i][e.v] = 1;
            rec(ei + 1);
            used[i][e.u] = used[i][e.v] = 0;
            parts[i].pop_back();
        }
        if (static_cast<int>(parts.size()) < p) {
            parts.push_back({ei});
            used.push_back(std::vector<char>(g.vertex_count(), 0));
            used.back()[e.u] = used.back()[e.v] = 1;
            rec(ei + 1);
            parts.pop_back();
            used.pop_back();
        }
    }

    // a family qualifies when some ordering is a pmd
    void emit() {
        std::vector<Matching> fam;
        for (const auto& part : parts) {
            Matching m;
            for (int ei : part) m.push_back(g.edge(ei));
            fam.push_back(std::move(m));
        }
        if (orderable(fam)) out.push_back(std::move(fam));
    }

    bool orderable(const std::vector<Matching>& fam) const {
        std::map<uint32_t, bool> memo;
        return orderable_rec(fam, 0, memo);
    }

    bool orderable_rec(const std::vector<Matching>& fam, uint32_t removed,
                       std::map<uint32_t, bool>& memo) const {
        if (removed == (1u << fam.size()) - 1) return true;
        auto it = memo.find(removed);
        if (it != memo.end()) return it->second;
        std::vector<Edge> gone;
        for (size_t i = 0; i < fam.size(); ++i)
            if (removed & (1u << i)) gone.insert(gone.end(), fam[i].begin(), fam[i].end());
        Graph residual = g.without_edges(gone);
        bool ok = false;
        for (size_t i = 0; i < fam.size() && !ok; ++i) {
            if (removed & (1u << i)) continue;
            if (check_positive(residual, fam[i]).positive)
                ok = orderable_rec(fam, removed | (1u << i), memo);
        }
        memo[removed] = ok;
        return ok;
    }
};

}  // namespace

std::vector<std::vector<Matching>> enumerate_pmd_families(const Graph& g, int p,
                                                          const Budget& budget) {
    if (p < 1 || p > g.edge_count()) return {};
    if (p > 24) throw BudgetExceeded("family size too large");
    Deadline dl(budget);
    FamilyEnum fe{g, p, dl};
    if (g.edge_count() == 0) return {};
    fe.rec(0);
    return std::move(fe.out);
}

std::optional<int> kappa(const Graph& g, int n, int p, const Budget& budget) {
    Deadline dl(budget);
    auto families = enumerate_pmd_families(g, p, budget);
    std::optional<int> best;
    for (const auto& fam : families) {
        dl.check("kappa budget");
        try {
            CoverSolution sol = tau_n_cover(g, fam, n, budget);
            if (!best || sol.size() < *best) best = sol.size();
        } catch (const NoCover&) {
            continue;
        }
    }
    return best;
}

int kappa_cycle_closed_form(int m, int n, int p) {
    if (n < 1) throw OutOfDomain("n must be >= 1");
    if (!(m >= p && p >= 3)) throw OutOfDomain("requires m >= p >= 3");
    if (m == 4 && p == 3) throw OutOfDomain("(m,p)=(4,3) is excluded");
    if (m == 5 && p == 4) return (3 * n + 1) / 2;
    return (p * n + p - 2) / (p - 1);
}

// ---- rho -----------------------------------------------------------------

namespace {

int ceil_div(long long a, long long b) { return static_cast<int>((a + b - 1) / b); }

int rho_formula(const MultiGraph& mg, bool half_set_pruning, int jobs) {
    int n = mg.vertex_count();
    if (n > 20) throw BudgetExceeded("rho formula capped at 20 vertices");
    if (n < 2 || mg.multiplicities().empty()) return mg.multiplicities().empty() ? 0 : 1;
    Graph base = mg.underlying();
    std::vector<uint32_t> adj(n, 0);
    for (const Edge& e : base.edges()) {
        adj[e.u] |= 1u << e.v;
        adj[e.v] |= 1u << e.u;
    }
    std::vector<std::vector<std::pair<int, int>>> wnb(n);  // (neighbor, multiplicity)
    for (const auto& [e, m] : mg.multiplicities()) {
        wnb[e.u].push_back({e.v, m});
        wnb[e.v].push_back({e.u, m});
    }
    size_t total = 1ull << n;
    std::vector<int> esum(total, 0);
    for (size_t mask = 1; mask < total; ++mask) {
        int v = std::countr_zero(mask);
        size_t rest = mask & (mask - 1);
        int add = 0;
        for (auto [w, mult] : wnb[v])
            if (rest & (1ull << w)) add += mult;
        esum[mask] = esum[rest] + add;
    }
    // Lemma-style pruning only applies to uniform multigraphs, where the
    // simple-graph argument scales by the common multiplicity.
    bool prune = half_set_pruning && mg.uniform_multiplicity();
    int best = 1;
#ifdef _OPENMP
    int threads = std::max(1, jobs);
#pragma omp parallel for schedule(static) num_threads(threads) reduction(max : best) if (threads > 1)
#else
    (void)jobs;
#endif
    for (long long mask = 3; mask < static_cast<long long>(total); ++mask) {
        int k = std::popcount(static_cast<uint64_t>(mask));
        if (k < 2) continue;
        if (prune) {
            bool half_set = false;
            for (int u = 0; u < n && !half_set; ++u) {
                if (mask & (1ll << u)) continue;
                int d = std::popcount(adj[u] & static_cast<uint32_t>(mask));
                if (2 * d >= k) half_set = true;
            }
            if (half_set) continue;
        }
        best = std::max(best, ceil_div(esum[mask], k - 1));
    }
    return best;
}

int rho_oracle(const MultiGraph& mg, const Budget& budget) {
    Graph base = mg.underlying();
    int m = base.edge_count();
    if (m == 0) return 0;
    if (m > 20) throw BudgetExceeded("rho oracle capped at 20 distinct pairs");
    Deadline dl(budget);
    // circuits = maximal forests of the underlying simple graph
    std::vector<uint32_t> acyclic;
    for (uint32_t s = 0; s < (1u << m); ++s) {
        std::vector<Edge> es;
        for (int i = 0; i < m; ++i)
            if (s & (1u << i)) es.push_back(base.edge(i));
        if (edge_set_acyclic(base.vertex_count(), es)) acyclic.push_back(s);
        if ((s & 4095) == 0) dl.check("rho oracle scan");
    }
    std::vector<uint32_t> maximal;
    for (uint32_t s : acyclic) {
        bool mx = true;
        for (int i = 0; i < m && mx; ++i)
            if (!(s & (1u << i)) &&
                std::binary_search(acyclic.begin(), acyclic.end(), s | (1u << i)))
                mx = false;
        if (mx) maximal.push_back(s);
    }
    Multicover mc;
    mc.ground = m;
    mc.demand.resize(m);
    for (int i = 0; i < m; ++i) mc.demand[i] = mg.multiplicity(base.edge(i));
    for (uint32_t s : maximal) {
        std::vector<int> c;
        for (int i = 0; i < m; ++i)
            if (s & (1u << i)) c.push_back(i);
        mc.circuits.push_back(std::move(c));
    }
    mc.deadline = &dl;
    return static_cast<int>(mc.solve().size());
}

}  // namespace

int rho(const MultiGraph& mg, RhoMode mode, const Budget& budget, bool half_set_pruning,
        int jobs) {
    if (mode == RhoMode::Formula) return rho_formula(mg, half_set_pruning, jobs);
    return rho_oracle(mg, budget);
}

bool is_eps_set(const Graph& g, const std::vector<Vertex>& X, const Rational& eps) {
    if (eps < 0 || eps > 1) throw std::invalid_argument("eps must be in [0,1]");
    std::vector<char> in(g.vertex_count(), 0);
    for (Vertex v : X) in[v] = 1;
    long long size = static_cast<long long>(X.size());
    for (int u = 0; u < g.vertex_count(); ++u) {
        if (in[u]) continue;
        long long d = 0;
        for (int w : g.neighbors(u))
            if (in[w]) ++d;
        // d >= eps * |X|
        if (d * eps.denominator() >= eps.numerator() * size) return true;
    }
    return false;
}

bool is_eps_graph(const Graph& g, const Rational& eps) {
    int n = g.vertex_count();
    if (n > 20) throw BudgetExceeded("eps-graph check capped at 20 vertices");
    for (uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<Vertex> X;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) X.push_back(v);
        if (!is_eps_set(g, X, eps)) return false;
    }
    return true;
}

// ---- NPB and complete multipartite recognition ---------------------------

bool npb_predicate(const Graph& g, NPBWitness* witness) {
    const auto& es = g.edges();
    for (size_t i = 0; i < es.size(); ++i) {
        for (size_t j = i + 1; j < es.size(); ++j) {
            const Edge& a = es[i];
            const Edge& b = es[j];
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
            std::vector<Vertex> quad{a.u, a.v, b.u, b.v};
            Graph sub = g.induced(quad);
            if (sub.is_forest()) {
                if (witness) *witness = {a, b};
                return false;
            }
        }
    }
    return true;
}

namespace {

struct NPBTree {
    // part sizes keyed by binary string relative to this subtree's root
    int depth = 0;  // 0 = empty tree
    std::map<std::string, int> sizes;
};

std::variant<NPBTree, NPBWitness> recognize_rec(const Graph& g,
                                                const std::vector<Vertex>& orig) {
    int n = g.vertex_count();
    if (n == 1) {
        NPBTree t;
        t.depth = 2;  // lone vertex: {A_0} with an empty maximal level
        t.sizes["0"] = 1;
        return t;
    }
    // u with inclusion-minimal neighborhood, lowest index first
    std::vector<std::set<int>> nb(n);
    for (int v = 0; v < n; ++v) nb[v] = {g.neighbors(v).begin(), g.neighbors(v).end()};
    int u = -1;
    for (int v = 0; v < n; ++v) {
        bool minimal = true;
        for (int w = 0; w < n && minimal; ++w) {
            if (w == v || nb[w].size() >= nb[v].size()) continue;
            if (std::includes(nb[v].begin(), nb[v].end(), nb[w].begin(), nb[w].end()))
                minimal = false;
        }
        if (minimal) { u = v; break; }
    }
    // join check: every non-neighbor v of u must satisfy N(u) subset N(v)
    for (int v = 0; v < n; ++v) {
        if (v == u || nb[u].count(v)) continue;
        if (std::includes(nb[v].begin(), nb[v].end(), nb[u].begin(), nb[u].end())) continue;
        int x = -1, y = -1;
        for (int t : nb[u])
            if (!nb[v].count(t) && t != v) { x = t; break; }
        for (int t : nb[v])
            if (!nb[u].count(t) && t != u) { y = t; break; }
        if (x < 0 || y < 0) throw std::logic_error("minimal-neighborhood choice violated");
        return NPBWitness{Edge(orig[u], orig[x]), Edge(orig[v], orig[y])};
    }

    std::vector<Vertex> side0, side1;
    for (int v = 0; v < n; ++v)
        (nb[u].count(v) ? side0 : side1).push_back(v);

    NPBTree child[2];
    int iso_count[2] = {0, 0};
    for (int s = 0; s < 2; ++s) {
        const auto& side = s == 0 ? side0 : side1;
        std::vector<Vertex> back;
        Graph sub = g.induced(side, &back);
        auto comps = sub.components();
        std::vector<std::vector<Vertex>> edge_comps;
        for (const auto& comp : comps) {
            if (comp.size() == 1 && sub.degree(comp[0]) == 0) ++iso_count[s];
            else edge_comps.push_back(comp);
        }
        if (edge_comps.size() >= 2) {
            // two disjoint edges in different components induce a forest
            std::vector<Vertex> b0, b1;
            Graph c0 = sub.induced(edge_comps[0], &b0);
            Graph c1 = sub.induced(edge_comps[1], &b1);
            Edge e0 = c0.edges().front(), e1 = c1.edges().front();
            return NPBWitness{Edge(orig[back[b0[e0.u]]], orig[back[b0[e0.v]]]),
                              Edge(orig[back[b1[e1.u]]], orig[back[b1[e1.v]]])};
        }
        if (!edge_comps.empty()) {
            std::vector<Vertex> cback;
            Graph comp = sub.induced(edge_comps[0], &cback);
            std::vector<Vertex> corig;
            for (Vertex cv : cback) corig.push_back(orig[back[cv]]);
            auto r = recognize_rec(comp, corig);
            if (std::holds_alternative<NPBWitness>(r)) return std::get<NPBWitness>(r);
            child[s] = std::get<NPBTree>(r);
        }
    }

    NPBTree t;
    t.depth = std::max({child[0].depth, child[1].depth, 0}) + 1;
    t.sizes["0"] = iso_count[0];
    t.sizes["1"] = iso_count[1];
    for (int s = 0; s < 2; ++s)
        for (const auto& [key, sz] : child[s].sizes)
            t.sizes[(s == 0 ? "0" : "1") + key] = sz;
    return t;
}

}  // namespace

NPBResult recognize_npb(const Graph& g) {
    if (!g.connected()) throw Disconnected("recognize_npb requires a connected graph");
    std::vector<Vertex> orig(g.vertex_count());
    std::iota(orig.begin(), orig.end(), 0);
    auto r = recognize_rec(g, orig);
    if (std::holds_alternative<NPBWitness>(r)) return std::get<NPBWitness>(r);
    const NPBTree& t = std::get<NPBTree>(r);
    NPBFamily f;
    f.depth = t.depth;
    for (const auto& [key, sz] : t.sizes)
        if (sz > 0) f.part_size[key] = sz;
    // trim trailing all-empty levels while the sibling rule keeps holding
    for (;;) {
        bool level_empty = true;
        for (const auto& [key, sz] : f.part_size)
            if (static_cast<int>(key.size()) == f.depth && sz > 0) level_empty = false;
        if (!level_empty || f.depth <= 1) break;
        NPBFamily trimmed = f;
        trimmed.depth = f.depth - 1;
        try {
            trimmed.validate();
        } catch (const InvalidSpec&) {
            break;
        }
        f = trimmed;
    }
    f.validate();
    return f;
}

MultipartiteResult recognize_complete_multipartite(const Graph& g) {
    if (!g.connected()) throw Disconnected("requires a connected graph");
    for (int v = 0; v < g.vertex_count(); ++v) {
        for (const Edge& e : g.edges()) {
            if (e.u == v || e.v == v) continue;
            if (!g.adjacent(v, e.u) && !g.adjacent(v, e.v))
                return VertexEdgeWitness{v, e};
        }
    }
    Graph comp = g.complement();
    auto comps = comp.components();
    std::vector<int> sizes;
    for (const auto& c : comps) sizes.push_back(static_cast<int>(c.size()));
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::vector<std::vector<int>> k_subset_cover(int n, int m, int k) {
    if (n < 1 || m < 1 || k < 1 || k > m) throw OutOfDomain("requires 1 <= k <= m, n >= 1");
    int count = ceil_div(static_cast<long long>(n) * m, k);
    std::vector<std::vector<int>> sets;
    long long pos = 0;  // 0-based position in the infinite concatenation of 1..m
    for (int i = 0; i < count; ++i) {
        std::vector<int> s;
        for (int j = 0; j < k; ++j) s.push_back(static_cast<int>((pos + j) % m) + 1);
        std::sort(s.begin(), s.end());
        sets.push_back(std::move(s));
        pos += k;
    }
    return sets;
}

// ---- acyclic families of ordered k-partitions ----------------------------

namespace {

bool family_acyclic(int b, int k, const std::vector<std::vector<int>>& rows) {
    for (int j = 0; j < k; ++j) {
        // multiset of path edges over all rows for slot j
        std::vector<Edge> edges;
        for (const auto& row : rows) {
            std::vector<int> block;
            for (int x = 0; x < b; ++x)
                if (row[x] == j) block.push_back(x);
            for (size_t t = 0; t + 1 < block.size(); ++t)
                edges.emplace_back(block[t], block[t + 1]);
        }
        std::set<Edge> seen;
        for (const Edge& e : edges)
            if (!seen.insert(e).second) return false;  // parallel pair is a cycle
        if (!edge_set_acyclic(b, edges)) return false;
    }
    return true;
}

struct PartitionSearch {
    int a, b, k;
    const Deadline& dl;
    std::vector<std::vector<int>> rows;
    bool found = false;
    std::vector<std::vector<int>> witness;

    void rec(int row) {
        if (found) return;
        dl.check("ordered k-partition search budget");
        if (row == a) {
            found = true;
            witness = rows;
            return;
        }
        std::vector<int> assign(b, 0);
        gen_row(row, assign, 0);
    }

    void gen_row(int row, std::vector<int>& assign, int x) {
        if (found) return;
        if (x == b) {
            if (row > 0 && assign < rows[row - 1]) return;  // rows form a multiset
            rows.push_back(assign);
            if (family_acyclic(b, k, rows)) rec(row + 1);
            rows.pop_back();
            return;
        }
        for (int part = 0; part < k; ++part) {
            assign[x] = part;
            gen_row(row, assign, x + 1);
            if (found) return;
        }
    }
};

}  // namespace

std::pair<int, OrderedPartitionFamily> min_acyclic_ordered_kpartitions(int a, int b,
                                                                       const Budget& budget) {
    if (a < 1 || b < 1 || a > b) throw OutOfDomain("requires 1 <= a <= b");
    Deadline dl(budget);
    for (int k = 1; k <= b; ++k) {
        PartitionSearch ps{a, b, k, dl};
        ps.rec(0);
        if (ps.found) {
            OrderedPartitionFamily fam;
            fam.b = b;
            fam.k = k;
            fam.assignment = ps.witness;
            return {k, fam};
        }
    }
    throw std::logic_error("k = b always admits an acyclic family");
}

// ---- NPB rho restricted maximum -------------------------------------------

namespace {

long long block_size_under(const NPBFamily& f, const std::string& prefix) {
    long long t = 0;
    for (const auto& [s, k] : f.part_size)
        if (s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0) t += k;
    return t;
}

}  // namespace

NPBRhoDetail kappa_npb_rho_restricted_detail(const NPBFamily& f_in, int n,
                                             const Budget& budget) {
    if (n < 1) throw InvalidFamily("multiplicity must be >= 1");
    NPBFamily f = f_in;
    f.validate();
    // normalize: |B_{1^i 0}| <= |B_{1^i 1}| by sibling swaps, outermost first
    std::string ones;
    for (int i = 0; i < f.depth; ++i) {
        if (block_size_under(f, ones + "0") > block_size_under(f, ones + "1"))
            f = f.swapped_below(ones);
        ones += "1";
    }
    Graph g = npb_graph(f);
    int nv = g.vertex_count();
    if (nv < 2) throw InvalidFamily("graph too small for rho");

    NPBRhoDetail detail;
    auto blocks = npb_blocks(f);
    std::vector<char> in_xprime(nv, 0);
    std::string pref;
    for (int i = 0; i < f.depth; ++i) {
        std::string key = pref + "0";
        for (const auto& [s, vs] : blocks)
            if (s.size() >= key.size() && s.compare(0, key.size(), key) == 0)
                for (Vertex v : vs) in_xprime[v] = 1;
        pref += "1";
    }
    for (int v = 0; v < nv; ++v)
        if (in_xprime[v]) detail.xprime.push_back(v);

    auto value_of = [&](const std::vector<char>& in) {
        long long edges = 0;
        int size = 0;
        for (int v = 0; v < nv; ++v)
            if (in[v]) ++size;
        for (const Edge& e : g.edges())
            if (in[e.u] && in[e.v]) ++edges;
        if (size < 2) return 0;
        return ceil_div(static_cast<long long>(n) * edges, size - 1);
    };

    std::vector<char> all(nv, 1);
    detail.value_at_v = value_of(all);
    detail.value_at_xprime = value_of(in_xprime);

    // complete multipartite inputs peak at the full vertex set
    if (npb_predicate(g) && std::holds_alternative<std::vector<int>>(
                                recognize_complete_multipartite(g))) {
        detail.value = detail.value_at_v;
        detail.best_set.resize(nv);
        std::iota(detail.best_set.begin(), detail.best_set.end(), 0);
        return detail;
    }

    std::vector<Vertex> free;
    for (int v = 0; v < nv; ++v)
        if (!in_xprime[v]) free.push_back(v);
    if (free.size() > 22) throw BudgetExceeded("restricted maximum: too many free vertices");
    Deadline dl(budget);
    int best = 0;
    std::vector<Vertex> best_set;
    for (uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
        if ((mask & 1023) == 0) dl.check("restricted maximum budget");
        std::vector<char> in(in_xprime);
        for (size_t i = 0; i < free.size(); ++i)
            if (mask & (1u << i)) in[free[i]] = 1;
        int val = value_of(in);
        if (val > best) {
            best = val;
            best_set.clear();
            for (int v = 0; v < nv; ++v)
                if (in[v]) best_set.push_back(v);
        }
    }
    detail.value = best;
    detail.best_set = best_set;
    return detail;
}

int kappa_npb_rho_restricted(const NPBFamily& f, int n, const Budget& budget) {
    return kappa_npb_rho_restricted_detail(f, n, budget).value;
}

}  // namespace pmd
