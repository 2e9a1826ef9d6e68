#include "pmd/families.hpp"

#include <algorithm>
#include <sstream>

namespace pmd {

int NPBFamily::size_of(const std::string& s) const {
    auto it = part_size.find(s);
    return it == part_size.end() ? 0 : it->second;
}

int NPBFamily::total_vertices() const {
    int t = 0;
    for (const auto& [s, k] : part_size) t += k;
    return t;
}

void NPBFamily::validate() const {
    if (depth < 1) throw InvalidSpec("NPB depth must be >= 1");
    for (const auto& [s, k] : part_size) {
        if (s.empty() || static_cast<int>(s.size()) > depth)
            throw InvalidSpec("NPB key length out of range: " + s);
        if (s.find_first_not_of("01") != std::string::npos)
            throw InvalidSpec("NPB key must be binary: " + s);
        if (k < 0) throw InvalidSpec("NPB part size negative");
    }
    // sibling rule at maximal depth
    std::vector<std::string> prefixes{""};
    for (int l = 1; l < depth; ++l) {
        std::vector<std::string> next;
        for (const auto& p : prefixes) {
            next.push_back(p + "0");
            next.push_back(p + "1");
        }
        prefixes = std::move(next);
    }
    for (const auto& p : prefixes) {
        bool z0 = size_of(p + "0") == 0, z1 = size_of(p + "1") == 0;
        if (z0 != z1)
            throw InvalidSpec("NPB sibling rule violated at prefix '" + p + "'");
    }
}

NPBFamily NPBFamily::swapped_below(const std::string& prefix) const {
    NPBFamily out;
    out.depth = depth;
    const std::string a = prefix + "0", b = prefix + "1";
    for (const auto& [s, k] : part_size) {
        std::string t = s;
        if (s.compare(0, a.size(), a) == 0 && s.size() >= a.size())
            t = b + s.substr(a.size());
        else if (s.compare(0, b.size(), b) == 0 && s.size() >= b.size())
            t = a + s.substr(b.size());
        out.part_size[t] = k;
    }
    return out;
}

Graph path_graph(int m) {
    if (m < 1) throw InvalidSpec("path needs >= 1 vertex");
    std::vector<Edge> es;
    for (int i = 0; i + 1 < m; ++i) es.emplace_back(i, i + 1);
    return Graph(m, std::move(es));
}

Graph cycle_graph(int n) {
    if (n < 3) throw InvalidSpec("cycle needs >= 3 vertices");
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(es));
}

Graph complete_graph(int n) {
    if (n < 1) throw InvalidSpec("complete graph needs >= 1 vertex");
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return Graph(n, std::move(es));
}

Graph complete_bipartite(int a, int b) {
    if (a < 1 || b < 1) throw InvalidSpec("K_{a,b} needs a,b >= 1");
    std::vector<Edge> es;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
    return Graph(a + b, std::move(es));
}

Graph complete_multipartite(const std::vector<int>& sizes) {
    if (sizes.empty()) throw InvalidSpec("multipartite needs >= 1 part");
    int n = 0;
    std::vector<int> part;
    for (int i = 0; i < static_cast<int>(sizes.size()); ++i) {
        if (sizes[i] < 1) throw InvalidSpec("part sizes must be >= 1");
        for (int k = 0; k < sizes[i]; ++k) part.push_back(i);
        n += sizes[i];
    }
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part[u] != part[v]) es.emplace_back(u, v);
    return Graph(n, std::move(es));
}

Graph hypercube(int n) {
    if (n < 1) throw InvalidSpec("hypercube dimension must be >= 1");
    if (n > 20) throw InvalidSpec("hypercube dimension too large");
    int N = 1 << n;
    std::vector<Edge> es;
    for (int v = 0; v < N; ++v)
        for (int b = 0; b < n; ++b)
            if (!(v & (1 << b))) es.emplace_back(v, v | (1 << b));
    return Graph(N, std::move(es));
}

Graph circular_wall(int m, int n) {
    if (m < 2) throw InvalidSpec("circular wall needs m >= 2");
    if (n < 4 || n % 2 != 0) throw InvalidSpec("circular wall needs even n >= 4");
    std::vector<Edge> es;
    auto id = [n](int i, int j) { return i * n + j; };  // 0-based (row, col)
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) es.emplace_back(id(i, j), id(i, (j + 1) % n));
    // rung (i,j)-(i+1,j) kept when 1-based i+j is even, i.e. 0-based i+j even
    for (int i = 0; i + 1 < m; ++i)
        for (int j = 0; j < n; ++j)
            if ((i + j) % 2 == 0) es.emplace_back(id(i, j), id(i + 1, j));
    Graph g(m * n, std::move(es));
    std::vector<std::string> lab(m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            lab[id(i, j)] = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    g.set_labels(std::move(lab));
    return g;
}

std::vector<std::pair<std::string, std::vector<Vertex>>> npb_blocks(const NPBFamily& f) {
    f.validate();
    std::vector<std::string> keys;
    for (const auto& [s, k] : f.part_size)
        if (k > 0) keys.push_back(s);
    std::sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<std::pair<std::string, std::vector<Vertex>>> blocks;
    int next = 0;
    for (const auto& s : keys) {
        std::vector<Vertex> vs;
        for (int i = 0; i < f.size_of(s); ++i) vs.push_back(next++);
        blocks.emplace_back(s, std::move(vs));
    }
    return blocks;
}

Graph npb_graph(const NPBFamily& f) {
    auto blocks = npb_blocks(f);
    int n = 0;
    for (const auto& [s, vs] : blocks) n += static_cast<int>(vs.size());
    auto is_prefix = [](const std::string& p, const std::string& s) {
        return p.size() <= s.size() && s.compare(0, p.size(), p) == 0;
    };
    std::vector<Edge> es;
    for (size_t a = 0; a < blocks.size(); ++a) {
        for (size_t b = a + 1; b < blocks.size(); ++b) {
            const auto& [s, us] = blocks[a];
            const auto& [t, ws] = blocks[b];
            bool adj;
            if (s.size() == t.size())
                adj = s != t;
            else  // |s| < |t| by block order
                adj = !is_prefix(s, t);
            if (!adj) continue;
            for (Vertex u : us)
                for (Vertex w : ws) es.emplace_back(u, w);
        }
    }
    Graph g(n, std::move(es));
    std::vector<std::string> lab(n);
    for (const auto& [s, vs] : blocks)
        for (size_t i = 0; i < vs.size(); ++i)
            lab[vs[i]] = "A" + s + (vs.size() > 1 ? "#" + std::to_string(i + 1) : "");
    g.set_labels(std::move(lab));
    return g;
}

Graph cartesian_product(const Graph& g1, const Graph& g2) {
    int n1 = g1.vertex_count(), n2 = g2.vertex_count();
    std::vector<Edge> es;
    es.reserve(static_cast<size_t>(g1.edge_count()) * n2 +
               static_cast<size_t>(n1) * g2.edge_count());
    auto id = [n2](int i, int j) { return i * n2 + j; };
    for (const Edge& e : g1.edges())
        for (int j = 0; j < n2; ++j) es.emplace_back(id(e.u, j), id(e.v, j));
    for (int i = 0; i < n1; ++i)
        for (const Edge& e : g2.edges()) es.emplace_back(id(i, e.u), id(i, e.v));
    Graph g(n1 * n2, std::move(es));
    std::vector<std::string> lab(static_cast<size_t>(n1) * n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            lab[id(i, j)] = "(" + g1.display_label(i) + "," + g2.display_label(j) + ")";
    g.set_labels(std::move(lab));
    return g;
}

Graph join_graphs(const Graph& g1, const Graph& g2) {
    int n1 = g1.vertex_count(), n2 = g2.vertex_count();
    std::vector<Edge> es(g1.edges());
    for (const Edge& e : g2.edges()) es.emplace_back(e.u + n1, e.v + n1);
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v) es.emplace_back(u, n1 + v);
    return Graph(n1 + n2, std::move(es));
}

Graph disjoint_union(const Graph& g1, const Graph& g2) {
    int n1 = g1.vertex_count();
    std::vector<Edge> es(g1.edges());
    for (const Edge& e : g2.edges()) es.emplace_back(e.u + n1, e.v + n1);
    return Graph(n1 + g2.vertex_count(), std::move(es));
}

MultiGraph multiply(const Graph& g, int n) {
    if (n < 1) throw InvalidSpec("multiplicity must be >= 1");
    std::map<Edge, int> mult;
    for (const Edge& e : g.edges()) mult[e] = n;
    return MultiGraph(g.vertex_count(), std::move(mult));
}

namespace {

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

// split "a,b(c,d),e" at top-level commas
std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

FamilySpec FamilySpec::parse(const std::string& text) {
    FamilySpec spec;
    auto paren = text.find('(');
    if (paren != std::string::npos && text.back() == ')') {
        std::string head = text.substr(0, paren);
        std::string inner = text.substr(paren + 1, text.size() - paren - 2);
        if (head == "box") spec.kind = Kind::BoxProduct;
        else if (head == "join") spec.kind = Kind::Join;
        else if (head == "union") spec.kind = Kind::DisjointUnion;
        else throw InvalidSpec("unknown composition: " + head);
        for (const auto& part : split_args(inner)) spec.children.push_back(parse(part));
        if (spec.children.empty()) throw InvalidSpec("empty composition");
        return spec;
    }
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "path" || head == "p") { spec.kind = Kind::Path; spec.params = parse_ints(rest); }
    else if (head == "cycle" || head == "c") { spec.kind = Kind::Cycle; spec.params = parse_ints(rest); }
    else if (head == "complete" || head == "k") { spec.kind = Kind::Complete; spec.params = parse_ints(rest); }
    else if (head == "bipartite" || head == "kab") { spec.kind = Kind::CompleteBipartite; spec.params = parse_ints(rest); }
    else if (head == "multipartite") { spec.kind = Kind::CompleteMultipartite; spec.params = parse_ints(rest); }
    else if (head == "hypercube" || head == "q") { spec.kind = Kind::Hypercube; spec.params = parse_ints(rest); }
    else if (head == "cw") { spec.kind = Kind::CircularWall; spec.params = parse_ints(rest); }
    else if (head == "npb") {
        // npb:<depth>:s=k,s=k,...
        spec.kind = Kind::NPB;
        auto colon2 = rest.find(':');
        if (colon2 == std::string::npos) throw InvalidSpec("npb needs depth and parts");
        spec.npb.depth = std::stoi(rest.substr(0, colon2));
        for (const auto& kv : split_args(rest.substr(colon2 + 1))) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw InvalidSpec("npb part must be s=k");
            spec.npb.part_size[kv.substr(0, eq)] = std::stoi(kv.substr(eq + 1));
        }
    } else {
        throw InvalidSpec("unknown family: " + head);
    }
    return spec;
}

std::string FamilySpec::name() const {
    std::string s;
    switch (kind) {
        case Kind::Path: s = "P"; break;
        case Kind::Cycle: s = "C"; break;
        case Kind::Complete: s = "K"; break;
        case Kind::CompleteBipartite: s = "K_ab"; break;
        case Kind::CompleteMultipartite: s = "K_parts"; break;
        case Kind::Hypercube: s = "Q"; break;
        case Kind::NPB: return "NPB";
        case Kind::CircularWall: s = "CW"; break;
        case Kind::DisjointUnion: s = "union"; break;
        case Kind::BoxProduct: s = "box"; break;
        case Kind::Join: s = "join"; break;
    }
    for (size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
    return s;
}

Graph generate_family(const FamilySpec& spec) {
    using K = FamilySpec::Kind;
    auto need = [&](size_t k) {
        if (spec.params.size() != k) throw InvalidSpec("wrong parameter count");
    };
    switch (spec.kind) {
        case K::Path: need(1); return path_graph(spec.params[0]);
        case K::Cycle: need(1); return cycle_graph(spec.params[0]);
        case K::Complete: need(1); return complete_graph(spec.params[0]);
        case K::CompleteBipartite: need(2); return complete_bipartite(spec.params[0], spec.params[1]);
        case K::CompleteMultipartite: return complete_multipartite(spec.params);
        case K::Hypercube: need(1); return hypercube(spec.params[0]);
        case K::CircularWall: need(2); return circular_wall(spec.params[0], spec.params[1]);
        case K::NPB: return npb_graph(spec.npb);
        case K::DisjointUnion: {
            Graph g = generate_family(spec.children.at(0));
            for (size_t i = 1; i < spec.children.size(); ++i)
                g = disjoint_union(g, generate_family(spec.children[i]));
            return g;
        }
        case K::BoxProduct: {
            Graph g = generate_family(spec.children.at(0));
            for (size_t i = 1; i < spec.children.size(); ++i)
                g = cartesian_product(g, generate_family(spec.children[i]));
            return g;
        }
        case K::Join: {
            Graph g = generate_family(spec.children.at(0));
            for (size_t i = 1; i < spec.children.size(); ++i)
                g = join_graphs(g, generate_family(spec.children[i]));
            return g;
        }
    }
    throw InvalidSpec("unreachable");
}

}  // namespace pmd
