#include "pmd/io.hpp"

#include <sstream>

namespace pmd {

Json graph_to_json(const Graph& g) {
    Json j;
    j["n"] = g.vertex_count();
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back(Json::array({e.u, e.v}));
    j["edges"] = std::move(edges);
    if (g.has_labels()) {
        Json labels = Json::array();
        for (int v = 0; v < g.vertex_count(); ++v) labels.push_back(g.label(v));
        j["labels"] = std::move(labels);
    }
    return j;
}

Graph graph_from_json(const Json& j) {
    int n = j.at("n").get<int>();
    std::vector<Edge> es;
    for (const auto& e : j.at("edges"))
        es.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    Graph g(n, std::move(es));
    if (j.contains("labels")) {
        std::vector<std::string> labels;
        for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
        g.set_labels(std::move(labels));
    }
    return g;
}

Json multigraph_to_json(const MultiGraph& mg) {
    Json j;
    j["n"] = mg.vertex_count();
    Json edges = Json::array(), mult = Json::array();
    for (const auto& [e, m] : mg.multiplicities()) {
        edges.push_back(Json::array({e.u, e.v}));
        mult.push_back(m);
    }
    j["edges"] = std::move(edges);
    j["mult"] = std::move(mult);
    return j;
}

MultiGraph multigraph_from_json(const Json& j) {
    int n = j.at("n").get<int>();
    std::map<Edge, int> mult;
    const auto& edges = j.at("edges");
    if (j.contains("mult")) {
        const auto& m = j.at("mult");
        for (size_t i = 0; i < edges.size(); ++i)
            mult[Edge(edges[i].at(0).get<int>(), edges[i].at(1).get<int>())] =
                m.at(i).get<int>();
    } else {
        for (const auto& e : edges) mult[Edge(e.at(0).get<int>(), e.at(1).get<int>())] = 1;
    }
    return MultiGraph(n, std::move(mult));
}

Json decomposition_to_json(const Graph& g, const Decomposition& d) {
    Json j;
    j["graph"] = graph_to_json(g);
    Json parts = Json::array();
    for (const auto& p : d.parts) {
        Json part = Json::array();
        for (const Edge& e : p) part.push_back(Json::array({e.u, e.v}));
        parts.push_back(std::move(part));
    }
    j["parts"] = std::move(parts);
    if (!d.certificates.empty()) {
        Json certs = Json::array();
        for (const auto& c : d.certificates) certs.push_back(certificate_to_json(c));
        j["certificates"] = std::move(certs);
    }
    return j;
}

std::pair<Graph, Decomposition> decomposition_from_json(const Json& j) {
    Graph g = graph_from_json(j.at("graph"));
    Decomposition d;
    for (const auto& part : j.at("parts")) {
        std::vector<Edge> p;
        for (const auto& e : part) p.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        d.parts.push_back(std::move(p));
    }
    if (j.contains("certificates"))
        for (const auto& c : j.at("certificates"))
            d.certificates.push_back(certificate_from_json(c, g.vertex_count()));
    return {std::move(g), std::move(d)};
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    long long num = std::stoll(s.substr(0, slash));
    long long den = slash == std::string::npos ? 1 : std::stoll(s.substr(slash + 1));
    return Rational(num, den);
}

Json certificate_to_json(const WeightCertificate& w) {
    Json weights = Json::object();
    for (size_t v = 0; v < w.weight.size(); ++v)
        weights[std::to_string(v)] = rational_to_string(w.weight[v]);
    return Json{{"weights", std::move(weights)}};
}

WeightCertificate certificate_from_json(const Json& j, int vertex_count) {
    WeightCertificate w;
    w.weight.assign(vertex_count, Rational(0));
    for (const auto& [key, val] : j.at("weights").items())
        w.weight.at(std::stoi(key)) = rational_from_string(val.get<std::string>());
    return w;
}

Json latin_to_json(const GeneralizedLatinRectangle& L) {
    Json rows = Json::array();
    for (const auto& r : L.rows) rows.push_back(r);
    return Json{{"rows", std::move(rows)}, {"symbols", L.symbols}};
}

GeneralizedLatinRectangle latin_from_json(const Json& j) {
    GeneralizedLatinRectangle L;
    for (const auto& r : j.at("rows")) L.rows.push_back(r.get<std::vector<int>>());
    L.symbols = j.at("symbols").get<int>();
    return L;
}

Json cover_to_json(const CoverSolution& c) {
    Json subs = Json::array();
    for (const auto& s : c.subfamilies) subs.push_back(s);
    return Json{{"subfamilies", std::move(subs)}};
}

CoverSolution cover_from_json(const Json& j) {
    CoverSolution c;
    for (const auto& s : j.at("subfamilies"))
        c.subfamilies.push_back(s.get<std::vector<int>>());
    return c;
}

std::string edge_list_text(const Graph& g) {
    std::ostringstream os;
    for (const Edge& e : g.edges()) os << e.u << " " << e.v << "\n";
    return os.str();
}

Graph graph_from_edge_list_text(const std::string& text) {
    std::istringstream is(text);
    std::vector<Edge> es;
    int u, v, n = 0;
    while (is >> u >> v) {
        es.emplace_back(u, v);
        n = std::max({n, u + 1, v + 1});
    }
    return Graph(n, std::move(es));
}

std::string to_dot(const Graph& g, const Decomposition* d) {
    static const char* palette[] = {"black",   "red",    "blue",   "forestgreen",
                                    "orange",  "purple", "brown",  "deeppink",
                                    "cadetblue", "goldenrod"};
    std::map<Edge, int> part_of;
    if (d)
        for (size_t i = 0; i < d->parts.size(); ++i)
            for (const Edge& e : d->parts[i]) part_of[e] = static_cast<int>(i);
    std::ostringstream os;
    os << "graph G {\n  node [shape=circle, fontsize=10];\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        os << "  v" << v << " [label=\"" << g.display_label(v) << "\"];\n";
    for (const Edge& e : g.edges()) {
        os << "  v" << e.u << " -- v" << e.v;
        auto it = part_of.find(e);
        if (it != part_of.end())
            os << " [color=" << palette[it->second % 10] << ", label=\""
               << it->second + 1 << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace pmd
