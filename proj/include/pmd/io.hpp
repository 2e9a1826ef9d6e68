#ifndef PMD_IO_HPP
#define PMD_IO_HPP

#include <json.hpp>

#include "pmd/covers.hpp"
#include "pmd/decomposition.hpp"
#include "pmd/families.hpp"
#include "pmd/latin.hpp"

namespace pmd {

using Json = nlohmann::json;

// Graph JSON: {"n": int, "labels": [str]?, "edges": [[u,v],...]} (0-based).
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

// Multigraph adds "mult": [int,...] aligned with edges.
Json multigraph_to_json(const MultiGraph& mg);
MultiGraph multigraph_from_json(const Json& j);

// Decomposition JSON: {"graph": ..., "parts": [[[u,v],...],...], "certificates": [...]?}.
Json decomposition_to_json(const Graph& g, const Decomposition& d);
std::pair<Graph, Decomposition> decomposition_from_json(const Json& j);

// Certificate JSON: {"weights": {"v": "p/q", ...}} with exact rationals.
Json certificate_to_json(const WeightCertificate& w);
WeightCertificate certificate_from_json(const Json& j, int vertex_count);

// Latin rectangle JSON: {"rows": [[int,...],...], "symbols": k}.
Json latin_to_json(const GeneralizedLatinRectangle& L);
GeneralizedLatinRectangle latin_from_json(const Json& j);

// CoverSolution JSON: {"subfamilies": [[matching-index,...],...]}.
Json cover_to_json(const CoverSolution& c);
CoverSolution cover_from_json(const Json& j);

// Plain-text edge list, one "u v" pair per line (0-based).
std::string edge_list_text(const Graph& g);
Graph graph_from_edge_list_text(const std::string& text);

// DOT rendering; an optional decomposition colors parts.
std::string to_dot(const Graph& g, const Decomposition* d = nullptr);

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

}  // namespace pmd

#endif
