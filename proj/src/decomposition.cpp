#include "pmd/decomposition.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pmd {

std::string VerifyReport::summary() const {
    std::ostringstream os;
    if (pass) {
        os << "pass (" << parts.size() << " parts)";
        return os.str();
    }
    if (!partition_ok) {
        os << "partition invalid: " << partition_error;
        return os.str();
    }
    os << "part " << first_failed_part + 1 << " failed: " << parts[first_failed_part].error;
    return os.str();
}

VerifyReport verify_pmd(const Graph& g, const Decomposition& d) {
    VerifyReport rep;
    // partition check
    std::set<Edge> seen;
    size_t total = 0;
    rep.partition_ok = true;
    for (size_t i = 0; i < d.parts.size() && rep.partition_ok; ++i) {
        if (d.parts[i].empty()) {
            rep.partition_ok = false;
            rep.partition_error = "part " + std::to_string(i + 1) + " is empty";
            break;
        }
        for (const Edge& e : d.parts[i]) {
            if (g.edge_index(e) < 0) {
                rep.partition_ok = false;
                rep.partition_error = "edge not in graph";
                break;
            }
            if (!seen.insert(e).second) {
                rep.partition_ok = false;
                rep.partition_error = "edge repeated across parts";
                break;
            }
            ++total;
        }
    }
    if (rep.partition_ok && total != static_cast<size_t>(g.edge_count())) {
        rep.partition_ok = false;
        rep.partition_error = "parts do not cover all edges";
    }
    if (!rep.partition_ok) return rep;

    std::vector<Edge> removed;
    bool all_ok = true;
    for (size_t i = 0; i < d.parts.size(); ++i) {
        Graph residual = g.without_edges(removed);
        PartReport pr;
        try {
            PositivityResult res = check_positive(residual, d.parts[i]);
            pr.positive = res.positive;
            pr.ok = res.positive;
            if (res.positive) {
                pr.order = res.order;
            } else {
                pr.walk = res.walk;
                pr.error = "alternating closed walk in residual";
            }
        } catch (const NotAMatching& ex) {
            pr.ok = false;
            pr.error = std::string("not a matching: ") + ex.what();
        }
        if (pr.ok && i < d.certificates.size() && !d.certificates[i].weight.empty()) {
            if (!verify_certificate(residual, d.parts[i], d.certificates[i])) {
                pr.ok = false;
                pr.error = "supplied weight certificate fails";
            }
        }
        if (!pr.ok && all_ok) {
            rep.first_failed_part = static_cast<int>(i);
            all_ok = false;
        }
        rep.parts.push_back(std::move(pr));
        for (const Edge& e : d.parts[i]) removed.push_back(e);
    }
    rep.pass = all_ok;
    return rep;
}

void attach_certificates(const Graph& g, Decomposition& d) {
    d.certificates.clear();
    std::vector<Edge> removed;
    for (const auto& part : d.parts) {
        Graph residual = g.without_edges(removed);
        d.certificates.push_back(weight_certificate(residual, part));
        for (const Edge& e : part) removed.push_back(e);
    }
}

}  // namespace pmd
