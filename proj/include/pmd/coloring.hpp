#ifndef PMD_COLORING_HPP
#define PMD_COLORING_HPP

#include "pmd/graph.hpp"

namespace pmd {

struct Coloring {
    std::vector<int> color;  // per vertex, 0-based color indices
    int num_colors = 0;
    std::vector<std::vector<Vertex>> classes() const;
    void validate(const Graph& g) const;  // proper + every class non-empty
};

enum class ColorMode { Exact, Greedy };

/// Greedy mode: DSATUR. Exact mode: branch and bound with a DSATUR upper
/// bound and a greedy clique lower bound; refuses graphs above `exact_cap`.
Coloring proper_coloring(const Graph& g, ColorMode mode, int exact_cap = 20);

/// Proper coloring with exactly `k` non-empty classes (k >= chi, k <= |V|),
/// obtained by splitting classes of a base coloring.
Coloring coloring_with_classes(const Graph& g, int k, ColorMode mode = ColorMode::Exact);

int clique_lower_bound(const Graph& g);

}  // namespace pmd

#endif
