#ifndef PMD_LATIN_HPP
#define PMD_LATIN_HPP

#include <optional>
#include <vector>

#include "pmd/graph.hpp"

namespace pmd {

struct InvalidPartition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
    std::vector<int> violating_symbols;
    std::vector<int> violating_columns;
};
struct AlreadySquare : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// m x n array over symbols 1..k, no symbol twice in a row or column.
struct GeneralizedLatinRectangle {
    std::vector<std::vector<int>> rows;
    int symbols = 0;  // symbol range 1..symbols
    int row_count() const { return static_cast<int>(rows.size()); }
    int col_count() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

/// m x n cells, 0 = empty, otherwise a symbol from 1..n.
struct PartialLatinRectangle {
    std::vector<std::vector<int>> cells;
    int symbol_range = 0;  // n
    int row_count() const { return static_cast<int>(cells.size()); }
    int col_count() const { return cells.empty() ? 0 : static_cast<int>(cells[0].size()); }
};

/// Partition of the multiset n*[m] into subsets X_1..X_k (rows are 1-based).
struct MultisetPartition {
    int m = 0, n = 0;
    std::vector<std::vector<int>> parts;  // each a sorted subset of 1..m
    int k() const { return static_cast<int>(parts.size()); }
    void validate() const;  // each row in exactly n parts; m <= n
};

/// Generalized m x n Latin rectangle whose symbol i appears exactly in the
/// rows of parts[i-1], built by the inductive strip/complete/extend/splice
/// construction.
GeneralizedLatinRectangle build_glr(const MultisetPartition& part);

/// Completion over symbols 1..n agreeing with all filled cells. Backtracks
/// column by column with per-column perfect matchings; reports a Hall
/// violation when infeasible.
std::vector<std::vector<int>> complete_partial_latin_rectangle(const PartialLatinRectangle& p);

/// Adds one row to an m x n Latin rectangle (m < n) via a system of distinct
/// representatives found by bipartite matching.
std::vector<std::vector<int>> extend_latin_rectangle(const std::vector<std::vector<int>>& L);

bool verify_glr(const GeneralizedLatinRectangle& L,
                const MultisetPartition* part = nullptr);
bool verify_latin_rows(const std::vector<std::vector<int>>& rows);  // plain row/col check

}  // namespace pmd

#endif
