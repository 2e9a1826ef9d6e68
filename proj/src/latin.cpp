#include "pmd/latin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pmd {

void MultisetPartition::validate() const {
    if (m < 1 || n < 1) throw InvalidPartition("m,n must be >= 1");
    if (m > n) throw InvalidPartition("requires m <= n");
    std::vector<int> count(m + 1, 0);
    for (const auto& part : parts) {
        if (part.empty()) throw InvalidPartition("empty part");
        std::set<int> seen;
        for (int r : part) {
            if (r < 1 || r > m) throw InvalidPartition("row out of range");
            if (!seen.insert(r).second) throw InvalidPartition("row repeated inside a part");
            ++count[r];
        }
    }
    for (int r = 1; r <= m; ++r)
        if (count[r] != n)
            throw InvalidPartition("row " + std::to_string(r) + " covered " +
                                   std::to_string(count[r]) + " times, expected " +
                                   std::to_string(n));
}

bool verify_latin_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) return true;
    size_t n = rows[0].size();
    for (const auto& r : rows) {
        if (r.size() != n) return false;
        std::set<int> seen;
        for (int x : r) {
            if (x != 0 && !seen.insert(x).second) return false;
        }
    }
    for (size_t c = 0; c < n; ++c) {
        std::set<int> seen;
        for (const auto& r : rows)
            if (r[c] != 0 && !seen.insert(r[c]).second) return false;
    }
    return true;
}

bool verify_glr(const GeneralizedLatinRectangle& L, const MultisetPartition* part) {
    for (const auto& r : L.rows)
        for (int x : r)
            if (x < 1 || x > L.symbols) return false;
    if (!verify_latin_rows(L.rows)) return false;
    if (part) {
        if (L.symbols != part->k() || L.row_count() != part->m || L.col_count() != part->n)
            return false;
        std::vector<std::set<int>> rows_of(L.symbols + 1);
        for (int i = 0; i < L.row_count(); ++i)
            for (int x : L.rows[i]) rows_of[x].insert(i + 1);
        for (int s = 1; s <= L.symbols; ++s) {
            std::set<int> expect(part->parts[s - 1].begin(), part->parts[s - 1].end());
            if (rows_of[s] != expect) return false;
        }
    }
    return true;
}

namespace {

// Augmenting-path bipartite matching: columns matched to symbols.
struct ColumnMatcher {
    int cols, syms;
    std::vector<std::vector<int>> ok;  // per column: admissible symbols
    std::vector<int> col_of_sym;       // symbol -> column or -1

    bool augment(int c, std::vector<char>& vis) {
        for (int s : ok[c]) {
            if (vis[s]) continue;
            vis[s] = 1;
            if (col_of_sym[s] < 0 || augment(col_of_sym[s], vis)) {
                col_of_sym[s] = c;
                return true;
            }
        }
        return false;
    }

    // returns matched symbol per column, or nullopt
    std::optional<std::vector<int>> solve() {
        col_of_sym.assign(syms + 1, -1);
        for (int c = 0; c < cols; ++c) {
            std::vector<char> vis(syms + 1, 0);
            if (!augment(c, vis)) return std::nullopt;
        }
        std::vector<int> sym_of_col(cols, 0);
        for (int s = 1; s <= syms; ++s)
            if (col_of_sym[s] >= 0) sym_of_col[col_of_sym[s]] = s;
        return sym_of_col;
    }
};

// Backtracking completion: fill rows top to bottom, each row by a perfect
// matching between its empty columns and its missing symbols, trying matchings
// in lexicographic order (lowest feasible symbol first).
struct Completer {
    int m, n;
    std::vector<std::vector<int>> grid;  // 0 = empty
    std::vector<std::vector<char>> col_used;  // col x symbol

    bool feasible_hall(int row_from) const {
        // per symbol: remaining demand vs available (row, col) slots
        for (int s = 1; s <= n; ++s) {
            int demand = 0;
            std::set<int> cols_avail;
            for (int i = row_from; i < m; ++i) {
                bool in_row = false;
                for (int j = 0; j < n; ++j)
                    if (grid[i][j] == s) in_row = true;
                if (in_row) continue;
                ++demand;
                for (int j = 0; j < n; ++j)
                    if (grid[i][j] == 0 && !col_used[j][s]) cols_avail.insert(j);
            }
            if (demand > static_cast<int>(cols_avail.size())) return false;
        }
        return true;
    }

    bool fill_row(int i, int j) {
        while (i < m && j < n && grid[i][j] != 0) ++j;
        if (i == m) return true;
        if (j == n) {
            if (!feasible_hall(i + 1)) return false;
            return fill_row(i + 1, 0);
        }
        std::vector<char> in_row(n + 1, 0);
        for (int c = 0; c < n; ++c)
            if (grid[i][c]) in_row[grid[i][c]] = 1;
        for (int s = 1; s <= n; ++s) {
            if (in_row[s] || col_used[j][s]) continue;
            grid[i][j] = s;
            col_used[j][s] = 1;
            if (fill_row(i, j + 1)) return true;
            grid[i][j] = 0;
            col_used[j][s] = 0;
        }
        return false;
    }
};

}  // namespace

std::vector<std::vector<int>> complete_partial_latin_rectangle(const PartialLatinRectangle& p) {
    int m = p.row_count(), n = p.col_count();
    if (n == 0) return {};
    if (p.symbol_range != n) throw InvalidPartition("symbol range must equal column count");
    if (!verify_latin_rows(p.cells)) throw InvalidPartition("partial rectangle already invalid");
    for (const auto& row : p.cells)
        for (int x : row)
            if (x < 0 || x > n) throw InvalidPartition("symbol out of range");
    Completer c{m, n, p.cells, {}};
    c.col_used.assign(n, std::vector<char>(n + 1, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (p.cells[i][j]) c.col_used[j][p.cells[i][j]] = 1;
    if (!c.feasible_hall(0) || !c.fill_row(0, 0)) {
        Infeasible ex("partial Latin rectangle admits no completion");
        // report the tightest symbol shortage found
        for (int s = 1; s <= n; ++s) {
            int demand = 0, avail = 0;
            for (int i = 0; i < m; ++i) {
                bool in_row = false;
                for (int j = 0; j < n; ++j)
                    if (p.cells[i][j] == s) in_row = true;
                if (!in_row) ++demand;
            }
            for (int j = 0; j < n; ++j)
                if (!c.col_used[j][s]) ++avail;
            if (demand > avail) ex.violating_symbols.push_back(s);
        }
        throw ex;
    }
    return c.grid;
}

std::vector<std::vector<int>> extend_latin_rectangle(const std::vector<std::vector<int>>& L) {
    int m = static_cast<int>(L.size());
    if (m == 0) throw std::invalid_argument("empty rectangle");
    int n = static_cast<int>(L[0].size());
    if (m >= n) throw AlreadySquare("rectangle already has as many rows as columns");
    if (!verify_latin_rows(L)) throw std::invalid_argument("input is not a Latin rectangle");
    for (const auto& row : L)
        for (int x : row)
            if (x < 1 || x > n) throw std::invalid_argument("entries must lie in 1..n");
    ColumnMatcher cm{n, n, {}, {}};
    cm.ok.assign(n, {});
    for (int j = 0; j < n; ++j) {
        std::vector<char> used(n + 1, 0);
        for (int i = 0; i < m; ++i) used[L[i][j]] = 1;
        for (int s = 1; s <= n; ++s)
            if (!used[s]) cm.ok[j].push_back(s);
    }
    auto sdr = cm.solve();
    if (!sdr) throw std::logic_error("SDR must exist for a Latin rectangle with m < n");
    auto out = L;
    out.push_back(*sdr);
    return out;
}

GeneralizedLatinRectangle build_glr(const MultisetPartition& part) {
    part.validate();
    const int m = part.m, n = part.n, k = part.k();
    GeneralizedLatinRectangle out;
    out.symbols = k;

    if (m == 1) {
        // row 1 belongs to exactly n parts; place them left to right
        std::vector<int> row;
        for (int s = 1; s <= k; ++s)
            if (!part.parts[s - 1].empty()) row.push_back(s);
        if (static_cast<int>(row.size()) != n)
            throw InvalidPartition("base case expects n parts containing row 1");
        out.rows.push_back(row);
        return out;
    }

    // Symbols whose parts contain row m (exactly n of them). Order them first.
    std::vector<int> with_m, without_m;
    for (int s = 1; s <= k; ++s) {
        const auto& xs = part.parts[s - 1];
        if (std::find(xs.begin(), xs.end(), m) != xs.end()) with_m.push_back(s);
        else without_m.push_back(s);
    }
    if (static_cast<int>(with_m.size()) != n)
        throw InvalidPartition("row m must lie in exactly n parts");

    // Recurse on n*[m-1]; sub-symbol order: with_m (minus empties) then without_m.
    MultisetPartition sub;
    sub.m = m - 1;
    sub.n = n;
    std::vector<int> sub_label;  // sub symbol (1-based) -> original symbol
    for (int s : with_m) {
        std::vector<int> xs;
        for (int r : part.parts[s - 1])
            if (r != m) xs.push_back(r);
        if (!xs.empty()) {
            sub.parts.push_back(xs);
            sub_label.push_back(s);
        }
    }
    int kp = static_cast<int>(sub.parts.size());  // k' survivors among symbols 1..n
    for (int s : without_m) {
        sub.parts.push_back(part.parts[s - 1]);
        sub_label.push_back(s);
    }
    GeneralizedLatinRectangle L = build_glr(sub);

    // Erase entries whose sub-symbol exceeds k' remapped... here: keep only the
    // "small" symbols (sub symbols 1..k', i.e. parts containing m), erase the rest.
    PartialLatinRectangle lp;
    lp.symbol_range = n;
    lp.cells.assign(m - 1, std::vector<int>(n, 0));
    for (int i = 0; i < m - 1; ++i)
        for (int j = 0; j < n; ++j) {
            int sub_sym = L.rows[i][j];
            if (sub_sym >= 1 && sub_sym <= kp) lp.cells[i][j] = sub_sym;
        }
    auto completed = complete_partial_latin_rectangle(lp);   // (m-1) x n over 1..n
    auto extended = extend_latin_rectangle(completed);       // m x n over 1..n

    // Splice: keep原 big symbols, map small symbols of the new row back.
    // small symbol t in 1..n corresponds to: t <= k' -> sub part t; t > k' ->
    // one of the vanished singleton parts {m}.
    std::vector<int> singleton_parts;
    for (int s : with_m) {
        bool vanished = true;
        for (int r : part.parts[s - 1])
            if (r != m) vanished = false;
        if (vanished) singleton_parts.push_back(s);
    }
    std::vector<int> small_to_orig(n + 1, 0);
    for (int t = 1; t <= kp; ++t) small_to_orig[t] = sub_label[t - 1];
    for (int t = kp + 1; t <= n; ++t) small_to_orig[t] = singleton_parts[t - kp - 1];

    out.rows.assign(m, std::vector<int>(n, 0));
    for (int i = 0; i < m - 1; ++i)
        for (int j = 0; j < n; ++j) {
            int sub_sym = L.rows[i][j];
            out.rows[i][j] = sub_label[sub_sym - 1];
        }
    for (int j = 0; j < n; ++j) out.rows[m - 1][j] = small_to_orig[extended[m - 1][j]];

    if (!verify_glr(out, &part))
        throw std::logic_error("generalized Latin rectangle construction failed");
    return out;
}

}  // namespace pmd
