#ifndef PMD_SOLVER_HPP
#define PMD_SOLVER_HPP

#include <chrono>
#include <cstdint>
#include <optional>

#include "pmd/decomposition.hpp"

namespace pmd {

struct Budget {
    std::chrono::milliseconds wall{60000};
    uint64_t max_nodes = UINT64_C(1) << 62;

    static Budget unlimited() {
        return Budget{std::chrono::milliseconds::max(), UINT64_C(1) << 62};
    }
    static Budget of_seconds(long s) { return Budget{std::chrono::seconds(s), UINT64_C(1) << 62}; }
};

struct SolveOutcome {
    enum class Kind { Found, ProvedImpossible, OutOfBudget } kind = Kind::OutOfBudget;
    Decomposition decomposition;  // set when Found
    int target_p = 0;
    int best_lower = 0;   // bounds known when budget runs out
    int best_upper = -1;  // -1 when no decomposition known
    uint64_t nodes = 0;

    bool found() const { return kind == Kind::Found; }
    bool impossible() const { return kind == Kind::ProvedImpossible; }
};

/// Max over components of Delta, raised to r+1 on r-regular components (r >= 2).
int pmd_lower_bound(const Graph& g);

/// Decide whether g admits a pmd with at most p parts. Depth-first over
/// positive matchings of the residual as candidate parts, pruned by
/// pmd_lower_bound of the residual, with memoized impossible residuals.
/// Symmetry reduction (root level only) folds first-part candidates to
/// automorphism-orbit representatives. `jobs` > 1 splits root candidates
/// across OpenMP threads; verdicts match the serial search.
SolveOutcome pmd_decide(const Graph& g, int p, const Budget& budget = Budget(),
                        bool symmetry = false, int jobs = 1);

/// Minimum p with a verified decomposition, iterating pmd_decide upward
/// from pmd_lower_bound.
std::pair<int, Decomposition> pmd_exact(const Graph& g, const Budget& budget = Budget(),
                                        bool symmetry = false, int jobs = 1);

/// Serial reference: exhaustive ordered search with no pruning, no memo,
/// no symmetry. Kept as the oracle the optimized solver is tested against.
int pmd_exact_naive(const Graph& g);

/// Flagged heuristic: branch only over inclusion-maximal positive matchings.
/// Upper bound only; not proven exact.
std::pair<int, Decomposition> pmd_upper_bound_maximal(const Graph& g, const Budget& budget);

}  // namespace pmd

#endif
