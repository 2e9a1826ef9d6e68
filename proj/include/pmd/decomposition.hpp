#ifndef PMD_DECOMPOSITION_HPP
#define PMD_DECOMPOSITION_HPP

#include <optional>

#include "pmd/positivity.hpp"

namespace pmd {

/// Ordered partition of a host graph's edges; part i must be a positive
/// matching of the residual graph after removing parts 1..i-1.
struct Decomposition {
    std::vector<std::vector<Edge>> parts;
    std::vector<WeightCertificate> certificates;  // optional, aligned with parts

    int part_count() const { return static_cast<int>(parts.size()); }
};

struct PartReport {
    bool ok = false;
    bool positive = false;
    std::string error;  // non-matching / not positive / empty part
    PendantOrder order;
    AlternatingWalkWitness walk;
};

struct VerifyReport {
    bool pass = false;
    bool partition_ok = false;
    std::string partition_error;
    std::vector<PartReport> parts;
    int first_failed_part = -1;  // 0-based, -1 when none

    std::string summary() const;
};

VerifyReport verify_pmd(const Graph& g, const Decomposition& d);

/// Attach per-part weight certificates (in each part's residual graph).
void attach_certificates(const Graph& g, Decomposition& d);

}  // namespace pmd

#endif
