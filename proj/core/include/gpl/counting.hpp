// counting.hpp
// Exact counting of solutions x in F_q to systems of power-residue
// equations (a_i + x)^((q-1)/k) = 1 and inequations != 1, and verification
// of the associated square-root error bounds.

#pragma once

#include <cstdint>
#include <vector>

#include "gpl/ffield.hpp"
#include "gpl/report.hpp"

namespace gpl {

struct PowerSystem {
    FieldPtr field;
    std::int64_t k = 0;                 // divisor of q-1
    std::vector<Fe> equalities;         // distinct alphas, disjoint from
    std::vector<Fe> inequalities;       // these alphas

    void validate() const;              // throws on malformed systems
};

// Exact number of x in F_q with (a+x)^((q-1)/k) = 1 for every equality
// alpha and != 1 for every inequality alpha, by full enumeration.
std::int64_t count_solutions(const PowerSystem& sys);

// Checks q/k^t - t*sqrt(q) <= N <= q/k^t + t*sqrt(q) for the
// equalities-only system on t >= 2 distinct alphas.
VerificationReport verify_theorem_bound(const FieldPtr& field, std::int64_t k,
                                        const std::vector<Fe>& alphas);

// Checks |N - q (1/k)^t (1-1/k)^(n-t)| <= n 2^((n-t)^2) sqrt(q) for a
// mixed system with t = #equalities in {2..n}, n = total alphas >= 2.
VerificationReport verify_mixed_bound(const PowerSystem& sys);

// Exact identity: the equalities-only count over T equals the sum of the
// mixed counts N(T u U) over all subsets U of the complement of T.
// T is given as indices into alphas; |T| >= 1.
VerificationReport inclusion_exclusion_check(const FieldPtr& field, std::int64_t k,
                                             const std::vector<Fe>& alphas,
                                             const std::vector<int>& T);

}  // namespace gpl
