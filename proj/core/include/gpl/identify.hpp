// identify.hpp
// Vertex distinguishing in generalized Paley graphs with the explicit
// threshold regimes, base-number witnesses for the WL-dimension bound,
// Delta-extension discreteness, and the lower-bound experiment with
// unions of cyclotomic classes.

#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "gpl/cohconf.hpp"
#include "gpl/graph.hpp"
#include "gpl/report.hpp"

namespace gpl {

struct SampleStats {
    std::int64_t trials = 0;
    std::int64_t successes = 0;
};

struct DistinguishReport {
    std::int64_t q = 0;
    std::int64_t k = 0;
    enum class Statement { pairwise, half_delta } statement = Statement::pairwise;
    bool pass = false;
    bool threshold_met = false;  // inside the guaranteed regime
    // pairwise: [beta, gamma] pairs with no distinguisher in Delta;
    // half_delta: flattened pair sets whose union missed |Delta|/2.
    std::vector<std::vector<int>> violations;
    SampleStats sample_stats;    // sampled mode only
    bool exhaustive = true;

    nlohmann::ordered_json to_json() const;
};

// Neighbors of the zero-labeled vertex (the connection set under the
// labeling).
std::vector<int> delta_of_zero(const Graph& g);

// alpha adjacent to exactly one of beta, gamma. Throws if beta == gamma.
bool distinguishes(const Graph& g, int alpha, int beta, int gamma);

// Statement (1): every pair of distinct nonzero vertices outside Delta is
// distinguished by some vertex of Delta. threshold_met records
// sqrt(q) > 5k^3/(k-1). Parallelizes over the first pair element.
DistinguishReport check_pairwise_distinguishing(const Graph& g, int threads = 1);

// Statement (2): for sets S of k pairwise disjoint 2-subsets of Delta,
// more than half of Delta distinguishes some pair of S. Exhaustive when
// the number of such sets is at most max_exhaustive, else seeded uniform
// sampling. threshold_met records sqrt(q) > 10(2k^2+k) 2^(k^2+2k).
struct HalfDeltaMode {
    bool exhaustive = false;
    std::int64_t trials = 1000;
    std::uint64_t seed = 0;
    std::int64_t max_exhaustive = 200000;
};
DistinguishReport check_half_delta(const Graph& g, const HalfDeltaMode& mode = {});

// First (0, alpha, beta), alpha < beta in Delta, whose 3-point extension
// of WL(g) is discrete; nullopt when the Delta-pairs are exhausted.
std::optional<std::tuple<int, int, int>> base_witness(const Graph& g);

// Extends WL(g) at 0 and then at all of Delta; pass iff discrete.
VerificationReport delta_extension_discrete(const Graph& g);

// Cayley graph over the chosen cyclotomic classes: with H the index-r
// subgroup and g the field generator, class i is g^i H; the connection
// set is the union of the picked classes (which must be symmetric).
Graph amorphic_srg(const FieldPtr& field, std::int64_t r, const std::vector<int>& picks);

// Searches unions of cyclotomic classes for a strongly regular graph with
// the same parameters as VLS(p,e,t), not isomorphic to it, yet 2-WL
// equivalent. pass iff found; a none result below counting scale is
// observational (hard = false).
VerificationReport lower_bound_experiment(std::int64_t p, std::int64_t e, int t,
                                          std::int64_t max_unions = 100000);

// Exact thresholds of the guaranteed regimes.
double pairwise_threshold(std::int64_t k);    // 5k^3/(k-1)
double half_delta_threshold(std::int64_t k);  // 10(2k^2+k) 2^(k^2+2k)

}  // namespace gpl
