// circulant.hpp
// Circulant-specific analysis: Cayley schemes with basic sets, normality,
// mid-range fixed-point witnesses for non-normal circulants, discrete
// 2-point extension witnesses for normal ones, and the catalog of
// circulants of a given order up to connection-set equivalence.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gpl/cohconf.hpp"
#include "gpl/graph.hpp"
#include "gpl/permgrp.hpp"

namespace gpl {

struct CayleyScheme {
    int n = 0;
    CoherentConfiguration cc;
    // Neighborhoods of 0 in each relation; a partition of Z_n with {0}
    // first, then ordered by smallest element.
    std::vector<std::vector<int>> basic_sets;
};

// WL closure of a translation-invariant Z_n-labeled graph; asserts
// homogeneity and extracts the basic sets.
CayleyScheme cayley_scheme(const Graph& g);

// True iff every automorphism fixing 0 is x -> mx with gcd(m,n) = 1,
// decided by the order identity |Aut| = n * #{m : mS = S}.
bool is_normal_circulant(const Graph& g, const AutOptions& opt = {});

// For a non-normal circulant, an automorphism sigma with
// n/2 <= fix(sigma) <= 2n/3. Searches generators, the whole group when
// |Aut| <= 10^6, explicit coset-translation / block constructions, then
// bounded words; nullopt signals a counterexample to the guarantee.
std::optional<Permutation> midrange_fix_witness(const Graph& g,
                                                const AutOptions& opt = {});

// First pair (alpha, beta) in order whose 2-point extension is discrete;
// alpha is pinned to 0 (schemes are homogeneous). nullopt if none.
std::optional<std::pair<int, int>> two_point_discrete_witness(const CayleyScheme& s);

// All symmetric connection sets of Z_n up to S ~ mS (m coprime to n),
// each sorted; includes the empty set (empty graph) and the full set.
std::vector<std::vector<int>> circulant_catalog(int n);

// One record per catalog entry, produced by the normality sweep.
struct CirculantRecord {
    int n = 0;
    std::vector<int> connection;
    bool normal = false;
    std::optional<Permutation> fix_witness;          // non-normal only
    std::optional<std::pair<int, int>> two_point_witness;  // normal only
};

CirculantRecord analyze_circulant(int n, const std::vector<int>& connection,
                                  const AutOptions& opt = {});

}  // namespace gpl
