// permgrp.hpp
// Permutations, permutation groups with a verified stabilizer chain,
// graph automorphism search by individualization-refinement, semilinear
// affine decomposition over a field labeling, and graph isomorphism.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gpl/ffield.hpp"
#include "gpl/graph.hpp"
#include "gpl/report.hpp"

namespace gpl {

class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> images);
    static Permutation identity(std::uint32_t n);

    std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }
    std::uint32_t operator[](std::uint32_t x) const { return img_[x]; }
    const std::vector<std::uint32_t>& images() const { return img_; }

    // (a.compose(b))(x) = a(b(x)): apply b first.
    Permutation compose(const Permutation& b) const;
    Permutation inverse() const;
    bool is_identity() const;
    std::vector<std::uint32_t> fixed_points() const;
    std::uint32_t num_fixed() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::uint32_t> img_;
};

class PermGroup {
public:
    // Builds a base and strong generating set (randomized warm-up,
    // deterministic Schreier-Sims verification). base_hint prescribes a
    // base prefix, e.g. for point stabilizers.
    PermGroup(std::uint32_t degree, std::vector<Permutation> generators,
              std::vector<std::uint32_t> base_hint = {});

    std::uint32_t degree() const { return degree_; }
    const std::vector<Permutation>& generators() const { return input_gens_; }
    const std::vector<std::uint32_t>& base() const { return base_; }

    unsigned __int128 order128() const { return order_; }
    std::uint64_t order() const;       // throws std::overflow_error past 2^64
    std::string order_string() const;  // decimal, any size

    bool contains(const Permutation& p) const;
    std::vector<std::uint32_t> orbit_of(std::uint32_t v) const;

    // Generators of the stabilizer of v (chain rebuilt with base [v,...]).
    PermGroup point_stabilizer(std::uint32_t v) const;

    // Enumerate every element; stop early if the callback returns false.
    // Returns true iff the enumeration completed.
    bool for_each_element(const std::function<bool(const Permutation&)>& f) const;

private:
    struct Level {
        std::uint32_t beta = 0;
        std::vector<Permutation> gens;         // fix base[0..level-1]
        std::vector<std::int32_t> orbit_pos;   // degree-sized; -1 = outside
        std::vector<std::uint32_t> orbit;      // BFS order, orbit[0] = beta
        std::vector<Permutation> transversal;  // transversal[i](beta) = orbit[i]
        std::vector<Permutation> inv_transversal;
    };

    void build(std::vector<Permutation> gens,
               const std::vector<std::uint32_t>& base_hint);
    void recompute_orbit(Level& lv) const;
    // Sift g through levels [from, ...); returns residue and the level at
    // which sifting stopped (levels_.size() if fully sifted).
    std::pair<Permutation, size_t> strip(Permutation g, size_t from) const;

    std::uint32_t degree_ = 0;
    std::vector<Permutation> input_gens_;
    std::vector<std::uint32_t> base_;
    std::vector<Level> levels_;
    unsigned __int128 order_ = 1;
};

struct AutOptions {
    int max_degree = 512;  // backtracking cap, overridable
};

// Full automorphism group via backtracking over WL-refined ordered
// partitions. Throws std::invalid_argument past the degree cap.
PermGroup graph_automorphisms(const Graph& g, const AutOptions& opt = {});

std::uint64_t group_order(const PermGroup& g);

std::optional<Permutation> iso_test(const Graph& g1, const Graph& g2,
                                    const AutOptions& opt = {});

// The unique (a, b, j) with p(x) = a * x^(p^j) + b on the field labeling,
// or nullopt if p is not semilinear affine.
struct SemilinearMap {
    Fe a = 0;
    Fe b = 0;
    int j = 0;
};
std::optional<SemilinearMap> agammal_decompose(const FieldPtr& field,
                                               const Permutation& p);

// Reconstruct the permutation x -> a x^(p^j) + b.
Permutation semilinear_permutation(const FieldPtr& field, const SemilinearMap& m);

// Decomposes every generator of Aut(g); since the semilinear affine maps
// form a group, all generators decomposing is equivalent to the inclusion
// Aut(g) <= AGammaL(1,q). Records orders and the index.
VerificationReport aut_in_agammal(const Graph& g, const AutOptions& opt = {});

}  // namespace gpl
