// ffield.hpp
// Exact arithmetic in GF(p^d) with a polynomial basis, a fixed primitive
// element, residue subgroups of the multiplicative group, and the
// Frobenius map x -> x^(p^j).
//
// Elements are plain int64_t indices in [0, q): the coefficient vector
// (c_0, ..., c_{d-1}) of an element, low degree first, read as a base-p
// integer. Index 0 is the additive identity, index 1 the multiplicative
// identity.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace gpl {

// Element of a finite field, encoded as the base-p index of its
// coefficient vector. Only meaningful together with its FiniteField.
using Fe = std::int64_t;

class FiniteField {
public:
    // Deterministic construction of GF(p^d): the modulus is the monic
    // irreducible polynomial of degree d whose coefficient vector
    // (c_0,...,c_{d-1}) has the smallest base-p index, and the generator
    // is the lowest-index element of multiplicative order q-1.
    // Throws std::invalid_argument for non-prime p, d < 1, or p^d > 2^31.
    static std::shared_ptr<const FiniteField> make(std::int64_t p, int d);

    std::int64_t p() const { return p_; }
    int d() const { return d_; }
    std::int64_t q() const { return q_; }
    // Coefficients c_0..c_d, low degree first; c_d = 1.
    const std::vector<std::int64_t>& modulus() const { return modulus_; }
    Fe generator() const { return generator_; }

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const;
    Fe inv(Fe a) const;          // throws on a == 0
    // Square-and-multiply (table-backed below the table threshold).
    // pow(0, 0) is rejected; pow(a, q-1) == 1 for a != 0.
    Fe pow(Fe a, std::uint64_t e) const;
    // a^(p^j), 0 <= j < d.
    Fe frobenius(Fe a, int j) const;

    // M = { x in F_q^x : x^((q-1)/k) = 1 }, the subgroup of index k.
    // Sorted by element index. Throws unless k divides q-1.
    std::vector<Fe> residue_subgroup(std::int64_t k) const;

    // Indicator over all q indices: 1 iff the element lies in the index-k
    // residue subgroup (0 is never a member).
    std::vector<std::uint8_t> residue_indicator(std::int64_t k) const;

    // Discrete log to base generator(); defined for a != 0.
    // Only available when tables are present (q <= table threshold).
    bool has_tables() const { return !log_.empty(); }

    bool valid_element(Fe a) const { return a >= 0 && a < q_; }

    static constexpr std::int64_t kMaxQ = std::int64_t{1} << 31;
    static constexpr std::int64_t kTableThreshold = std::int64_t{1} << 20;

private:
    FiniteField() = default;

    std::vector<std::int64_t> to_poly(Fe a) const;
    Fe from_poly(const std::vector<std::int64_t>& c) const;
    Fe mul_poly(Fe a, Fe b) const;   // polynomial multiply mod (p, modulus)
    Fe pow_generic(Fe a, std::uint64_t e) const;
    void build_tables();
    void check_element(Fe a) const;

    std::int64_t p_ = 0;
    int d_ = 0;
    std::int64_t q_ = 0;
    std::vector<std::int64_t> modulus_;  // size d+1
    Fe generator_ = 0;
    std::vector<std::int32_t> log_;      // size q, log_[0] = -1
    std::vector<std::int32_t> antilog_;  // size q-1, antilog_[i] = g^i
};

using FieldPtr = std::shared_ptr<const FiniteField>;

// Convenience: factor n by trial division, returns (prime, multiplicity)
// pairs in ascending order. Used for orders of multiplicative groups.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

bool is_prime(std::int64_t n);

}  // namespace gpl
