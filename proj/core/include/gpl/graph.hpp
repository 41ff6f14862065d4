// graph.hpp
// Simple undirected graphs with dense bit-matrix adjacency, constructors
// for generalized Paley / Van Lint-Schrijver / circulant graphs, and
// strongly-regular parameter extraction with (negative) Latin square
// classification.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpl/ffield.hpp"

namespace gpl {

// Symmetric n x n bit matrix with zero diagonal, 64-bit row words.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(int n)
        : n_(n), words_(static_cast<size_t>((n + 63) / 64)),
          bits_(words_ * static_cast<size_t>(n), 0) {}

    int n() const { return n_; }
    size_t words_per_row() const { return words_; }

    bool get(int i, int j) const {
        return (row(i)[static_cast<size_t>(j) >> 6] >> (j & 63)) & 1u;
    }
    void set(int i, int j) {
        bits_[static_cast<size_t>(i) * words_ + (static_cast<size_t>(j) >> 6)] |=
            std::uint64_t{1} << (j & 63);
    }
    const std::uint64_t* row(int i) const {
        return bits_.data() + static_cast<size_t>(i) * words_;
    }

private:
    int n_ = 0;
    size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

enum class Labeling { none, field, cyclic };

class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n) {}

    int n() const { return n_; }
    bool adjacent(int i, int j) const { return adj_.get(i, j); }
    void add_edge(int i, int j);
    int degree(int i) const;
    std::int64_t edge_count() const;
    const BitMatrix& adjacency() const { return adj_; }

    Labeling labeling() const { return labeling_; }
    // Field labeling: vertex i is the field element with index i.
    const FieldPtr& field() const { return field_; }
    void set_field_labeling(FieldPtr f);
    // Cyclic labeling: vertex i is the residue i in Z_n.
    void set_cyclic_labeling() { labeling_ = Labeling::cyclic; }

    std::vector<int> neighbors(int i) const;

private:
    int n_ = 0;
    BitMatrix adj_;
    Labeling labeling_ = Labeling::none;
    FieldPtr field_;
};

struct SRGParams {
    int n = 0;
    int deg = 0;
    int lambda = 0;
    int mu = 0;
    bool operator==(const SRGParams&) const = default;
};

struct LsNlClass {
    enum class Kind { LS, NL, Neither } kind = Kind::Neither;
    std::int64_t m = 0;  // class count parameter
    std::int64_t n = 0;  // side length (graph order is n^2)
    bool operator==(const LsNlClass&) const = default;
};

// Generalized Paley graph on F_q with connection set the index-k residue
// subgroup. Requires k >= 2, k | q-1 and (q-1)/k even when q is odd.
Graph build_gpaley(FieldPtr field, std::int64_t k);

// Van Lint-Schrijver graph VLS(p,e,t) = GP(q,(q-1)/e) with q = p^((e-1)t).
// Requires primes p, e with e != 2, e != p and ord_p(e) = p-1.
Graph build_vls(std::int64_t p, std::int64_t e, int t);

// Circulant graph on Z_n; connection must exclude 0 and be closed under
// negation mod n.
Graph build_circulant(int n, const std::vector<int>& connection);

bool is_connected(const Graph& g);

// SRG parameters if g is regular, neither complete nor empty, and the
// common-neighbor counts are constant over adjacent and over nonadjacent
// pairs; nullopt otherwise.
std::optional<SRGParams> srg_params(const Graph& g);

// Latin square LS_m(n) = (n^2, m(n-1), n-2+(m-1)(m-2), m(m-1)) or negative
// Latin square NL_m(n) = (n^2, m(n+1), (m+1)(m+2)-n-2, m(m+1)).
LsNlClass classify_ls_nl(const SRGParams& params);

// Named small graphs used by the identification experiments.
Graph rook_graph(int m);     // m x m rook's graph (Hamming H(2,m))
Graph shrikhande_graph();    // SRG(16,6,2,2), not isomorphic to rook 4x4
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);

// Multiplicative order of e modulo p (e, p coprime).
std::int64_t order_mod(std::int64_t e, std::int64_t p);

}  // namespace gpl
