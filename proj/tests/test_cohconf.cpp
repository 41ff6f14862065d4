// WL closure, coherence axioms, extensions, restriction, 2-WL equivalence.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "gpl/cohconf.hpp"
#include "gpl/graph.hpp"

using namespace gpl;

namespace {

// Independent oracle: stabilize the pair partition of a graph by
// repeatedly splitting classes whose intersection profiles are not
// constant. Returns the class id matrix (ids arbitrary).
std::vector<int> oracle_stabilization(const Graph& g) {
    const int n = g.n();
    std::vector<int> cls(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cls[static_cast<size_t>(i) * n + j] = (i == j) ? 0 : (g.adjacent(i, j) ? 1 : 2);

    for (;;) {
        bool split = false;
        // profile of (a,b): counts of (class(a,m), class(m,b))
        std::map<std::pair<int, std::map<std::pair<int, int>, int>>, int> regroup;
        std::vector<int> next(cls.size());
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                std::map<std::pair<int, int>, int> prof;
                for (int m = 0; m < n; ++m)
                    ++prof[{cls[static_cast<size_t>(a) * n + m],
                            cls[static_cast<size_t>(m) * n + b]}];
                auto key = std::make_pair(cls[static_cast<size_t>(a) * n + b], std::move(prof));
                auto it = regroup.find(key);
                if (it == regroup.end())
                    it = regroup.emplace(std::move(key), static_cast<int>(regroup.size())).first;
                next[static_cast<size_t>(a) * n + b] = it->second;
            }
        }
        std::map<int, int> distinct;
        for (int c : cls) distinct.emplace(c, 0);
        if (regroup.size() != distinct.size()) split = true;
        cls = std::move(next);
        if (!split) return cls;
    }
}

// Canonical partition fingerprint: each cell mapped to its smallest
// member pair index.
template <typename T>
std::vector<int> partition_fingerprint(const std::vector<T>& cls) {
    std::map<T, int> first;
    std::vector<int> rep(cls.size());
    for (size_t i = 0; i < cls.size(); ++i) {
        auto it = first.find(cls[i]);
        if (it == first.end()) it = first.emplace(cls[i], static_cast<int>(i)).first;
        rep[i] = it->second;
    }
    return rep;
}

Graph random_graph(int n, double p, std::mt19937_64& rng) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (static_cast<double>(rng() % 1000000) / 1000000.0 < p) g.add_edge(i, j);
    return g;
}

}  // namespace

TEST_CASE("closure examples") {
    auto k3 = wl_closure(complete_graph(3));
    CHECK(k3.num_relations == 2);  // trivial scheme

    auto paley13 = wl_closure(build_gpaley(FiniteField::make(13, 1), 2));
    CHECK(paley13.num_relations == 3);  // strongly regular: rank 3

    auto p3 = wl_closure(path_graph(3));
    auto fib = fibers(p3);
    REQUIRE(fib.size() == 2);
    CHECK(fib[0] == std::vector<int>{0, 2});
    CHECK(fib[1] == std::vector<int>{1});
}

TEST_CASE("verify_axioms") {
    auto cc = wl_closure(cycle_graph(6));
    auto rep = verify_axioms(cc);
    CHECK(rep.pass);

    // splitting K_4's edges into a vertex-0 star {01,02} versus the rest
    // violates C3 (a matching split would instead give the C_4 scheme)
    CoherentConfiguration bad;
    bad.n = 4;
    bad.color.assign(16, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            bool star = (i == 0 && (j == 1 || j == 2)) || (j == 0 && (i == 1 || i == 2));
            bad.at(i, j) = star ? 1 : 2;
        }
    bad.num_relations = 3;
    auto bad_rep = verify_axioms(bad);
    CHECK_FALSE(bad_rep.pass);
    CHECK_FALSE(bad_rep.witnesses.empty());

    // discrete partition is coherent
    CoherentConfiguration disc;
    disc.n = 3;
    disc.color.resize(9);
    std::uint32_t next = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) disc.at(i, j) = next++;
    disc.num_relations = 9;
    CHECK(verify_axioms(disc).pass);
}

TEST_CASE("point extensions") {
    // trivial scheme on K_4: two pinned points leave the other two
    // interchangeable
    auto k4 = wl_closure(complete_graph(4));
    auto ext = point_extension(k4, {0, 1});
    CHECK_FALSE(is_discrete(ext));

    // C_5 extension at {0,1} is discrete
    auto c5 = wl_closure(cycle_graph(5));
    CHECK(is_discrete(point_extension(c5, {0, 1})));

    // empty extension returns the same partition
    auto same = point_extension(c5, {});
    CHECK(same.color == c5.color);

    CHECK_THROWS(point_extension(c5, {0, 0}));
}

TEST_CASE("fibers and discreteness") {
    auto c7 = wl_closure(cycle_graph(7));  // homogeneous
    CHECK(fibers(c7).size() == 1);
    CHECK_FALSE(is_discrete(c7));

    auto ext = point_extension(c7, {0, 1});
    CHECK(is_discrete(ext));
    CHECK(fibers(ext).size() == 7);
}

TEST_CASE("restriction") {
    auto p3 = wl_closure(path_graph(3));
    auto to_all = restrict_cc(p3, {0, 1, 2});
    CHECK(to_all.num_relations == p3.num_relations);

    auto ends = restrict_cc(p3, {0, 2});  // the 2-element fiber
    CHECK(ends.n == 2);
    CHECK(ends.num_relations == 2);  // trivial scheme on 2 points
    CHECK(verify_axioms(ends).pass);

    CHECK_THROWS(restrict_cc(p3, {0, 1}));  // not fiber-closed
}

TEST_CASE("intersection numbers") {
    auto g = build_gpaley(FiniteField::make(13, 1), 2);
    auto cc = wl_closure(g);
    REQUIRE(cc.num_relations == 3);
    // identify colors: diagonal, edge, non-edge
    std::uint32_t diag = cc.at(0, 0);
    int v1 = -1, v2 = -1;
    for (int v = 1; v < 13; ++v) {
        if (g.adjacent(0, v) && v1 < 0) v1 = v;
        if (!g.adjacent(0, v) && v2 < 0) v2 = v;
    }
    std::uint32_t edge = cc.at(0, v1), non = cc.at(0, v2);
    CHECK(intersection_number(cc, edge, edge, edge) == 2);  // lambda
    CHECK(intersection_number(cc, edge, edge, non) == 3);   // mu
    CHECK(intersection_number(cc, diag, edge, edge) == 1);  // diagonal composition

    // row sums: sum_s c_{rs}^t = |alpha r|
    ensure_tensor(cc);
    for (std::uint32_t t : {diag, edge, non}) {
        for (std::uint32_t r : {diag, edge, non}) {
            std::int64_t sum = 0;
            for (std::uint32_t s = 0; s < cc.num_relations; ++s)
                sum += intersection_number(cc, r, s, t);
            std::int64_t expected = (r == diag) ? 1 : (r == edge ? 6 : 6);
            CHECK(sum == expected);
        }
    }
}

TEST_CASE("closure is idempotent") {
    for (const Graph& g : {cycle_graph(6), path_graph(4),
                           build_gpaley(FiniteField::make(13, 1), 3)}) {
        auto cc = wl_closure(g);
        // re-close the partition classes as relations
        std::vector<Relation> classes(cc.num_relations);
        for (int i = 0; i < cc.n; ++i)
            for (int j = 0; j < cc.n; ++j)
                classes[cc.at(i, j)].emplace_back(i, j);
        auto cc2 = wl_closure(cc.n, classes);
        CHECK(partition_fingerprint(cc.color) == partition_fingerprint(cc2.color));
    }
}

TEST_CASE("closure monotonicity on random refinements") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        Graph g = random_graph(n, 0.5, rng);
        Relation edges, half;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (g.adjacent(i, j)) {
                    edges.emplace_back(i, j);
                    if ((i + j) % 2 == 0) half.emplace_back(i, j);
                }
        auto coarse = wl_closure(n, {edges});
        auto fine = wl_closure(n, {edges, half});  // refines the input
        // every class of fine lies inside one class of coarse
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        if (fine.at(i, j) == fine.at(a, b))
                            REQUIRE(coarse.at(i, j) == coarse.at(a, b));
    }
}

TEST_CASE("circulant closures are homogeneous") {
    for (int n : {5, 6, 8, 12}) {
        auto g = build_circulant(n, {1, n - 1});
        CHECK(fibers(wl_closure(g)).size() == 1);
    }
    auto gp = build_circulant(13, {1, 5, 8, 12});
    CHECK(fibers(wl_closure(gp)).size() == 1);
}

TEST_CASE("closure equals brute-force stabilization on small graphs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        Graph g = random_graph(n, 0.4 + 0.2 * static_cast<double>(rng() % 3), rng);
        auto cc = wl_closure(g);
        REQUIRE(verify_axioms(cc).pass);
        auto oracle = oracle_stabilization(g);
        REQUIRE(partition_fingerprint(cc.color) == partition_fingerprint(oracle));
    }
}

TEST_CASE("automorphisms preserved by closure (exhaustive small graphs)") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 3 + static_cast<int>(rng() % 5);  // up to 7
        Graph g = random_graph(n, 0.5, rng);
        auto cc = wl_closure(g);
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool edges_ok = true;
            for (int i = 0; i < n && edges_ok; ++i)
                for (int j = i + 1; j < n && edges_ok; ++j)
                    if (g.adjacent(i, j) != g.adjacent(perm[static_cast<size_t>(i)],
                                                       perm[static_cast<size_t>(j)]))
                        edges_ok = false;
            bool colors_ok = true;
            for (int i = 0; i < n && colors_ok; ++i)
                for (int j = 0; j < n && colors_ok; ++j)
                    if (cc.at(i, j) != cc.at(perm[static_cast<size_t>(i)],
                                             perm[static_cast<size_t>(j)]))
                        colors_ok = false;
            REQUIRE(edges_ok == colors_ok);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("2-WL equivalence") {
    // Shrikhande vs 4x4 rook: same SRG(16,6,2,2) parameters
    auto shr = shrikhande_graph();
    auto rook = rook_graph(4);
    REQUIRE(srg_params(shr) == srg_params(rook));
    CHECK(twl_equivalent(shr, rook));

    // relabeled copy
    auto g = build_gpaley(FiniteField::make(13, 1), 3);
    Graph relabel(13);
    for (int i = 0; i < 13; ++i)
        for (int j = i + 1; j < 13; ++j)
            if (g.adjacent(i, j)) relabel.add_edge((i * 5 + 3) % 13, (j * 5 + 3) % 13);
    CHECK(twl_equivalent(g, relabel));

    // C_6 vs two disjoint triangles
    auto c6 = cycle_graph(6);
    auto triangles = build_circulant(6, {2, 4});
    CHECK_FALSE(twl_equivalent(c6, triangles));

    // different degree sequences
    CHECK_FALSE(twl_equivalent(path_graph(4), cycle_graph(4)));
}
