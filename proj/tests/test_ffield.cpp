// Finite field construction, arithmetic, residue subgroups, Frobenius.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gpl/ffield.hpp"
#include "gpl/serialize.hpp"

using namespace gpl;

namespace {

// Independent irreducibility oracle: trial division of f by every monic
// polynomial of degree 1..deg(f)-1 over GF(p), coefficients low to high.
bool oracle_irreducible(const std::vector<std::int64_t>& f, std::int64_t p) {
    auto mod = [&](std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
        auto degree = [](const std::vector<std::int64_t>& v) {
            int d = -1;
            for (size_t i = 0; i < v.size(); ++i)
                if (v[i]) d = static_cast<int>(i);
            return d;
        };
        int db = degree(b);
        while (degree(a) >= db && db >= 0) {
            std::int64_t c = a[static_cast<size_t>(degree(a))];
            int shift = degree(a) - db;
            for (int i = 0; i <= db; ++i)
                a[static_cast<size_t>(i + shift)] =
                    ((a[static_cast<size_t>(i + shift)] - c * b[static_cast<size_t>(i)]) % p + p) % p;
        }
        return degree(a) < 0;
    };
    int n = static_cast<int>(f.size()) - 1;
    for (int m = 1; m < n; ++m) {
        std::int64_t cnt = 1;
        for (int i = 0; i < m; ++i) cnt *= p;
        for (std::int64_t idx = 0; idx < cnt; ++idx) {
            std::vector<std::int64_t> cand(static_cast<size_t>(m + 1), 0);
            cand[static_cast<size_t>(m)] = 1;
            std::int64_t v = idx;
            for (int i = 0; i < m; ++i) { cand[static_cast<size_t>(i)] = v % p; v /= p; }
            if (mod(f, cand)) return false;
        }
    }
    return true;
}

// Enumeration oracle for k-th power residues in a prime field.
std::set<std::int64_t> oracle_powers(std::int64_t p, int e) {
    std::set<std::int64_t> out;
    for (std::int64_t x = 1; x < p; ++x) {
        std::int64_t v = 1;
        for (int i = 0; i < e; ++i) v = (v * x) % p;
        out.insert(v);
    }
    return out;
}

}  // namespace

TEST_CASE("deterministic field construction") {
    auto f9 = FiniteField::make(3, 2);
    CHECK(f9->q() == 9);
    CHECK(f9->modulus() == std::vector<std::int64_t>{1, 0, 1});  // x^2 + 1

    auto f5 = FiniteField::make(5, 1);
    CHECK(f5->q() == 5);
    CHECK(f5->modulus() == std::vector<std::int64_t>{0, 1});  // x

    auto f16 = FiniteField::make(2, 4);
    CHECK(f16->q() == 16);
    CHECK(f16->modulus() == std::vector<std::int64_t>{1, 1, 0, 0, 1});  // x^4+x+1
    CHECK(oracle_irreducible(f16->modulus(), 2));
    // and nothing smaller is irreducible
    CHECK_FALSE(oracle_irreducible({0, 0, 0, 0, 1}, 2));  // x^4
    CHECK_FALSE(oracle_irreducible({1, 0, 0, 0, 1}, 2));  // x^4+1
    CHECK_FALSE(oracle_irreducible({0, 1, 0, 0, 1}, 2));  // x^4+x
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS(FiniteField::make(4, 1));
    CHECK_THROWS(FiniteField::make(6, 2));
    CHECK_THROWS(FiniteField::make(1, 3));
    CHECK_THROWS(FiniteField::make(2, 0));
    CHECK_THROWS(FiniteField::make(2, 40));  // 2^40 over the cap
}

TEST_CASE("arithmetic examples") {
    auto f7 = FiniteField::make(7, 1);
    CHECK(f7->mul(3, 5) == 1);  // 15 = 1 mod 7

    auto f9 = FiniteField::make(3, 2);  // GF(3)[x]/(x^2+1), x has index 3
    CHECK(f9->mul(3, 3) == 2);          // x^2 = -1 = 2
    CHECK(f9->inv(3) == 6);             // 1/x = 2x
    CHECK(f9->mul(3, 6) == 1);
    CHECK_THROWS(f9->inv(0));
    CHECK_THROWS(f9->mul(3, 11));  // out of range
}

TEST_CASE("pow examples") {
    auto f7 = FiniteField::make(7, 1);
    CHECK(f7->pow(3, 6) == 1);

    auto f13 = FiniteField::make(13, 1);
    CHECK(f13->pow(2, 4) == 3);
    auto cubes = oracle_powers(13, 3);
    CHECK(cubes == std::set<std::int64_t>{1, 5, 8, 12});
    CHECK(cubes.count(2) == 0);  // 2 is not a cube

    for (auto f : {FiniteField::make(7, 1), FiniteField::make(3, 2),
                   FiniteField::make(2, 4), FiniteField::make(5, 2)}) {
        CHECK(f->pow(f->generator(), static_cast<std::uint64_t>(f->q() - 1)) == 1);
    }
    CHECK_THROWS(f7->pow(0, 0));
    CHECK(f7->pow(0, 5) == 0);
}

TEST_CASE("residue subgroups") {
    auto f13 = FiniteField::make(13, 1);
    CHECK(f13->residue_subgroup(3) == std::vector<Fe>{1, 5, 8, 12});
    auto sub2 = f13->residue_subgroup(2);
    CHECK(sub2 == std::vector<Fe>{1, 3, 4, 9, 10, 12});
    // matches the enumeration oracle
    auto squares = oracle_powers(13, 2);
    CHECK(std::set<std::int64_t>(sub2.begin(), sub2.end()) == squares);

    auto all = f13->residue_subgroup(1);
    CHECK(all.size() == 12);
    CHECK_THROWS(f13->residue_subgroup(5));  // 5 does not divide 12
}

TEST_CASE("frobenius examples") {
    auto f9 = FiniteField::make(3, 2);
    CHECK(f9->frobenius(3, 1) == 6);  // x^3 = 2x
    for (Fe a = 0; a < 9; ++a) CHECK(f9->frobenius(a, 0) == a);

    auto f5 = FiniteField::make(5, 1);
    CHECK(f5->frobenius(2, 0) == 2);
    CHECK_THROWS(f5->frobenius(2, 1));  // d = 1 forces j = 0
}

TEST_CASE("field invariants") {
    std::mt19937_64 rng(12345);
    for (auto f : {FiniteField::make(7, 1), FiniteField::make(3, 2),
                   FiniteField::make(2, 4), FiniteField::make(5, 2),
                   FiniteField::make(13, 1)}) {
        const std::int64_t q = f->q();
        for (Fe a = 1; a < q; ++a)
            REQUIRE(f->pow(a, static_cast<std::uint64_t>(q - 1)) == 1);

        // Frobenius is a field automorphism.
        for (int trial = 0; trial < 1000; ++trial) {
            Fe a = static_cast<Fe>(rng() % static_cast<std::uint64_t>(q));
            Fe b = static_cast<Fe>(rng() % static_cast<std::uint64_t>(q));
            int j = static_cast<int>(rng() % static_cast<std::uint64_t>(f->d()));
            REQUIRE(f->frobenius(f->add(a, b), j) ==
                    f->add(f->frobenius(a, j), f->frobenius(b, j)));
            REQUIRE(f->frobenius(f->mul(a, b), j) ==
                    f->mul(f->frobenius(a, j), f->frobenius(b, j)));
        }

        for (std::int64_t k = 1; k <= q - 1; ++k) {
            if ((q - 1) % k) continue;
            auto m = f->residue_subgroup(k);
            REQUIRE(static_cast<std::int64_t>(m.size()) == (q - 1) / k);
            std::set<Fe> ms(m.begin(), m.end());
            for (Fe x : m) {
                REQUIRE(f->pow(x, static_cast<std::uint64_t>((q - 1) / k)) == 1);
                REQUIRE(ms.count(f->inv(x)) == 1);
                for (Fe y : m) REQUIRE(ms.count(f->mul(x, y)) == 1);
                // Frobenius-invariance
                for (int j = 0; j < f->d(); ++j) REQUIRE(ms.count(f->frobenius(x, j)) == 1);
            }
            // kernel property: elements outside M fail the residue test
            auto ind = f->residue_indicator(k);
            for (Fe x = 1; x < q; ++x)
                REQUIRE((ind[static_cast<size_t>(x)] == 1) ==
                        (f->pow(x, static_cast<std::uint64_t>((q - 1) / k)) == 1));
        }
    }
}

TEST_CASE("large field uses the generic arithmetic path") {
    auto f = FiniteField::make(2, 21);  // above the table threshold
    CHECK_FALSE(f->has_tables());
    const Fe g = f->generator();
    CHECK(f->pow(g, static_cast<std::uint64_t>(f->q() - 1)) == 1);
    CHECK(f->mul(g, f->inv(g)) == 1);
    Fe a = 123456;
    CHECK(f->mul(a, f->inv(a)) == 1);
    CHECK(f->frobenius(f->frobenius(a, 1), 1) == f->frobenius(a, 2));
}

TEST_CASE("field descriptor serialization") {
    auto f = FiniteField::make(3, 2);
    auto j = field_to_json(*f);
    CHECK(j["p"] == 3);
    CHECK(j["d"] == 2);
    CHECK(j["modulus"] == std::vector<std::int64_t>{1, 0, 1});
    auto f2 = field_from_json(j);
    CHECK(f2->q() == 9);
    CHECK(f2->generator() == f->generator());
}
