// Power-residue system counting and the square-root error bounds.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "gpl/counting.hpp"

using namespace gpl;

namespace {

// Draw t distinct field elements, deterministic under the seed.
std::vector<Fe> random_alphas(const FieldPtr& f, size_t t, std::mt19937_64& rng) {
    std::set<Fe> chosen;
    while (chosen.size() < t)
        chosen.insert(static_cast<Fe>(rng() % static_cast<std::uint64_t>(f->q())));
    return {chosen.begin(), chosen.end()};
}

}  // namespace

TEST_CASE("count_solutions examples") {
    auto f13 = FiniteField::make(13, 1);
    // x^4 = 1 has solutions {1,5,8,12}
    CHECK(count_solutions({f13, 3, {0}, {}}) == 4);
    // empty system counts everything
    CHECK(count_solutions({f13, 3, {}, {}}) == 13);
    // all four solutions above also satisfy (1+x)^4 != 1
    CHECK(count_solutions({f13, 3, {0}, {1}}) == 4);
}

TEST_CASE("count_solutions validation") {
    auto f13 = FiniteField::make(13, 1);
    CHECK_THROWS(count_solutions({f13, 5, {0}, {}}));      // k does not divide q-1
    CHECK_THROWS(count_solutions({f13, 3, {0, 0}, {}}));   // duplicate alphas
    CHECK_THROWS(count_solutions({f13, 3, {0}, {0}}));     // shared alpha
    CHECK_THROWS(count_solutions({f13, 3, {14}, {}}));     // out of range
}

TEST_CASE("single equality count is exactly (q-1)/k") {
    for (auto [p, d, k] : {std::tuple<std::int64_t, int, std::int64_t>{13, 1, 3},
                           {13, 1, 2}, {3, 2, 2}, {2, 4, 3}, {5, 2, 2}}) {
        auto f = FiniteField::make(p, d);
        for (Fe alpha : {Fe{0}, Fe{1}, Fe{2}})
            CHECK(count_solutions({f, k, {alpha}, {}}) == (f->q() - 1) / k);
    }
}

TEST_CASE("adding an inequality never increases the count") {
    auto f = FiniteField::make(13, 1);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto alphas = random_alphas(f, 3, rng);
        PowerSystem base{f, 3, {alphas[0]}, {alphas[1]}};
        PowerSystem more{f, 3, {alphas[0]}, {alphas[1], alphas[2]}};
        CHECK(count_solutions(more) <= count_solutions(base));
    }
}

TEST_CASE("theorem bound examples") {
    auto f169 = FiniteField::make(13, 2);
    std::mt19937_64 rng(0);
    auto alphas = random_alphas(f169, 2, rng);
    auto rep = verify_theorem_bound(f169, 2, alphas);
    CHECK(rep.pass);
    CHECK(rep.margins["lower"].get<double>() == doctest::Approx(169.0 / 4 - 2 * 13.0));
    CHECK(rep.margins["upper"].get<double>() == doctest::Approx(169.0 / 4 + 2 * 13.0));

    auto f13 = FiniteField::make(13, 1);
    auto rep2 = verify_theorem_bound(f13, 3, {0, 1});
    CHECK(rep2.pass);  // bound is vacuously wide at q = 13

    CHECK_THROWS(verify_theorem_bound(f13, 3, {0}));  // t < 2
}

TEST_CASE("theorem bound randomized sweep") {
    std::mt19937_64 rng(0);
    for (auto [p, d] : {std::pair<std::int64_t, int>{11, 2}, {13, 2}, {2, 8}}) {
        auto f = FiniteField::make(p, d);
        for (std::int64_t k : {2, 3, 4}) {
            if ((f->q() - 1) % k) continue;
            if (f->q() % 2 == 1 && ((f->q() - 1) / k) % 2) continue;
            for (size_t t : {2, 3, 4}) {
                for (int trial = 0; trial < 100; ++trial) {
                    auto alphas = random_alphas(f, t, rng);
                    auto rep = verify_theorem_bound(f, k, alphas);
                    REQUIRE(rep.pass);
                }
            }
        }
    }
}

TEST_CASE("mixed bound example values") {
    auto f169 = FiniteField::make(13, 2);
    PowerSystem sys{f169, 2, {0, 1}, {2}};
    auto rep = verify_mixed_bound(sys);
    CHECK(rep.pass);
    CHECK(rep.margins["main"].get<double>() == doctest::Approx(169.0 * 0.25 * 0.5));
    CHECK(rep.margins["error_bound"].get<double>() == doctest::Approx(3 * 2 * 13.0));

    // degenerate n = t matches the equalities-only bound shape
    PowerSystem no_ineq{f169, 2, {0, 1}, {}};
    auto rep2 = verify_mixed_bound(no_ineq);
    CHECK(rep2.pass);
    CHECK(rep2.notes.contains("degenerate"));

    CHECK_THROWS(verify_mixed_bound(PowerSystem{f169, 2, {0}, {1, 2}}));  // t < 2
    CHECK_THROWS(verify_mixed_bound(PowerSystem{f169, 2, {0, 1}, {1}}));  // shared alpha
}

TEST_CASE("inclusion-exclusion identity") {
    auto f13 = FiniteField::make(13, 1);
    auto rep = inclusion_exclusion_check(f13, 3, {0, 1, 2}, {0});
    CHECK(rep.pass);
    CHECK(rep.margins["N0"] == 4);

    // T = full set degenerates to N_0(T) = N(T)
    auto rep2 = inclusion_exclusion_check(f13, 3, {0, 1, 2}, {0, 1, 2});
    CHECK(rep2.pass);

    // partition property on random systems, exact integer equality
    std::mt19937_64 rng(42);
    for (auto [p, d] : {std::pair<std::int64_t, int>{13, 1}, {3, 2}, {2, 4}, {5, 2}}) {
        auto f = FiniteField::make(p, d);
        for (std::int64_t k : {2, 3}) {
            if ((f->q() - 1) % k) continue;
            for (int trial = 0; trial < 20; ++trial) {
                std::set<Fe> chosen;
                while (chosen.size() < 4)
                    chosen.insert(static_cast<Fe>(rng() % static_cast<std::uint64_t>(f->q())));
                std::vector<Fe> alphas(chosen.begin(), chosen.end());
                auto r = inclusion_exclusion_check(f, k, alphas, {0, 1});
                REQUIRE(r.pass);
            }
        }
    }
}
