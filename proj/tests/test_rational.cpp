#include <doctest.h>

#include <numeric>
#include <random>

#include "knotbb/diagram.hpp"
#include "knotbb/rational.hpp"

using namespace knotbb;

namespace {

std::vector<long long> entries(std::initializer_list<long long> v) { return {v}; }

}  // namespace

TEST_CASE("standard continued fractions") {
    CHECK(standard_cf(Fraction(17426, 5075)).entries == entries({3, 2, 3, 3, 1, 2, 3, 4, 4}));
    CHECK(standard_cf(Fraction(2, 1)).entries == entries({2}));
    CHECK(standard_cf(Fraction(3, 2)).entries == entries({1, 1, 1}));

    CHECK_THROWS_AS(Fraction(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(Fraction(4, 6), std::invalid_argument);
    CHECK_THROWS_AS(Fraction(6, 4), std::invalid_argument);
}

TEST_CASE("continued fraction evaluation") {
    CHECK(evaluate_cf(ContinuedFraction{entries({3, 2, 3, 3, 1, 2, 3, 4, 4})}) == Fraction(17426, 5075));
    CHECK(evaluate_cf(ContinuedFraction{entries({2})}) == Fraction(2, 1));
    CHECK(evaluate_cf(ContinuedFraction{entries({1, 0, 1})}) == Fraction(2, 1));
}

TEST_CASE("round trip over a fraction sweep") {
    for (long long alpha = 2; alpha <= 2000; ++alpha)
        for (long long beta = 1; beta < alpha; ++beta) {
            if (std::gcd(alpha, beta) != 1) continue;
            const Fraction f(alpha, beta);
            const auto cf = standard_cf(f);
            CHECK(cf.length() % 2 == 1);
            for (long long e : cf.entries) CHECK(e >= 1);
            if (evaluate_cf(cf) != f) {
                CAPTURE(alpha);
                CAPTURE(beta);
                REQUIRE(evaluate_cf(cf) == f);
            }
        }

    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<long long> pick(2001, 100000);
    for (int trial = 0; trial < 4000; ++trial) {
        const long long alpha = pick(rng);
        std::uniform_int_distribution<long long> pick_beta(1, alpha - 1);
        long long beta = pick_beta(rng);
        while (std::gcd(alpha, beta) != 1) beta = pick_beta(rng);
        const Fraction f(alpha, beta);
        REQUIRE(evaluate_cf(standard_cf(f)) == f);
    }
}

TEST_CASE("worked 2-bridge fixture") {
    const auto cf = standard_cf(Fraction(17426, 5075));

    const auto sv_default = orient_and_sign(cf, TwoBridgeOrientation::Default);
    CHECK(sv_default.component_count == 2);
    CHECK(sv_default.entries == entries({3, 2, 3, 3, -1, -2, -3, 4, -4}));
    CHECK(braid_index_oriented(sv_default) == 10);

    const auto sv_rev = orient_and_sign(cf, TwoBridgeOrientation::Reversed);
    CHECK(braid_index_oriented(sv_rev) == 9);

    CHECK(braid_index_unoriented(Fraction(17426, 5075)) == 9);
}

TEST_CASE("orientation and signing of torus forms") {
    // (n) with parallel strands carries positive signs
    for (long long n : {2, 3, 4, 5, 6, 7}) {
        const auto sv = orient_and_sign(ContinuedFraction{entries({n})});
        CHECK(sv.entries == entries({n}));
        CHECK(braid_index_oriented(sv) == 2);
    }
    // reversing the Hopf link gives (-2)
    const auto rev = orient_and_sign(ContinuedFraction{entries({2})}, TwoBridgeOrientation::Reversed);
    CHECK(rev.entries == entries({-2}));
    CHECK(braid_index_oriented(rev) == 2);

    CHECK_THROWS_AS(orient_and_sign(ContinuedFraction{entries({3})}, TwoBridgeOrientation::Reversed),
                    std::invalid_argument);
}

TEST_CASE("braid index formula values") {
    CHECK(braid_index_oriented(SignedVector{entries({3, 2, 3, 3, -1, -2, -3, 4, -4}), 2}) == 10);
    CHECK(braid_index_oriented(SignedVector{entries({-1, -5, -1}), 1}) == 2);
    CHECK(braid_index_oriented(SignedVector{entries({7}), 1}) == 2);
    CHECK_THROWS_AS(braid_index_oriented(SignedVector{entries({-3}), 1}), InvariantError);

    CHECK(braid_index_unoriented(Fraction(3, 1)) == 2);
    CHECK(braid_index_unoriented(Fraction(5, 2)) == 3);  // figure eight
}

TEST_CASE("BB classification of 2-bridge links") {
    CHECK(is_bb_two_bridge(Fraction(7, 1)));
    CHECK_FALSE(is_bb_two_bridge(Fraction(5, 2)));
    for (long long n = 2; n <= 30; ++n) CHECK(is_bb_two_bridge(Fraction(n, n - 1)));
}

namespace {

// Leading sign structure of standard signed vectors: sign(b1) = sign(b2) and
// b3 > 0 forces b2 even. This holds for one of each mirror pair (the reduced
// alternating figure-eight diagram has writhe zero, so it cannot hold for
// both sides at once).
bool sign_structure_ok(const Fraction& f) {
    const auto cf = standard_cf(f);
    const int comps = two_bridge_components(f);
    for (int rev = 0; rev < comps; ++rev) {
        const auto sv = orient_and_sign(
            cf, rev ? TwoBridgeOrientation::Reversed : TwoBridgeOrientation::Default);
        const auto& b = sv.entries;
        if (b.size() >= 2 && (b[0] > 0) != (b[1] > 0)) return false;
        if (b.size() >= 3 && b[2] > 0 && b[1] % 2 != 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("diagram structure invariants over a sweep") {
    std::mt19937_64 rng(7);
    auto check_fraction = [&](long long alpha, long long beta) {
        const Fraction f(alpha, beta);
        const auto cf = standard_cf(f);
        const auto d = diagram::build_two_bridge(cf);
        CHECK(diagram::is_alternating(d));
        CHECK(diagram::component_count(d) == (alpha % 2 == 0 ? 2 : 1));

        const int comps = two_bridge_components(f);
        for (int rev = 0; rev < comps; ++rev) {
            const auto sv = orient_and_sign(
                cf, rev ? TwoBridgeOrientation::Reversed : TwoBridgeOrientation::Default);
            CHECK(sv.component_count == comps);
            const long long b = braid_index_oriented(sv);
            CHECK(b >= 2);
        }
        CHECK(braid_index_unoriented(f) >= 2);

        const bool lemma = sign_structure_ok(f) ||
                           (alpha - beta != beta && sign_structure_ok(mirror(f)));
        CHECK(lemma);
    };

    for (long long alpha = 2; alpha <= 120; ++alpha)
        for (long long beta = 1; beta < alpha; ++beta)
            if (std::gcd(alpha, beta) == 1) check_fraction(alpha, beta);

    std::uniform_int_distribution<long long> pick(121, 10000);
    for (int trial = 0; trial < 400; ++trial) {
        const long long alpha = pick(rng);
        std::uniform_int_distribution<long long> pick_beta(1, alpha - 1);
        long long beta = pick_beta(rng);
        while (std::gcd(alpha, beta) != 1) beta = pick_beta(rng);
        check_fraction(alpha, beta);
    }
}
