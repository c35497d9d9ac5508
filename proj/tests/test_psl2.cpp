#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tg/psl2.hpp"

using namespace tg;

TEST_CASE("order spectrum maximal orders are pairwise coprime") {
    for (u64 p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 163, 1009}) {
        const OrderSpectrum sp(p);
        CHECK(std::gcd(sp.maximal_orders[0], sp.maximal_orders[1]) == 1);
        CHECK(std::gcd(sp.maximal_orders[0], sp.maximal_orders[2]) == 1);
        CHECK(std::gcd(sp.maximal_orders[1], sp.maximal_orders[2]) == 1);
    }
    CHECK_THROWS_AS(OrderSpectrum(4), std::invalid_argument);
    CHECK_THROWS_AS(OrderSpectrum(3), std::invalid_argument);
}

TEST_CASE("element_orders formulas") {
    CHECK(element_orders(GroupSpec::psl2(19)) == std::vector<u64>{1, 2, 3, 5, 9, 10, 19});
    CHECK(element_orders(GroupSpec::psl2(7)) == std::vector<u64>{1, 2, 3, 4, 7});
    CHECK(element_orders(GroupSpec::direct_product(
              {GroupSpec::cyclic(2), GroupSpec::cyclic(3)})) == std::vector<u64>{1, 2, 3, 6});
    CHECK(element_orders(GroupSpec::alt5()) == std::vector<u64>{1, 2, 3, 5});
    CHECK(element_orders(GroupSpec::dihedral(6)) == std::vector<u64>{1, 2, 3, 6});
    CHECK_THROWS_AS(element_orders(GroupSpec::generated_subgroup(GroupSpec::alt5(), {})),
                    std::invalid_argument);
}

TEST_CASE("has_element_of_order") {
    CHECK_FALSE(has_element_of_order(GroupSpec::psl2(19), 13));
    CHECK(has_element_of_order(
        GroupSpec::direct_product({GroupSpec::psl2(19), GroupSpec::alt5()}), 15));
    CHECK(has_element_of_order(GroupSpec::cyclic(6), 6));
    CHECK(has_element_of_order_divisible_by(GroupSpec::psl2(7), 4));
    CHECK_FALSE(has_element_of_order_divisible_by(GroupSpec::psl2(7), 5));
    // Mixed-prime order across factors of a product.
    CHECK(has_element_of_order_divisible_by(
        GroupSpec::direct_product({GroupSpec::cyclic(4), GroupSpec::cyclic(9)}), 36));
    CHECK_FALSE(has_element_of_order_divisible_by(
        GroupSpec::direct_product({GroupSpec::cyclic(4), GroupSpec::cyclic(9)}), 72));
}

TEST_CASE("macbeath criterion") {
    CHECK(macbeath_generated(19, Triple(3, 5, 9)));
    CHECK(macbeath_generated(7, Triple(2, 3, 7)));
    CHECK_FALSE(macbeath_generated(19, Triple(13, 15, 117)));
    CHECK_THROWS_AS(macbeath_generated(7, Triple(2, 5, 5)), std::domain_error);
    CHECK_THROWS_AS(macbeath_generated(7, Triple(3, 3, 3)), std::domain_error);
}

TEST_CASE("projective canonicalisation is idempotent and sign-blind") {
    const u64 p = 19;
    std::mt19937_64 rng(5);
    for (int it = 0; it < 2000; ++it) {
        const ProjMat m{rng() % p, rng() % p, rng() % p, rng() % p};
        if (m.a == 0 && m.b == 0 && m.c == 0 && m.d == 0) continue;
        const ProjMat c = proj_canon(m, p);
        CHECK(proj_canon(c, p) == c);
        const ProjMat neg{(p - m.a) % p, (p - m.b) % p, (p - m.c) % p, (p - m.d) % p};
        CHECK(proj_canon(neg, p) == c);
    }
}

TEST_CASE("realized psl2 sizes and spectra") {
    const auto g5 = realize_psl2(5);
    CHECK(g5->size() == 60);
    CHECK(g5->order_values() == std::vector<u64>{1, 2, 3, 5});

    const auto g7 = realize_psl2(7);
    CHECK(g7->size() == 168);
    CHECK(g7->order_values() == element_orders(GroupSpec::psl2(7)));

    const auto g19 = realize_psl2(19);
    CHECK(g19->size() == 3420);
    CHECK(g19->order_values() == element_orders(GroupSpec::psl2(19)));

    CHECK_THROWS_AS(realize_psl2(101, 100'000), ResourceError);
}

TEST_CASE("realized spectra match the formula for all desk primes") {
    for (u64 p : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        const auto g = realize_psl2(p);
        CHECK(g->size() == p * (p * p - 1) / 2);
        CHECK(g->order_values() == element_orders(GroupSpec::psl2(p)));
    }
}

TEST_CASE("group arithmetic sanity on psl2(7)") {
    const auto g = realize_psl2(7);
    const u32 e = g->identity();
    CHECK(g->order_of(e) == 1);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 500; ++it) {
        const u32 x = static_cast<u32>(rng() % g->size());
        const u32 y = static_cast<u32>(rng() % g->size());
        const u32 z = static_cast<u32>(rng() % g->size());
        CHECK(g->mult(x, e) == x);
        CHECK(g->mult(e, x) == x);
        CHECK(g->mult(g->mult(x, y), z) == g->mult(x, g->mult(y, z)));
        const auto d = g->describe(x);
        CHECK(g->index_of(d) == x);
    }
}

TEST_CASE("smooth generating pairs") {
    const auto g7 = realize_psl2(7);
    const auto w = find_smooth_generating_pair(*g7, Triple(2, 3, 7));
    REQUIRE(w.has_value());
    CHECK(w->order_x == 2);
    CHECK(w->order_y == 3);
    CHECK(w->order_xy == 7);
    CHECK(w->generating);
    CHECK_FALSE(find_smooth_generating_pair(*g7, Triple(2, 3, 5)).has_value());

    const auto g19 = realize_psl2(19);
    CHECK(find_smooth_generating_pair(*g19, Triple(3, 5, 9)).has_value());
    CHECK(find_smooth_generating_pair(*g19, Triple(5, 9, 10)).has_value());
}

TEST_CASE("deterministic witness") {
    const auto g = realize_psl2(7);
    const auto w1 = find_smooth_generating_pair(*g, Triple(2, 3, 7));
    const auto w2 = find_smooth_generating_pair(*g, Triple(2, 3, 7));
    REQUIRE(w1.has_value());
    CHECK(*w1 == *w2);
}
