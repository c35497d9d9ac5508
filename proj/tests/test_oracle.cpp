#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tg/quotient_oracle.hpp"

using namespace tg;

namespace {

const OracleConfig cfg{};  // default: pair-search bound 10^4

}

TEST_CASE("paper quotient facts for PSL(2,19)") {
    CHECK(is_quotient(GroupSpec::psl2(19), Triple(9, 39, 65), cfg).yes);
    CHECK_FALSE(is_quotient(GroupSpec::psl2(19), Triple(13, 15, 117), cfg).yes);
    CHECK_FALSE(is_quotient(GroupSpec::cyclic(2), Triple(2, 3, 7), cfg).yes);
}

TEST_CASE("smooth quotients") {
    CHECK(is_smooth_quotient(GroupSpec::psl2(7), Triple(2, 3, 7), cfg).yes);
    CHECK(is_smooth_quotient(GroupSpec::alt5(), Triple(2, 5, 5), cfg).yes);
    CHECK_FALSE(is_smooth_quotient(GroupSpec::sym4(), Triple(2, 3, 3), cfg).yes);
    CHECK(is_smooth_quotient(GroupSpec::alt4(), Triple(2, 3, 3), cfg).yes);
    // The exceptional table's generation facts.
    CHECK(is_smooth_quotient(GroupSpec::sym4(), Triple(2, 3, 4), cfg).yes);
    CHECK(is_smooth_quotient(GroupSpec::sym4(), Triple(3, 4, 4), cfg).yes);
    CHECK(is_smooth_quotient(GroupSpec::alt5(), Triple(2, 3, 5), cfg).yes);
    CHECK(is_smooth_quotient(GroupSpec::alt5(), Triple(3, 3, 5), cfg).yes);
    CHECK(is_smooth_quotient(GroupSpec::alt5(), Triple(3, 5, 5), cfg).yes);
    CHECK(is_smooth_quotient(GroupSpec::alt5(), Triple(5, 5, 5), cfg).yes);
    CHECK(is_smooth_quotient(GroupSpec::elem_abelian_3sq(), Triple(3, 3, 3), cfg).yes);
}

TEST_CASE("smooth implies plain quotient") {
    const std::vector<GroupSpec> specs{GroupSpec::alt4(), GroupSpec::sym4(), GroupSpec::alt5(),
                                       GroupSpec::dihedral(5), GroupSpec::psl2(7)};
    for (const auto& g : specs)
        for (i64 r = 2; r <= 10; ++r)
            for (i64 s = r; s <= 10; ++s)
                for (i64 t = s; t <= 10; ++t) {
                    const Triple tr(r, s, t);
                    if (is_smooth_quotient(g, tr, cfg).yes) CHECK(is_quotient(g, tr, cfg).yes);
                }
}

TEST_CASE("order-gap certificates") {
    CHECK(certify_not_quotient_by_order_gap(GroupSpec::psl2(19), Triple(13, 15, 117)) == 13);
    CHECK(certify_not_quotient_by_order_gap(GroupSpec::psl2(163), Triple(17, 162, 459)) == 17);
    CHECK_FALSE(
        certify_not_quotient_by_order_gap(GroupSpec::psl2(19), Triple(9, 39, 65)).has_value());
    CHECK_THROWS_AS(certify_not_quotient_by_order_gap(GroupSpec::cyclic(6), Triple(2, 3, 7)),
                    std::invalid_argument);
}

TEST_CASE("order gap implies oracle false") {
    const std::vector<GroupSpec> specs{GroupSpec::psl2(5), GroupSpec::psl2(7),
                                       GroupSpec::psl2(11), GroupSpec::alt4(),
                                       GroupSpec::dihedral(7)};
    for (const auto& g : specs)
        for (i64 r = 2; r <= 12; ++r)
            for (i64 s = r; s <= 12; ++s)
                for (i64 t = s; t <= 12; ++t) {
                    const Triple tr(r, s, t);
                    if (certify_not_quotient_by_order_gap(g, tr))
                        CHECK_FALSE(is_quotient(g, tr, cfg).yes);
                }
}

TEST_CASE("hom counts") {
    CHECK(hom_count(Triple(2, 3, 7), GroupSpec::cyclic(6), cfg) == 1);
    CHECK(hom_count(Triple(2, 2, 2), GroupSpec::cyclic(2), cfg) == 4);
    // Frozen golden values, computed by this oracle on the realized groups.
    // 337 = 1 + |Aut(PSL(2,7))|: the trivial map plus one free Aut-orbit of
    // generating pairs (the two mirror kernels are fused by the outer half).
    CHECK(hom_count(Triple(2, 3, 7), GroupSpec::psl2(7), cfg) == 337);
    CHECK(hom_count(Triple(2, 3, 7), GroupSpec::psl2(13), cfg) == 6553);
}

TEST_CASE("hom count against the abelianization") {
    // #Hom(Delta -> C_n) factors through C_d x C_e: gcd(d,n) * gcd(e,n).
    for (i64 r = 2; r <= 30; r += 3)
        for (i64 s = r; s <= 30; s += 2)
            for (i64 t = s; t <= 30; ++t) {
                const Triple tr(r, s, t);
                const auto [d, e] = abelianization(tr);
                for (u64 n = 2; n <= 12; ++n)
                    CHECK(hom_count(tr, GroupSpec::cyclic(n), cfg) ==
                          static_cast<u64>(std::gcd<i64>(d, n) * std::gcd<i64>(e, n)));
            }
}

TEST_CASE("dihedral closed form equals brute force") {
    for (u64 m = 3; m <= 12; ++m) {
        const GroupSpec dm = GroupSpec::dihedral(m);
        for (i64 r = 2; r <= 24; ++r)
            for (i64 s = r; s <= 24; ++s)
                for (i64 t = s; t <= 24; ++t) {
                    const Triple tr(r, s, t);
                    CHECK(dihedral_quotient_test(tr, m) == is_quotient(dm, tr, cfg).yes);
                }
    }
}

TEST_CASE("direct product and subgroup realization") {
    const GroupSpec prod = GroupSpec::direct_product({GroupSpec::cyclic(2), GroupSpec::alt4()});
    const auto g = realize(prod, 10'000);
    CHECK(g->size() == 24);
    std::vector<u64> orders = g->order_values();
    CHECK(orders == element_orders(prod));

    // Subgroup generated by an explicit element pair.
    const auto a4 = realize(GroupSpec::alt4(), 100);
    const auto three = a4->elements_of_order(3);
    REQUIRE(!three.empty());
    const GroupSpec sub =
        GroupSpec::generated_subgroup(GroupSpec::alt4(), {a4->describe(three[0])});
    const auto h = realize(sub, 100);
    CHECK(h->size() == 3);
    CHECK_THROWS_AS(realize(GroupSpec::generated_subgroup(GroupSpec::alt4(), {}), 100),
                    std::invalid_argument);
}

TEST_CASE("resource bounds respected") {
    OracleConfig small;
    small.max_group_order = 100;
    CHECK_THROWS_AS(is_quotient(GroupSpec::psl2(7), Triple(2, 3, 7), small), ResourceError);
}

TEST_CASE("witnesses returned by the oracle recompute") {
    const auto ans = is_smooth_quotient(GroupSpec::psl2(7), Triple(2, 3, 7), cfg);
    REQUIRE(ans.yes);
    REQUIRE(ans.witness.has_value());
    const auto g = realize_psl2(7);
    const auto xi = g->index_of(ans.witness->x);
    const auto yi = g->index_of(ans.witness->y);
    REQUIRE(xi.has_value());
    REQUIRE(yi.has_value());
    CHECK(g->order_of(*xi) == 2);
    CHECK(g->order_of(*yi) == 3);
    CHECK(g->order_of(g->mult(*xi, *yi)) == 7);
    CHECK(g->generates({*xi, *yi}));
}
