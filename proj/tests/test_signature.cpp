#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tg/signature.hpp"

using namespace tg;

namespace {

// Smith normal form of the abelianised presentation matrix: rows
// (1,1,1), (r,0,0), (0,s,0), (0,0,t). Returns the diagonal d1 | d2 | d3.
std::array<i64, 3> snf_diagonal(i64 r, i64 s, i64 t) {
    i64 m[4][3] = {{1, 1, 1}, {r, 0, 0}, {0, s, 0}, {0, 0, t}};
    const int R = 4, C = 3;
    std::array<i64, 3> diag{};
    for (int k = 0; k < C; ++k) {
        while (true) {
            int pi = -1, pj = -1;
            i64 best = 0;
            for (int i = k; i < R; ++i)
                for (int j = k; j < C; ++j)
                    if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < best)) {
                        best = std::abs(m[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) break;  // all zero
            for (int j = 0; j < C; ++j) std::swap(m[k][j], m[pi][j]);
            for (int i = 0; i < R; ++i) std::swap(m[i][k], m[i][pj]);
            bool clean = true;
            for (int i = k + 1; i < R; ++i)
                if (m[i][k] != 0) {
                    const i64 q = m[i][k] / m[k][k];
                    for (int j = 0; j < C; ++j) m[i][j] -= q * m[k][j];
                    if (m[i][k] != 0) clean = false;
                }
            for (int j = k + 1; j < C; ++j)
                if (m[k][j] != 0) {
                    const i64 q = m[k][j] / m[k][k];
                    for (int i = 0; i < R; ++i) m[i][j] -= q * m[i][k];
                    if (m[k][j] != 0) clean = false;
                }
            if (clean) break;
        }
        diag[k] = std::abs(m[k][k]);
    }
    // Enforce the divisibility chain.
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2 - i; ++j) {
            i64 &a = diag[j], &b = diag[j + 1];
            if (b % std::max<i64>(a, 1) != 0 || a > b) {
                const i64 g = std::gcd(a, b);
                const i64 l = g == 0 ? 0 : a / g * b;
                a = g;
                b = l;
            }
        }
    return diag;
}

}  // namespace

TEST_CASE("triple construction sorts and validates") {
    const Triple t(7, 2, 3);
    CHECK(t.r == 2);
    CHECK(t.s == 3);
    CHECK(t.t == 7);
    CHECK_THROWS_AS(Triple(1, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(Triple(2, 0, 5), std::invalid_argument);
}

TEST_CASE("classification") {
    CHECK(classify(Triple(2, 3, 5)) == SignatureClass::Spherical);
    CHECK(classify(Triple(3, 3, 3)) == SignatureClass::Euclidean);
    CHECK(classify(Triple(2, 3, 7)) == SignatureClass::Hyperbolic);
    // Permutation invariance: the constructor sorts.
    CHECK(classify(Triple(7, 3, 2)) == SignatureClass::Hyperbolic);
    CHECK(classify(Triple(3, 7, 2)) == SignatureClass::Hyperbolic);
}

TEST_CASE("exceptional triples") {
    CHECK(is_exceptional(Triple(2, 5, 5)));
    CHECK(is_exceptional(Triple(3, 3, 3)));
    CHECK(is_exceptional(Triple(2, 2, 9)));  // spherical
    CHECK_FALSE(is_exceptional(Triple(2, 3, 7)));
    CHECK_FALSE(is_exceptional(Triple(9, 39, 65)));
}

TEST_CASE("abelianization hand values") {
    CHECK(abelianization(Triple(2, 3, 7)) == std::pair<i64, i64>{1, 1});
    CHECK(abelianization(Triple(3, 3, 3)) == std::pair<i64, i64>{3, 3});
    CHECK(abelianization(Triple(15, 42, 63)) == std::pair<i64, i64>{3, 21});
}

TEST_CASE("abelianization agrees with Smith normal form") {
    for (i64 r = 2; r <= 50; ++r)
        for (i64 s = r; s <= 50; ++s)
            for (i64 t = s; t <= 50; ++t) {
                const auto [d, e] = abelianization(Triple(r, s, t));
                const auto diag = snf_diagonal(r, s, t);
                CHECK(diag[0] == 1);
                CHECK(diag[1] == d);
                CHECK(diag[2] == e);
            }
}

TEST_CASE("invariant profile hand values") {
    const InvariantProfile p = invariant_profile(Triple(15, 42, 63));
    CHECK(p.product == 39690);
    CHECK(p.lcm3 == 630);
    CHECK(p.pairwise_sum == 4221);
    CHECK(p.gcd3 == 3);
    CHECK(p.ab_e == 21);
    CHECK(p.euler_sum == Rational{67, 630});
    CHECK(p.even_count == 1);

    const InvariantProfile q = invariant_profile(Triple(21, 21, 90));
    CHECK(q.product == p.product);
    CHECK(q.lcm3 == p.lcm3);
    CHECK(q.pairwise_sum == p.pairwise_sum);
    CHECK(q.gcd3 == p.gcd3);
    CHECK(q.ab_e == p.ab_e);
    CHECK(q.euler_sum == p.euler_sum);
    CHECK(q.even_count == p.even_count);
    CHECK_FALSE(q.entries == p.entries);

    const InvariantProfile r = invariant_profile(Triple(2, 2, 2));
    CHECK(r.product == 8);
    CHECK(r.euler_sum == Rational{3, 2});
    CHECK(r.even_count == 3);
}

TEST_CASE("paper pair (13,15,117) vs (9,39,65) agrees field-by-field") {
    const InvariantProfile a = invariant_profile(Triple(13, 15, 117));
    const InvariantProfile b = invariant_profile(Triple(9, 39, 65));
    CHECK(a.product == b.product);
    CHECK(a.product == 22815);
    CHECK(a.lcm3 == b.lcm3);
    CHECK(a.pairwise_sum == b.pairwise_sum);
    CHECK(a.gcd3 == b.gcd3);
    CHECK(a.ab_e == b.ab_e);
    CHECK(a.euler_sum == b.euler_sum);
    CHECK_FALSE(a.entries == b.entries);
}

TEST_CASE("d*e identity on random triples") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 100'000; ++it) {
        const i64 r = 2 + static_cast<i64>(rng() % 400);
        const i64 s = 2 + static_cast<i64>(rng() % 400);
        const i64 t = 2 + static_cast<i64>(rng() % 400);
        const Triple tr(r, s, t);
        const auto [d, e] = abelianization(tr);
        const InvariantProfile p = invariant_profile(tr);
        CHECK(d * e == p.product / p.lcm3);
        CHECK(d == p.gcd3);
    }
}

TEST_CASE("riemann-hurwitz genus") {
    CHECK(genus_of_smooth_action(168, Triple(2, 3, 7)) == 3);
    CHECK(genus_of_smooth_action(3420, Triple(3, 5, 9)) == 609);
    CHECK_THROWS_AS(genus_of_smooth_action(169, Triple(2, 3, 7)), std::domain_error);
    CHECK_THROWS_AS(genus_of_smooth_action(60, Triple(2, 3, 6)), std::domain_error);
}

TEST_CASE("abelian cover orders stay symbolic") {
    CHECK(abelian_cover_order(Triple(2, 3, 7), 168, 5) == SymbolicOrder{5, 6, 168});
    CHECK(abelian_cover_order(Triple(2, 3, 7), 168, 1) == SymbolicOrder{1, 6, 168});
    CHECK(abelian_cover_order(Triple(3, 5, 9), 3420, 2) == SymbolicOrder{2, 1218, 3420});
}
