#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tg/arith.hpp"

using namespace tg;

namespace {

// Independent oracle: trial division.
bool trial_division_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 trial_division_least_factor(u64 n) {
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

}  // namespace

TEST_CASE("factorize matches hand values") {
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(630) ==
          Factorization{{{2, 1}, {3, 2}, {5, 1}, {7, 1}}});
    CHECK(factorize(1377) == Factorization{{{3, 4}, {17, 1}}});
}

TEST_CASE("factorize reconstructs and yields primes") {
    for (u64 n = 2; n <= 100'000; ++n) {
        const Factorization f = factorize(n);
        CHECK(f.value() == n);
        for (const auto& [p, e] : f.factors) {
            CHECK(e >= 1);
            CHECK(is_prime(p));
        }
        for (std::size_t i = 1; i < f.factors.size(); ++i)
            CHECK(f.factors[i - 1].prime < f.factors[i].prime);
    }
    // A few larger ones, including semiprimes that force the rho path.
    for (u64 n : {1'000'003ULL * 998'117ULL, (1ULL << 61) - 1, 600'851'475'143ULL}) {
        const Factorization f = factorize(n);
        CHECK(f.value() == n);
        for (const auto& [p, e] : f.factors) {
            (void)e;
            CHECK(is_prime(p));
        }
    }
}

TEST_CASE("divisors are sorted and complete") {
    const auto d = factorize(630).divisors();
    CHECK(d.size() == 24);
    CHECK(std::is_sorted(d.begin(), d.end()));
    for (u64 v : d) CHECK(630 % v == 0);
    CHECK(factorize(630).maximal_prime_powers() == std::vector<u64>{2, 9, 5, 7});
}

TEST_CASE("is_prime agrees with trial division") {
    CHECK(is_prime(163));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(3481));  // 59^2
    for (u64 n = 0; n <= 20'000; ++n) CHECK(is_prime(n) == trial_division_prime(n));
    CHECK(is_prime(2'147'483'647));          // 2^31 - 1
    CHECK(is_prime((1ULL << 61) - 1));       // Mersenne
    CHECK_FALSE(is_prime(3'215'031'751ULL));  // strong pseudoprime to 2,3,5,7
}

TEST_CASE("spf table at the census limit") {
    const SpfTable spf(12'000'000);
    // Trial division gives 11999999 = 11 * 1090909.
    CHECK(spf[11'999'999] == trial_division_least_factor(11'999'999));
    CHECK(spf[11'999'999] == 11);
    CHECK(spf[12'000'000] == 2);
}

TEST_CASE("spf table") {
    const SpfTable spf(1'000'000);
    CHECK(spf[9] == 3);
    CHECK(spf[7] == 7);
    for (u32 n = 2; n <= 1'000'000; ++n) {
        if (n % 97 != 0 && n > 10'000) continue;  // sampled above 10^4
        CHECK(spf[n] == trial_division_least_factor(n));
        CHECK(spf[n] == spf.factorize(n).factors[0].prime);
    }
    CHECK_THROWS_AS(SpfTable(1'000, 100), ResourceError);
}

TEST_CASE("crt merges and reduces") {
    const Congruence c = crt({{1, 162}, {3, 4}});
    CHECK(c.residue == 163);
    CHECK(c.modulus == 324);
    const Congruence v = crt({{0, 1}});
    CHECK(v.residue == 0);
    CHECK(v.modulus == 1);
    CHECK_THROWS_AS(crt({{1, 4}, {3, 4}}), InconsistencyError);
}

TEST_CASE("crt random instances check out by direct modular arithmetic") {
    std::mt19937_64 rng(12345);
    for (int it = 0; it < 10'000; ++it) {
        std::vector<Congruence> cs;
        const int k = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) {
            const u64 m = 1 + rng() % 30;
            cs.push_back({rng() % m, m});
        }
        try {
            const Congruence got = crt(cs);
            for (const auto& c : cs) CHECK(got.residue % c.modulus == c.residue % c.modulus);
            u64 l = 1;
            for (const auto& c : cs) l = lcm_u64(l, c.modulus);
            CHECK(got.modulus == l);
            CHECK(got.residue < got.modulus);
        } catch (const InconsistencyError&) {
            // Confirm genuine inconsistency by exhaustive scan over the lcm range.
            u64 l = 1;
            for (const auto& c : cs) l = lcm_u64(l, c.modulus);
            bool any = false;
            for (u64 x = 0; x < l && !any; ++x) {
                bool all = true;
                for (const auto& c : cs)
                    if (x % c.modulus != c.residue % c.modulus) all = false;
                if (all) any = true;
            }
            CHECK_FALSE(any);
        }
    }
}

TEST_CASE("find_prime spec cases") {
    // Mixed allowed/forbidden constraints from the suppression construction.
    const std::vector<ResidueConstraint> cs{
        {162, {1, 161}, {}}, {4, {1, 3}, {}}, {34, {}, {1, 33}}};
    CHECK(find_prime(cs, default_prime_bound(cs)) == 163);

    const std::vector<ResidueConstraint> odd{{2, {1}, {}}};
    CHECK(find_prime(odd, 10) == 3);

    CHECK_THROWS_AS(find_prime({{4, {1}, {}}, {4, {3}, {}}}, 1000), InconsistencyError);
}

TEST_CASE("find_prime returns the smallest qualifying prime") {
    std::mt19937_64 rng(777);
    for (int it = 0; it < 200; ++it) {
        const u64 m = 3 + rng() % 40;
        const u64 a = rng() % m;
        const u64 f_mod = 2 + rng() % 10;
        const std::vector<ResidueConstraint> cs{{m, {a}, {}}, {f_mod, {}, {rng() % f_mod}}};
        const u64 bound = 5'000;
        const auto got = find_prime(cs, bound);
        // Exhaustive scan oracle.
        std::optional<u64> expect;
        for (u64 p = 2; p <= bound; ++p) {
            if (!is_prime(p)) continue;
            bool ok = true;
            for (const auto& c : cs) ok = ok && c.admits(p);
            if (ok) {
                expect = p;
                break;
            }
        }
        CHECK(got == expect);
        if (got) {
            CHECK(is_prime(*got));
            for (const auto& c : cs) CHECK(c.admits(*got));
        }
    }
}

TEST_CASE("checked_mul raises on overflow") {
    CHECK(checked_mul(1ULL << 31, 1ULL << 31) == (1ULL << 62));
    CHECK_THROWS_AS(checked_mul(1ULL << 40, 1ULL << 40), std::overflow_error);
}
