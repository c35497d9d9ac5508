#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tg/l2set.hpp"

using namespace tg;

namespace {

u64 lcm3(const Triple& t) { return lcm_u64(lcm_u64(t.r, t.s), t.t); }

// The three defining properties, checked directly.
bool satisfies_properties(const std::vector<i64>& members, const Triple& tr) {
    for (i64 m : members)
        if (m < 2) return false;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (std::gcd(members[i], members[j]) != 1) return false;
    u64 l = 1;
    for (i64 m : members) l = lcm_u64(l, m);
    if (l != lcm3(tr)) return false;
    for (i64 e : tr.entries()) {
        int count = 0;
        for (i64 m : members)
            if (m % e == 0) ++count;
        if (count != 1) return false;
    }
    return true;
}

// All coprime partitions of the maximal prime powers of the lcm, as candidate
// member sets (each partition block's product is a member).
void partitions(const std::vector<u64>& mpp, std::size_t i, std::vector<i64>& blocks,
                const Triple& tr, std::vector<std::vector<i64>>& valid) {
    if (i == mpp.size()) {
        std::vector<i64> sorted = blocks;
        std::sort(sorted.begin(), sorted.end());
        if (satisfies_properties(sorted, tr)) valid.push_back(sorted);
        return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        blocks[b] *= static_cast<i64>(mpp[i]);
        partitions(mpp, i + 1, blocks, tr, valid);
        blocks[b] /= static_cast<i64>(mpp[i]);
    }
    blocks.push_back(static_cast<i64>(mpp[i]));
    partitions(mpp, i + 1, blocks, tr, valid);
    blocks.pop_back();
}

// True when every block of `coarse` is a product of blocks of `fine`.
bool is_coarsening_of(const std::vector<i64>& coarse, const std::vector<i64>& fine) {
    for (i64 f : fine) {
        int count = 0;
        for (i64 c : coarse)
            if (c % f == 0) ++count;
        if (count != 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("worked cases") {
    CHECK(l2_set(Triple(2, 3, 7)).members == std::vector<i64>{2, 3, 7});
    CHECK(l2_set(Triple(15, 42, 63)).members == std::vector<i64>{630});
    CHECK(l2_set(Triple(2, 27, 81)).members == std::vector<i64>{2, 81});
    // gcd(k,lm)=1, gcd(l,m)>1 -> {k, lcm(l,m)}
    CHECK(l2_set(Triple(5, 6, 8)).members == std::vector<i64>{5, 24});
    // chains merge everything -> {lcm}
    CHECK(l2_set(Triple(6, 10, 15)).members == std::vector<i64>{30});
    CHECK(l2_set(Triple(13, 15, 117)).members == std::vector<i64>{585});
    CHECK(l2_set(Triple(9, 39, 65)).members == std::vector<i64>{585});
    CHECK(l2_set(Triple(3, 5, 9)).members == std::vector<i64>{5, 9});
}

TEST_CASE("defining properties hold for all triples with entries <= 200") {
    for (i64 r = 2; r <= 200; ++r)
        for (i64 s = r; s <= 200; ++s)
            for (i64 t = s; t <= 200; ++t) {
                const Triple tr(r, s, t);
                const L2Set l2 = l2_set(tr);
                REQUIRE(satisfies_properties(l2.members, tr));
            }
}

TEST_CASE("computed set is the unique finest valid coprime partition (lcm <= 5040)") {
    for (i64 r = 2; r <= 48; ++r)
        for (i64 s = r; s <= 48; ++s)
            for (i64 t = s; t <= 48; ++t) {
                const Triple tr(r, s, t);
                if (lcm3(tr) > 5040) continue;
                const L2Set l2 = l2_set(tr);
                const auto mpp = factorize(lcm3(tr)).maximal_prime_powers();
                std::vector<std::vector<i64>> valid;
                std::vector<i64> blocks;
                partitions(mpp, 0, blocks, tr, valid);
                REQUIRE(!valid.empty());
                bool found_self = false;
                for (const auto& v : valid) {
                    if (v == l2.members) found_self = true;
                    // Every valid partition coarsens the computed set, making it
                    // the unique finest one.
                    REQUIRE(is_coarsening_of(v, l2.members));
                }
                REQUIRE(found_self);
            }
}

TEST_CASE("split witness") {
    CHECK_FALSE(l2_split_witness(Triple(13, 15, 117), Triple(9, 39, 65)).has_value());
    CHECK_FALSE(l2_split_witness(Triple(15, 42, 63), Triple(21, 21, 90)).has_value());

    const auto w = l2_split_witness(Triple(2, 9, 35), Triple(2, 45, 7));
    REQUIRE(w.has_value());
    CHECK(w->q1 == 9);
    CHECK(w->q2 == 5);
    CHECK(w->split_side == 1);
    CHECK(w->m1 == 9);
    CHECK(w->m2 == 35);

    CHECK_THROWS_AS(l2_split_witness(Triple(2, 3, 7), Triple(2, 3, 5)), std::invalid_argument);
}

TEST_CASE("split witness empty iff equal sets") {
    for (i64 r = 2; r <= 24; ++r)
        for (i64 s = r; s <= 24; ++s)
            for (i64 t = s; t <= 24; ++t) {
                const Triple t1(r, s, t);
                for (i64 u = 2; u <= 24; ++u)
                    for (i64 v = u; v <= 24; ++v) {
                        // Match lcm cheaply: w chosen so lcms agree when possible.
                        const u64 l1 = lcm3(t1);
                        const u64 lu = lcm_u64(u, v);
                        if (l1 % lu != 0) continue;
                        const i64 w = static_cast<i64>(l1 / lu) > 1
                                          ? static_cast<i64>(l1 / lu)
                                          : static_cast<i64>(l1);
                        const Triple t2(u, v, w);
                        if (lcm3(t2) != l1) continue;
                        const bool equal = l2_set(t1) == l2_set(t2);
                        CHECK(l2_split_witness(t1, t2).has_value() == !equal);
                    }
            }
}
