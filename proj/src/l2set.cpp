#include "tg/l2set.hpp"

#include <algorithm>
#include <stdexcept>

namespace tg {

std::string L2Set::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(members[i]);
    }
    return s + "}";
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

L2Set l2_set(const Triple& tr) {
    const u64 lcm3 = lcm_u64(lcm_u64(tr.r, tr.s), tr.t);
    const Factorization f = factorize(lcm3);
    const int np = static_cast<int>(f.factors.size());

    // Merge primes that co-occur in an entry.
    UnionFind uf(np);
    for (i64 entry : tr.entries()) {
        int first = -1;
        for (int i = 0; i < np; ++i) {
            if (entry % static_cast<i64>(f.factors[i].prime) == 0) {
                if (first < 0)
                    first = i;
                else
                    uf.unite(first, i);
            }
        }
    }

    // Each class contributes the product of the maximal prime powers of the lcm.
    const std::vector<u64> mpp = f.maximal_prime_powers();
    L2Set out;
    std::vector<int> root_member(np, -1);
    for (int i = 0; i < np; ++i) {
        const int r = uf.find(i);
        if (root_member[r] < 0) {
            root_member[r] = static_cast<int>(out.members.size());
            out.members.push_back(1);
        }
        out.members[root_member[r]] =
            static_cast<i64>(checked_mul(out.members[root_member[r]], mpp[i]));
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

std::optional<L2SplitWitness> l2_split_witness(const Triple& t1, const Triple& t2) {
    const u64 lcm1 = lcm_u64(lcm_u64(t1.r, t1.s), t1.t);
    const u64 lcm2 = lcm_u64(lcm_u64(t2.r, t2.s), t2.t);
    if (lcm1 != lcm2)
        throw std::invalid_argument("l2_split_witness: lcm mismatch between " + t1.str() +
                                    " and " + t2.str());

    const L2Set s1 = l2_set(t1);
    const L2Set s2 = l2_set(t2);
    if (s1 == s2) return std::nullopt;

    // Each maximal prime power of the lcm divides exactly one member per side.
    const std::vector<u64> mpp = factorize(lcm1).maximal_prime_powers();
    auto member_containing = [](const L2Set& s, u64 q) -> i64 {
        for (i64 m : s.members)
            if (m % static_cast<i64>(q) == 0) return m;
        throw std::logic_error("l2_split_witness: prime power not covered by a member");
    };

    for (std::size_t i = 0; i < mpp.size(); ++i) {
        for (std::size_t j = i + 1; j < mpp.size(); ++j) {
            const i64 q1 = static_cast<i64>(mpp[i]);
            const i64 q2 = static_cast<i64>(mpp[j]);
            const i64 a1 = member_containing(s1, q1), a2 = member_containing(s1, q2);
            const i64 b1 = member_containing(s2, q1), b2 = member_containing(s2, q2);
            if (a1 != a2 && b1 == b2) return L2SplitWitness{q1, q2, a1, a2, 1};
            if (b1 != b2 && a1 == a2) return L2SplitWitness{q1, q2, b1, b2, 2};
        }
    }
    // Distinct L2-sets always expose a joined-vs-split pair of prime powers.
    throw std::logic_error("l2_split_witness: distinct L2-sets without a split pair");
}

}  // namespace tg
