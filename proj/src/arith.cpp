#include "tg/arith.hpp"

#include <algorithm>
#include <cassert>

namespace tg {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 Factorization::value() const {
    u64 v = 1;
    for (const auto& [p, e] : factors)
        for (u32 i = 0; i < e; ++i) v = checked_mul(v, p);
    return v;
}

std::vector<u64> Factorization::divisors() const {
    std::vector<u64> divs{1};
    for (const auto& [p, e] : factors) {
        const std::size_t n = divs.size();
        u64 pk = 1;
        for (u32 i = 1; i <= e; ++i) {
            pk = checked_mul(pk, p);
            for (std::size_t j = 0; j < n; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::vector<u64> Factorization::maximal_prime_powers() const {
    std::vector<u64> mpp;
    mpp.reserve(factors.size());
    for (const auto& [p, e] : factors) {
        u64 pk = 1;
        for (u32 i = 0; i < e; ++i) pk = checked_mul(pk, p);
        mpp.push_back(pk);
    }
    return mpp;
}

namespace {

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // This witness set decides primality for all n < 2^64.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
        if (!miller_rabin(n, a)) return false;
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    // Floyd cycle detection with a gcd per step: robust on prime powers,
    // where batched gcd tricks can swallow both factors at once.
    if (n % 2 == 0) return 2;
    for (u64 c = 1, x0 = 2;; ++c, ++x0) {
        u64 x = x0, y = x0, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = f(x);
            y = f(f(y));
            if (x == y) {
                d = n;  // cycle closed without exposing a factor; reseed
                break;
            }
            d = std::gcd(x > y ? x - y : y - x, n);
        } while (d == 1);
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& primes_out) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes_out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, primes_out);
    factor_rec(n / d, primes_out);
}

}  // namespace

Factorization factorize(u64 n) {
    assert(n >= 1 && n <= static_cast<u64>(INT64_MAX));
    Factorization f;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL}) {
        if (p * p > n) break;
        if (n % p == 0) {
            u32 e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.factors.push_back({p, e});
        }
    }
    if (n > 1) {
        if (is_prime(n)) {
            f.factors.push_back({n, 1});
        } else {
            std::vector<u64> rest;
            factor_rec(n, rest);
            std::sort(rest.begin(), rest.end());
            for (std::size_t i = 0; i < rest.size();) {
                std::size_t j = i;
                while (j < rest.size() && rest[j] == rest[i]) ++j;
                f.factors.push_back({rest[i], static_cast<u32>(j - i)});
                i = j;
            }
        }
    }
    return f;
}

SpfTable::SpfTable(u32 limit, u32 budget) : limit_(limit) {
    if (limit > budget)
        throw ResourceError("spf_table: limit " + std::to_string(limit) +
                            " exceeds budget " + std::to_string(budget));
    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    for (u32 i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (u32 p : primes_) {
            const u64 v = static_cast<u64>(p) * i;
            if (p > spf_[i] || v > limit) break;
            spf_[static_cast<std::size_t>(v)] = p;
        }
    }
}

Factorization SpfTable::factorize(u32 n) const {
    assert(n >= 1 && n <= limit_);
    Factorization f;
    while (n > 1) {
        const u32 p = spf_[n];
        u32 e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.factors.push_back({p, e});
    }
    return f;
}

namespace {

// Inverse of a modulo m (gcd(a, m) = 1, m >= 1).
u64 inverse_mod(u64 a, u64 m) {
    if (m == 1) return 0;
    i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
    i64 old_s = 1, s = 0;
    while (r != 0) {
        const i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    i64 inv = old_s % static_cast<i64>(m);
    if (inv < 0) inv += static_cast<i64>(m);
    return static_cast<u64>(inv);
}

// Merge x = (r1 mod m1) with x = (r2 mod m2); nullopt if incompatible.
std::optional<Congruence> crt_merge(const Congruence& a, const Congruence& b) {
    const u64 g = std::gcd(a.modulus, b.modulus);
    const u64 r1 = a.residue % a.modulus, r2 = b.residue % b.modulus;
    if ((r1 > r2 ? r1 - r2 : r2 - r1) % g != 0) return std::nullopt;
    const u64 lcm = lcm_u64(a.modulus, b.modulus);
    // x = r1 + m1 * k, where k = (r2 - r1)/g * inv(m1/g) mod (m2/g).
    const u64 m2g = b.modulus / g;
    if (m2g == 1) return Congruence{r1 % lcm, lcm};
    const u64 inv = inverse_mod((a.modulus / g) % m2g, m2g);
    const u64 diff = (r2 + b.modulus - (r1 % b.modulus)) % b.modulus;  // r2 - r1 mod m2
    u64 k = (diff / g) % m2g;
    k = mulmod(k, inv, m2g);
    const u64 x = static_cast<u64>((r1 + static_cast<unsigned __int128>(a.modulus) * k) % lcm);
    return Congruence{x, lcm};
}

}  // namespace

Congruence crt(const std::vector<Congruence>& congruences) {
    if (congruences.empty()) throw std::invalid_argument("crt: empty congruence list");
    Congruence acc{congruences[0].residue % congruences[0].modulus, congruences[0].modulus};
    for (std::size_t i = 1; i < congruences.size(); ++i) {
        auto merged = crt_merge(acc, congruences[i]);
        if (!merged)
            throw InconsistencyError(
                "crt: incompatible congruences x=" + std::to_string(acc.residue) + " (mod " +
                std::to_string(acc.modulus) + ") vs x=" + std::to_string(congruences[i].residue) +
                " (mod " + std::to_string(congruences[i].modulus) + ")");
        acc = *merged;
    }
    return acc;
}

bool ResidueConstraint::admits(u64 value) const {
    const u64 r = value % modulus;
    if (!allowed.empty() &&
        std::find(allowed.begin(), allowed.end(), r) == allowed.end())
        return false;
    return std::find(forbidden.begin(), forbidden.end(), r) == forbidden.end();
}

u64 default_prime_bound(const std::vector<ResidueConstraint>& constraints) {
    unsigned __int128 prod = 1;
    for (const auto& c : constraints) prod *= c.modulus;
    const unsigned __int128 cap = static_cast<u64>(INT64_MAX);
    unsigned __int128 bound = prod << 20;
    if ((bound >> 20) != prod || bound > cap) return static_cast<u64>(INT64_MAX);
    return static_cast<u64>(bound);
}

std::optional<u64> find_prime(const std::vector<ResidueConstraint>& constraints, u64 bound) {
    std::vector<const ResidueConstraint*> positive;
    for (const auto& c : constraints)
        if (!c.allowed.empty()) positive.push_back(&c);

    auto admits_all = [&](u64 p) {
        for (const auto& c : constraints)
            if (!c.admits(p)) return false;
        return true;
    };

    u64 combos = 1;
    bool too_many = false;
    for (const auto* c : positive) {
        if (__builtin_mul_overflow(combos, static_cast<u64>(c->allowed.size()), &combos) ||
            combos > 64) {
            too_many = true;
            break;
        }
    }

    if (positive.empty() || too_many) {
        // Direct scan over primes.
        for (u64 p = 2; p <= bound; ++p)
            if (is_prime(p) && admits_all(p)) return p;
        return std::nullopt;
    }

    // CRT-expand all allowed-set combinations into residue classes mod M.
    u64 modulus = 1;
    for (const auto* c : positive) modulus = lcm_u64(modulus, c->modulus);

    std::vector<u64> residues;
    std::vector<std::size_t> idx(positive.size(), 0);
    bool any_consistent = false;
    while (true) {
        std::vector<Congruence> cs;
        cs.reserve(positive.size());
        for (std::size_t i = 0; i < positive.size(); ++i)
            cs.push_back({positive[i]->allowed[idx[i]], positive[i]->modulus});
        try {
            residues.push_back(crt(cs).residue);
            any_consistent = true;
        } catch (const InconsistencyError&) {
        }
        std::size_t i = 0;
        for (; i < positive.size(); ++i) {
            if (++idx[i] < positive[i]->allowed.size()) break;
            idx[i] = 0;
        }
        if (i == positive.size()) break;
    }
    if (!any_consistent)
        throw InconsistencyError("find_prime: allowed residue sets admit no common class");

    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());

    // Candidates k*M + r in ascending order; smallest qualifying prime wins.
    for (u64 base = 0;; base += modulus) {
        bool in_range = false;
        for (u64 r : residues) {
            const u64 p = base + r;
            if (p > bound) continue;
            in_range = true;
            if (p >= 2 && is_prime(p) && admits_all(p)) return p;
        }
        if (!in_range) return std::nullopt;
        if (base > bound) return std::nullopt;
    }
}

}  // namespace tg
