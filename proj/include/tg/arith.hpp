#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tg {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

/// Two incompatible congruences were combined.
class InconsistencyError : public std::runtime_error {
public:
    explicit InconsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured memory or size budget was exceeded.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Overflow-checked product. Any overflow is a hard internal error, never wraparound.
inline u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("checked_mul: 64-bit overflow");
    return r;
}

inline u64 lcm_u64(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / std::gcd(a, b), b);
}

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

struct PrimePower {
    u64 prime;
    u32 exponent;
    bool operator==(const PrimePower&) const = default;
};

/// Ordered prime factorisation. Primes strictly increasing, exponents >= 1,
/// product of prime^exponent reconstructs the input. factorize(1) is empty.
struct Factorization {
    std::vector<PrimePower> factors;

    u64 value() const;
    /// All divisors, sorted ascending.
    std::vector<u64> divisors() const;
    /// The maximal prime-power divisors p^e of the factored value.
    std::vector<u64> maximal_prime_powers() const;
    bool operator==(const Factorization&) const = default;
};

/// Deterministic for all n < 2^64 (fixed strong-probable-prime witness set).
bool is_prime(u64 n);

/// Full factorisation for 1 <= n <= 2^63-1 (trial division + Brent-Pollard rho).
Factorization factorize(u64 n);

/// Smallest-prime-factor table: table[n] = least prime dividing n, 2 <= n <= limit.
/// Built once, shared read-only.
class SpfTable {
public:
    /// budget is the largest permitted limit; exceeding it is a resource error.
    explicit SpfTable(u32 limit, u32 budget = kDefaultBudget);

    u32 limit() const { return limit_; }
    u32 operator[](u32 n) const { return spf_[n]; }
    Factorization factorize(u32 n) const;
    const std::vector<u32>& primes() const { return primes_; }

    static constexpr u32 kDefaultBudget = 12'000'000;

private:
    u32 limit_;
    std::vector<u32> spf_;
    std::vector<u32> primes_;
};

/// Congruence x = residue (mod modulus).
struct Congruence {
    u64 residue;
    u64 modulus;
};

/// Combine congruences; returns (residue, lcm of moduli) with residue reduced.
/// Throws InconsistencyError naming the clashing pair if no solution exists.
Congruence crt(const std::vector<Congruence>& congruences);

/// Residues a prime may or may not have modulo `modulus`. An empty allowed set
/// means "no positive constraint" (the constraint is a pure filter); allowed and
/// forbidden are disjoint and reduced mod modulus.
struct ResidueConstraint {
    u64 modulus = 2;
    std::vector<u64> allowed;
    std::vector<u64> forbidden;

    bool admits(u64 residue) const;
    bool operator==(const ResidueConstraint&) const = default;
};

/// Smallest prime p <= bound satisfying every constraint, or nullopt when none
/// exists below the bound. Constraints with allowed sets are expanded into CRT
/// residue classes when the combination count is small; forbidden sets filter.
/// Throws InconsistencyError when the allowed sets admit no residue class at all.
std::optional<u64> find_prime(const std::vector<ResidueConstraint>& constraints, u64 bound);

/// Default search bound for find_prime given the constraints in play:
/// 2^20 * (product of constraint moduli), capped at 2^63-1.
u64 default_prime_bound(const std::vector<ResidueConstraint>& constraints);

}  // namespace tg
