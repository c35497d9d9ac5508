#pragma once

#include <array>
#include <string>

#include "tg/arith.hpp"

namespace tg {

/// A triangle-group signature (r,s,t), stored canonically sorted, entries >= 2.
struct Triple {
    i64 r, s, t;

    Triple(i64 a, i64 b, i64 c);

    std::array<i64, 3> entries() const { return {r, s, t}; }
    bool operator==(const Triple&) const = default;
    bool operator<(const Triple& o) const {
        return std::array{r, s, t} < std::array{o.r, o.s, o.t};
    }
    std::string str() const;
};

enum class SignatureClass { Spherical, Euclidean, Hyperbolic };

/// Exact reduced fraction with 64-bit parts; never floating point.
struct Rational {
    i64 num;
    i64 den;
    bool operator==(const Rational&) const = default;
};

/// The cheap quotient-set invariants of a triple.
struct InvariantProfile {
    i64 gcd3;          // d
    i64 lcm3;
    i64 product;       // rst
    i64 pairwise_sum;  // rs + rt + st
    i64 ab_d;          // abelianisation C_d x C_e
    i64 ab_e;
    Rational euler_sum;  // 1/r + 1/s + 1/t, lowest terms
    int even_count;
    std::array<i64, 3> entries;
    bool operator==(const InvariantProfile&) const = default;
};

/// n^(2g) * |G|, kept unevaluated: exponents like 1218 exceed fixed width.
struct SymbolicOrder {
    u64 base;      // n
    u64 exponent;  // 2g
    u64 cofactor;  // |G|
    bool operator==(const SymbolicOrder&) const = default;
};

SignatureClass classify(const Triple& tr);
bool is_hyperbolic(const Triple& tr);

/// Spherical triples together with (3,3,3), (2,5,5), (3,4,4), (3,3,5), (3,5,5), (5,5,5).
bool is_exceptional(const Triple& tr);

/// (d, e) with d = gcd(r,s,t), e = lcm(gcd(r,s), gcd(r,t), gcd(s,t));
/// the identity d*e = rst/lcm(r,s,t) is checked internally.
std::pair<i64, i64> abelianization(const Triple& tr);

InvariantProfile invariant_profile(const Triple& tr);

/// Genus g with 2 - 2g = order * (1/r + 1/s + 1/t - 1); throws std::domain_error
/// when that value is not a non-negative integer.
u64 genus_of_smooth_action(u64 order, const Triple& tr);

/// Order n^(2g) * order of the largest exponent-n abelian cover quotient.
SymbolicOrder abelian_cover_order(const Triple& tr, u64 order, u64 n);

}  // namespace tg
