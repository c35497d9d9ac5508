#include "tg/signature.hpp"

#include <algorithm>
#include <stdexcept>

namespace tg {

Triple::Triple(i64 a, i64 b, i64 c) {
    if (a < 2 || b < 2 || c < 2)
        throw std::invalid_argument("Triple: entries must be >= 2, got (" + std::to_string(a) +
                                    "," + std::to_string(b) + "," + std::to_string(c) + ")");
    std::array<i64, 3> v{a, b, c};
    std::sort(v.begin(), v.end());
    r = v[0];
    s = v[1];
    t = v[2];
}

std::string Triple::str() const {
    return "(" + std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(t) + ")";
}

SignatureClass classify(const Triple& tr) {
    // 1/r + 1/s + 1/t vs 1, exactly: compare st + rt + rs with rst.
    const u64 sum = checked_mul(tr.s, tr.t) + checked_mul(tr.r, tr.t) + checked_mul(tr.r, tr.s);
    const u64 prod = checked_mul(checked_mul(tr.r, tr.s), tr.t);
    if (sum > prod) return SignatureClass::Spherical;
    if (sum == prod) return SignatureClass::Euclidean;
    return SignatureClass::Hyperbolic;
}

bool is_hyperbolic(const Triple& tr) { return classify(tr) == SignatureClass::Hyperbolic; }

bool is_exceptional(const Triple& tr) {
    if (classify(tr) == SignatureClass::Spherical) return true;
    static const Triple table[] = {Triple(3, 3, 3), Triple(2, 5, 5), Triple(3, 4, 4),
                                   Triple(3, 3, 5), Triple(3, 5, 5), Triple(5, 5, 5)};
    return std::find(std::begin(table), std::end(table), tr) != std::end(table);
}

std::pair<i64, i64> abelianization(const Triple& tr) {
    const i64 d = std::gcd(std::gcd(tr.r, tr.s), tr.t);
    const i64 e = static_cast<i64>(
        lcm_u64(lcm_u64(std::gcd(tr.r, tr.s), std::gcd(tr.r, tr.t)), std::gcd(tr.s, tr.t)));
    const u64 lcm3 = lcm_u64(lcm_u64(tr.r, tr.s), tr.t);
    const u64 prod = checked_mul(checked_mul(tr.r, tr.s), tr.t);
    if (checked_mul(d, e) != prod / lcm3)
        throw std::logic_error("abelianization: d*e != rst/lcm for " + tr.str());
    return {d, e};
}

InvariantProfile invariant_profile(const Triple& tr) {
    InvariantProfile p;
    p.entries = tr.entries();
    p.gcd3 = std::gcd(std::gcd(tr.r, tr.s), tr.t);
    p.lcm3 = static_cast<i64>(lcm_u64(lcm_u64(tr.r, tr.s), tr.t));
    p.product = static_cast<i64>(checked_mul(checked_mul(tr.r, tr.s), tr.t));
    p.pairwise_sum = static_cast<i64>(checked_mul(tr.r, tr.s) + checked_mul(tr.r, tr.t) +
                                      checked_mul(tr.s, tr.t));
    auto [d, e] = abelianization(tr);
    p.ab_d = d;
    p.ab_e = e;
    const i64 g = std::gcd(p.pairwise_sum, p.product);
    p.euler_sum = Rational{p.pairwise_sum / g, p.product / g};
    p.even_count = static_cast<int>(tr.r % 2 == 0) + static_cast<int>(tr.s % 2 == 0) +
                   static_cast<int>(tr.t % 2 == 0);
    return p;
}

u64 genus_of_smooth_action(u64 order, const Triple& tr) {
    if (!is_hyperbolic(tr))
        throw std::domain_error("genus_of_smooth_action: " + tr.str() + " is not hyperbolic");
    if (order == 0) throw std::domain_error("genus_of_smooth_action: order must be >= 1");
    const u64 prod = checked_mul(checked_mul(tr.r, tr.s), tr.t);
    const u64 sum = checked_mul(tr.s, tr.t) + checked_mul(tr.r, tr.t) + checked_mul(tr.r, tr.s);
    // 2g = 2 + order * (prod - sum) / prod, which must be an even integer.
    const unsigned __int128 numer = static_cast<unsigned __int128>(order) * (prod - sum);
    if (numer % prod != 0)
        throw std::domain_error("genus_of_smooth_action: order " + std::to_string(order) +
                                " does not give an integral genus for " + tr.str());
    const unsigned __int128 k = numer / prod;
    if ((k & 1) != 0)
        throw std::domain_error("genus_of_smooth_action: order " + std::to_string(order) +
                                " gives an odd 2g-2 for " + tr.str());
    return static_cast<u64>(k / 2) + 1;
}

SymbolicOrder abelian_cover_order(const Triple& tr, u64 order, u64 n) {
    const u64 g = genus_of_smooth_action(order, tr);
    return SymbolicOrder{n, 2 * g, order};
}

}  // namespace tg
