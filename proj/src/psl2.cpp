#include "tg/psl2.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace tg {

OrderSpectrum::OrderSpectrum(u64 prime) : p(prime) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("OrderSpectrum: p must be a prime >= 5");
    maximal_orders = {p, (p - 1) / 2, (p + 1) / 2};
    assert(std::gcd(maximal_orders[0], maximal_orders[1]) == 1 &&
           std::gcd(maximal_orders[0], maximal_orders[2]) == 1 &&
           std::gcd(maximal_orders[1], maximal_orders[2]) == 1);
}

GroupSpec GroupSpec::cyclic(u64 n) {
    if (n < 1) throw std::invalid_argument("GroupSpec: cyclic order must be >= 1");
    return GroupSpec{Kind::Cyclic, n, {}, {}};
}

GroupSpec GroupSpec::dihedral(u64 m) {
    if (m < 3) throw std::invalid_argument("GroupSpec: dihedral m must be >= 3");
    return GroupSpec{Kind::Dihedral, m, {}, {}};
}

GroupSpec GroupSpec::psl2(u64 p) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("GroupSpec: psl2 p must be a prime >= 5");
    return GroupSpec{Kind::Psl2, p, {}, {}};
}

GroupSpec GroupSpec::direct_product(std::vector<GroupSpec> factors) {
    if (factors.empty()) throw std::invalid_argument("GroupSpec: empty direct product");
    return GroupSpec{Kind::DirectProduct, 0, std::move(factors), {}};
}

GroupSpec GroupSpec::generated_subgroup(GroupSpec parent, std::vector<ElementDesc> gens) {
    return GroupSpec{Kind::GeneratedSubgroup, 0, {std::move(parent)}, std::move(gens)};
}

namespace {

// nullopt when the product leaves the 64-bit range.
std::optional<u64> mul_if_small(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
    return r;
}

}  // namespace

std::optional<u64> GroupSpec::order() const {
    switch (kind) {
        case Kind::Cyclic: return n;
        case Kind::Dihedral: return 2 * n;
        case Kind::Alt4: return 12;
        case Kind::Sym4: return 24;
        case Kind::Alt5: return 60;
        case Kind::ElemAbelian3sq: return 9;
        case Kind::Psl2: {
            // p(p^2-1)/2; orders beyond 64 bits are not representable here.
            const auto sq = mul_if_small(n - 1, n + 1);
            if (!sq) return std::nullopt;
            return mul_if_small(n, *sq / 2);
        }
        case Kind::DirectProduct: {
            u64 o = 1;
            for (const auto& f : factors) {
                const auto fo = f.order();
                if (!fo) return std::nullopt;
                const auto next = mul_if_small(o, *fo);
                if (!next) return std::nullopt;
                o = *next;
            }
            return o;
        }
        case Kind::GeneratedSubgroup: return std::nullopt;
    }
    return std::nullopt;
}

std::string GroupSpec::str() const {
    switch (kind) {
        case Kind::Cyclic: return "C" + std::to_string(n);
        case Kind::Dihedral: return "D" + std::to_string(n);
        case Kind::Alt4: return "A4";
        case Kind::Sym4: return "S4";
        case Kind::Alt5: return "A5";
        case Kind::ElemAbelian3sq: return "C3xC3";
        case Kind::Psl2: return "PSL(2," + std::to_string(n) + ")";
        case Kind::DirectProduct: {
            std::string s;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) s += " x ";
                s += factors[i].str();
            }
            return s;
        }
        case Kind::GeneratedSubgroup:
            return "subgroup of " + factors[0].str();
    }
    return "?";
}

namespace {

std::vector<u64> divisors_of(u64 n) { return factorize(n).divisors(); }

void sort_unique(std::vector<u64>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<u64> element_orders(const GroupSpec& spec) {
    switch (spec.kind) {
        case GroupSpec::Kind::Cyclic: return divisors_of(spec.n);
        case GroupSpec::Kind::Dihedral: {
            std::vector<u64> v = divisors_of(spec.n);
            v.push_back(2);
            sort_unique(v);
            return v;
        }
        case GroupSpec::Kind::Alt4: return {1, 2, 3};
        case GroupSpec::Kind::Sym4: return {1, 2, 3, 4};
        case GroupSpec::Kind::Alt5: return {1, 2, 3, 5};
        case GroupSpec::Kind::ElemAbelian3sq: return {1, 3};
        case GroupSpec::Kind::Psl2: {
            const OrderSpectrum sp(spec.n);
            std::vector<u64> v;
            for (u64 m : sp.maximal_orders) {
                auto d = divisors_of(m);
                v.insert(v.end(), d.begin(), d.end());
            }
            sort_unique(v);
            return v;
        }
        case GroupSpec::Kind::DirectProduct: {
            std::vector<u64> acc{1};
            for (const auto& f : spec.factors) {
                const std::vector<u64> fo = element_orders(f);
                std::vector<u64> next;
                next.reserve(acc.size() * fo.size());
                for (u64 a : acc)
                    for (u64 o : fo) next.push_back(lcm_u64(a, o));
                sort_unique(next);
                if (next.size() > 5'000'000)
                    throw ResourceError("element_orders: direct product spectrum too large");
                acc = std::move(next);
            }
            return acc;
        }
        case GroupSpec::Kind::GeneratedSubgroup:
            throw std::invalid_argument("element_orders: unsupported for GeneratedSubgroup; realize first");
    }
    return {};
}

namespace {

/// Exact orders of `spec` dividing n, without materialising the full spectrum.
std::vector<u64> orders_dividing(const GroupSpec& spec, u64 n) {
    switch (spec.kind) {
        case GroupSpec::Kind::DirectProduct: {
            std::vector<u64> acc{1};
            for (const auto& f : spec.factors) {
                const std::vector<u64> fo = orders_dividing(f, n);
                std::vector<u64> next;
                for (u64 a : acc)
                    for (u64 o : fo) {
                        const u64 l = lcm_u64(a, o);
                        if (n % l == 0) next.push_back(l);
                    }
                sort_unique(next);
                acc = std::move(next);
            }
            return acc;
        }
        case GroupSpec::Kind::Psl2: {
            const OrderSpectrum sp(spec.n);
            std::vector<u64> v;
            for (u64 d : divisors_of(n))
                if (sp.divides_some_maximal(d)) v.push_back(d);
            sort_unique(v);
            return v;
        }
        default: {
            std::vector<u64> v;
            for (u64 o : element_orders(spec))
                if (n % o == 0) v.push_back(o);
            return v;
        }
    }
}

}  // namespace

bool has_element_of_order(const GroupSpec& spec, u64 n) {
    if (n == 0) return false;
    const std::vector<u64> v = orders_dividing(spec, n);
    return std::find(v.begin(), v.end(), n) != v.end();
}

bool has_element_of_order_divisible_by(const GroupSpec& spec, u64 q) {
    if (q == 1) return true;
    switch (spec.kind) {
        case GroupSpec::Kind::DirectProduct: {
            // DP over achievable gcd(order, q) profiles.
            std::vector<u64> acc{1};
            for (const auto& f : spec.factors) {
                std::vector<u64> contrib;
                for (u64 d : divisors_of(q)) {
                    // d achievable as gcd contribution iff some factor order is divisible by d.
                    if (has_element_of_order_divisible_by(f, d)) contrib.push_back(d);
                }
                std::vector<u64> next;
                for (u64 a : acc)
                    for (u64 c : contrib) next.push_back(std::gcd(lcm_u64(a, c), q));
                sort_unique(next);
                acc = std::move(next);
            }
            return std::find(acc.begin(), acc.end(), q) != acc.end();
        }
        case GroupSpec::Kind::Psl2: {
            const OrderSpectrum sp(spec.n);
            for (u64 m : sp.maximal_orders)
                if (m % q == 0) return true;
            return false;
        }
        default: {
            for (u64 o : element_orders(spec))
                if (o % q == 0) return true;
            return false;
        }
    }
}

bool has_nontrivial_element_of_order_dividing(const GroupSpec& spec, u64 m) {
    if (m <= 1) return false;
    switch (spec.kind) {
        case GroupSpec::Kind::Psl2: {
            const OrderSpectrum sp(spec.n);
            for (u64 mx : sp.maximal_orders)
                if (std::gcd(mx, m) > 1) return true;
            return false;
        }
        case GroupSpec::Kind::DirectProduct: {
            for (const auto& f : spec.factors)
                if (has_nontrivial_element_of_order_dividing(f, m)) return true;
            return false;
        }
        default: {
            for (u64 o : element_orders(spec))
                if (o > 1 && m % o == 0) return true;
            return false;
        }
    }
}

bool macbeath_generated(u64 p, const Triple& tr) {
    if (p < 5 || !is_prime(p))
        throw std::invalid_argument("macbeath_generated: p must be a prime >= 5");
    if (!is_hyperbolic(tr) || is_exceptional(tr))
        throw std::domain_error("macbeath_generated: criterion inapplicable to " + tr.str());
    const OrderSpectrum sp(p);
    for (i64 m : l2_set(tr).members) {
        const u64 um = static_cast<u64>(m);
        if (um == p) continue;
        if (sp.maximal_orders[1] % um == 0 || sp.maximal_orders[2] % um == 0) continue;
        return false;
    }
    return true;
}

ProjMat proj_canon(ProjMat m, u64 p) {
    for (u64 v : {m.a, m.b, m.c, m.d}) {
        if (v == 0) continue;
        if (v > (p - 1) / 2) return ProjMat{(p - m.a) % p, (p - m.b) % p, (p - m.c) % p,
                                            (p - m.d) % p};
        return m;
    }
    return m;  // zero matrix; unreachable for group elements
}

ProjMat proj_mult(const ProjMat& x, const ProjMat& y, u64 p) {
    return proj_canon(ProjMat{(x.a * y.a + x.b * y.c) % p, (x.a * y.b + x.b * y.d) % p,
                              (x.c * y.a + x.d * y.c) % p, (x.c * y.b + x.d * y.d) % p},
                      p);
}

std::vector<u32> RealizedGroup::elements_of_order(u64 n) const {
    std::vector<u32> v;
    for (u64 i = 0; i < size(); ++i)
        if (order_of(static_cast<u32>(i)) == n) v.push_back(static_cast<u32>(i));
    return v;
}

std::vector<u32> RealizedGroup::elements_of_order_dividing(u64 n) const {
    std::vector<u32> v;
    for (u64 i = 0; i < size(); ++i)
        if (n % order_of(static_cast<u32>(i)) == 0) v.push_back(static_cast<u32>(i));
    return v;
}

std::vector<u64> RealizedGroup::order_values() const {
    std::vector<u64> v;
    v.reserve(size());
    for (u64 i = 0; i < size(); ++i) v.push_back(order_of(static_cast<u32>(i)));
    sort_unique(v);
    return v;
}

namespace {

// Breadth-first product saturation from the identity. Words in the generators
// form the generated subgroup (inverses are generator powers in a finite group).
// early_exit_half: a subgroup larger than |G|/2 is |G| by Lagrange.
std::vector<u32> closure_impl(const RealizedGroup& g, const std::vector<u32>& gens,
                              bool early_exit_half, bool* whole_group) {
    const u64 n = g.size();
    std::vector<unsigned char> seen(n, 0);
    std::vector<u32> queue{g.identity()};
    seen[g.identity()] = 1;
    u64 count = 1;
    if (whole_group) *whole_group = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const u32 w = queue[head];
        for (u32 x : gens) {
            const u32 wx = g.mult(w, x);
            if (!seen[wx]) {
                seen[wx] = 1;
                queue.push_back(wx);
                if (++count * 2 > n) {
                    if (whole_group) *whole_group = true;
                    if (early_exit_half) return queue;
                }
            }
        }
    }
    if (whole_group) *whole_group = (count == n);
    return queue;
}

}  // namespace

std::vector<u32> RealizedGroup::closure(const std::vector<u32>& gens) const {
    std::vector<u32> c = closure_impl(*this, gens, /*early_exit_half=*/false, nullptr);
    std::sort(c.begin(), c.end());
    return c;
}

bool RealizedGroup::generates(const std::vector<u32>& gens) const {
    bool whole = false;
    closure_impl(*this, gens, /*early_exit_half=*/true, &whole);
    return whole;
}

namespace {

class Psl2Group final : public RealizedGroup {
public:
    explicit Psl2Group(u64 p) : p_(p) {
        // Canonical representatives of SL(2,p)/{+-1}, sorted lexicographically.
        const u64 expected = p * (p * p - 1) / 2;
        keys_.reserve(expected);
        for (u64 a = 0; a < p; ++a) {
            if (a != 0) {
                const u64 ainv = powmod(a, p - 2, p);
                for (u64 b = 0; b < p; ++b)
                    for (u64 c = 0; c < p; ++c) {
                        const u64 d = ((1 + b * c) % p) * ainv % p;
                        push_if_canonical(ProjMat{a, b, c, d});
                    }
            } else {
                for (u64 b = 1; b < p; ++b) {
                    const u64 c = (p - powmod(b, p - 2, p)) % p;  // bc = -1
                    for (u64 d = 0; d < p; ++d) push_if_canonical(ProjMat{0, b, c, d});
                }
            }
        }
        std::sort(keys_.begin(), keys_.end());
        assert(keys_.size() == expected);
        identity_ = index_of_mat(ProjMat{1, 0, 0, 1});
        compute_orders();
    }

    u64 size() const override { return keys_.size(); }
    u32 identity() const override { return identity_; }

    u32 mult(u32 x, u32 y) const override {
        return index_of_mat(proj_mult(decode(keys_[x]), decode(keys_[y]), p_));
    }

    u64 order_of(u32 x) const override { return orders_[x]; }

    ElementDesc describe(u32 x) const override {
        const ProjMat m = decode(keys_[x]);
        return ElementDesc{ElementDesc::Kind::Matrix,
                           {static_cast<i64>(m.a), static_cast<i64>(m.b), static_cast<i64>(m.c),
                            static_cast<i64>(m.d)},
                           {}};
    }

    std::optional<u32> index_of(const ElementDesc& d) const override {
        if (d.kind != ElementDesc::Kind::Matrix || d.data.size() != 4) return std::nullopt;
        for (i64 v : d.data)
            if (v < 0 || v >= static_cast<i64>(p_)) return std::nullopt;
        const ProjMat m = proj_canon(ProjMat{static_cast<u64>(d.data[0]), static_cast<u64>(d.data[1]),
                                             static_cast<u64>(d.data[2]), static_cast<u64>(d.data[3])},
                                     p_);
        if ((m.a * m.d + p_ * p_ - m.b * m.c) % p_ != 1) return std::nullopt;
        const u64 k = encode(m);
        const auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
        if (it == keys_.end() || *it != k) return std::nullopt;
        return static_cast<u32>(it - keys_.begin());
    }

    GroupSpec spec() const override { return GroupSpec::psl2(p_); }

private:
    u64 encode(const ProjMat& m) const { return ((m.a * p_ + m.b) * p_ + m.c) * p_ + m.d; }
    ProjMat decode(u64 k) const {
        const u64 d = k % p_;
        k /= p_;
        const u64 c = k % p_;
        k /= p_;
        const u64 b = k % p_;
        return ProjMat{k / p_, b, c, d};
    }
    void push_if_canonical(const ProjMat& m) {
        if (proj_canon(m, p_) == m) keys_.push_back(encode(m));
    }
    u32 index_of_mat(const ProjMat& m) const {
        const auto it = std::lower_bound(keys_.begin(), keys_.end(), encode(m));
        assert(it != keys_.end());
        return static_cast<u32>(it - keys_.begin());
    }

    // Walk each cyclic subgroup once: the chain g, g^2, ... fixes the order of
    // every power via |g^k| = |g| / gcd(|g|, k).
    void compute_orders() {
        orders_.assign(keys_.size(), 0);
        orders_[identity_] = 1;
        std::vector<u32> chain;
        for (u32 i = 0; i < keys_.size(); ++i) {
            if (orders_[i] != 0) continue;
            chain.clear();
            u32 x = i;
            while (x != identity_) {
                chain.push_back(x);
                x = mult(x, i);
            }
            const u64 ord = chain.size() + 1;
            for (std::size_t k = 0; k < chain.size(); ++k)
                if (orders_[chain[k]] == 0) orders_[chain[k]] = ord / std::gcd(ord, k + 1);
        }
    }

    u64 p_;
    std::vector<u64> keys_;
    std::vector<u64> orders_;
    u32 identity_ = 0;
};

}  // namespace

std::shared_ptr<const RealizedGroup> realize_psl2(u64 p, u64 bound) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("realize_psl2: p must be a prime >= 5");
    const auto order = GroupSpec::psl2(p).order();
    if (!order || *order > bound)
        throw ResourceError("realize_psl2: |PSL(2," + std::to_string(p) + ")| exceeds bound " +
                            std::to_string(bound));
    return std::make_shared<Psl2Group>(p);
}

std::optional<EpimorphismWitness> find_smooth_generating_pair(const RealizedGroup& g,
                                                              const Triple& tr) {
    // Single pass over the order table: candidate lists plus t-order presence.
    std::vector<u32> xs, ys;
    bool has_t = false;
    for (u64 i = 0; i < g.size(); ++i) {
        const u64 o = g.order_of(static_cast<u32>(i));
        if (o == static_cast<u64>(tr.r)) xs.push_back(static_cast<u32>(i));
        if (o == static_cast<u64>(tr.s)) ys.push_back(static_cast<u32>(i));
        if (o == static_cast<u64>(tr.t)) has_t = true;
    }
    if (xs.empty() || ys.empty() || !has_t) return std::nullopt;

    for (u32 x : xs)
        for (u32 y : ys) {
            const u32 xy = g.mult(x, y);
            if (g.order_of(xy) != static_cast<u64>(tr.t)) continue;
            if (!g.generates({x, y})) continue;
            return EpimorphismWitness{g.spec(),        g.describe(x),
                                      g.describe(y),   static_cast<u64>(tr.r),
                                      static_cast<u64>(tr.s), static_cast<u64>(tr.t),
                                      true};
        }
    return std::nullopt;
}

}  // namespace tg
