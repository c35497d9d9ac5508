#include "tg/quotient_oracle.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace tg {

namespace {

class CyclicGroup final : public RealizedGroup {
public:
    explicit CyclicGroup(u64 n) : n_(n) {}
    u64 size() const override { return n_; }
    u32 mult(u32 x, u32 y) const override { return static_cast<u32>((x + static_cast<u64>(y)) % n_); }
    u64 order_of(u32 x) const override { return n_ / std::gcd(n_, static_cast<u64>(x)); }
    u32 identity() const override { return 0; }
    ElementDesc describe(u32 x) const override {
        return ElementDesc{ElementDesc::Kind::Residue, {static_cast<i64>(x)}, {}};
    }
    std::optional<u32> index_of(const ElementDesc& d) const override {
        if (d.kind != ElementDesc::Kind::Residue || d.data.size() != 1) return std::nullopt;
        if (d.data[0] < 0 || d.data[0] >= static_cast<i64>(n_)) return std::nullopt;
        return static_cast<u32>(d.data[0]);
    }
    GroupSpec spec() const override { return GroupSpec::cyclic(n_); }

private:
    u64 n_;
};

class DihedralGroup final : public RealizedGroup {
public:
    explicit DihedralGroup(u64 m) : m_(m) {}
    u64 size() const override { return 2 * m_; }
    // (r,f): x -> r + (-1)^f x.  Index = r + m*f.
    u32 mult(u32 x, u32 y) const override {
        const u64 r1 = x % m_, f1 = x / m_;
        const u64 r2 = y % m_, f2 = y / m_;
        const u64 r = f1 ? (r1 + m_ - r2) % m_ : (r1 + r2) % m_;
        return static_cast<u32>(r + m_ * (f1 ^ f2));
    }
    u64 order_of(u32 x) const override {
        if (x / m_) return 2;
        const u64 r = x % m_;
        return m_ / std::gcd(m_, r);
    }
    u32 identity() const override { return 0; }
    ElementDesc describe(u32 x) const override {
        return ElementDesc{ElementDesc::Kind::Dihedral,
                           {static_cast<i64>(x % m_), static_cast<i64>(x / m_)},
                           {}};
    }
    std::optional<u32> index_of(const ElementDesc& d) const override {
        if (d.kind != ElementDesc::Kind::Dihedral || d.data.size() != 2) return std::nullopt;
        if (d.data[0] < 0 || d.data[0] >= static_cast<i64>(m_) || d.data[1] < 0 || d.data[1] > 1)
            return std::nullopt;
        return static_cast<u32>(d.data[0] + static_cast<i64>(m_) * d.data[1]);
    }
    GroupSpec spec() const override { return GroupSpec::dihedral(m_); }

private:
    u64 m_;
};

class ElemAbelian3sqGroup final : public RealizedGroup {
public:
    u64 size() const override { return 9; }
    u32 mult(u32 x, u32 y) const override {
        return ((x / 3 + y / 3) % 3) * 3 + (x % 3 + y % 3) % 3;
    }
    u64 order_of(u32 x) const override { return x == 0 ? 1 : 3; }
    u32 identity() const override { return 0; }
    ElementDesc describe(u32 x) const override {
        return ElementDesc{ElementDesc::Kind::Vec3, {static_cast<i64>(x / 3), static_cast<i64>(x % 3)}, {}};
    }
    std::optional<u32> index_of(const ElementDesc& d) const override {
        if (d.kind != ElementDesc::Kind::Vec3 || d.data.size() != 2) return std::nullopt;
        if (d.data[0] < 0 || d.data[0] > 2 || d.data[1] < 0 || d.data[1] > 2) return std::nullopt;
        return static_cast<u32>(d.data[0] * 3 + d.data[1]);
    }
    GroupSpec spec() const override { return GroupSpec::elem_abelian_3sq(); }
};

class PermGroup final : public RealizedGroup {
public:
    PermGroup(int points, bool even_only, GroupSpec spec) : spec_(std::move(spec)) {
        std::vector<int> p(points);
        for (int i = 0; i < points; ++i) p[i] = i;
        do {
            if (!even_only || parity(p) == 0) elems_.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        std::sort(elems_.begin(), elems_.end());
    }
    u64 size() const override { return elems_.size(); }
    u32 mult(u32 x, u32 y) const override {
        // Composition: apply y first, then x.
        const auto& px = elems_[x];
        const auto& py = elems_[y];
        std::vector<int> r(px.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = px[py[i]];
        return index_of_perm(r);
    }
    u64 order_of(u32 x) const override {
        const auto& p = elems_[x];
        std::vector<char> seen(p.size(), 0);
        u64 ord = 1;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (seen[i]) continue;
            u64 len = 0;
            for (std::size_t j = i; !seen[j]; j = p[j]) {
                seen[j] = 1;
                ++len;
            }
            ord = lcm_u64(ord, len);
        }
        return ord;
    }
    u32 identity() const override { return 0; }  // identity is lexicographically first
    ElementDesc describe(u32 x) const override {
        ElementDesc d{ElementDesc::Kind::Perm, {}, {}};
        for (int v : elems_[x]) d.data.push_back(v);
        return d;
    }
    std::optional<u32> index_of(const ElementDesc& d) const override {
        if (d.kind != ElementDesc::Kind::Perm || d.data.size() != elems_[0].size())
            return std::nullopt;
        std::vector<int> p(d.data.begin(), d.data.end());
        const auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
        if (it == elems_.end() || *it != p) return std::nullopt;
        return static_cast<u32>(it - elems_.begin());
    }
    GroupSpec spec() const override { return spec_; }

private:
    static int parity(const std::vector<int>& p) {
        int sw = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j]) ++sw;
        return sw & 1;
    }
    u32 index_of_perm(const std::vector<int>& p) const {
        const auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
        assert(it != elems_.end() && *it == p);
        return static_cast<u32>(it - elems_.begin());
    }

    std::vector<std::vector<int>> elems_;
    GroupSpec spec_;
};

class ProductGroup final : public RealizedGroup {
public:
    explicit ProductGroup(std::vector<std::shared_ptr<const RealizedGroup>> factors)
        : factors_(std::move(factors)) {
        size_ = 1;
        for (const auto& f : factors_) size_ = checked_mul(size_, f->size());
    }
    u64 size() const override { return size_; }
    u32 mult(u32 x, u32 y) const override {
        // Mixed-radix componentwise multiplication, last factor fastest.
        u64 out = 0, mul = 1, xx = x, yy = y;
        u64 digits[16];
        std::size_t k = factors_.size();
        for (std::size_t i = k; i-- > 0;) {
            const u64 fs = factors_[i]->size();
            digits[i] = factors_[i]->mult(static_cast<u32>(xx % fs), static_cast<u32>(yy % fs));
            xx /= fs;
            yy /= fs;
        }
        for (std::size_t i = k; i-- > 0;) {
            out += digits[i] * mul;
            mul *= factors_[i]->size();
        }
        return static_cast<u32>(out);
    }
    u64 order_of(u32 x) const override {
        u64 ord = 1, xx = x;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            const u64 fs = factors_[i]->size();
            ord = lcm_u64(ord, factors_[i]->order_of(static_cast<u32>(xx % fs)));
            xx /= fs;
        }
        return ord;
    }
    u32 identity() const override {
        u64 out = 0, mul = 1;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            out += static_cast<u64>(factors_[i]->identity()) * mul;
            mul *= factors_[i]->size();
        }
        return static_cast<u32>(out);
    }
    ElementDesc describe(u32 x) const override {
        ElementDesc d{ElementDesc::Kind::Tuple, {}, {}};
        d.sub.resize(factors_.size());
        u64 xx = x;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            const u64 fs = factors_[i]->size();
            d.sub[i] = factors_[i]->describe(static_cast<u32>(xx % fs));
            xx /= fs;
        }
        return d;
    }
    std::optional<u32> index_of(const ElementDesc& d) const override {
        if (d.kind != ElementDesc::Kind::Tuple || d.sub.size() != factors_.size())
            return std::nullopt;
        u64 out = 0, mul = 1;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            const auto idx = factors_[i]->index_of(d.sub[i]);
            if (!idx) return std::nullopt;
            out += static_cast<u64>(*idx) * mul;
            mul *= factors_[i]->size();
        }
        return static_cast<u32>(out);
    }
    GroupSpec spec() const override {
        std::vector<GroupSpec> fs;
        for (const auto& f : factors_) fs.push_back(f->spec());
        return GroupSpec::direct_product(std::move(fs));
    }

private:
    std::vector<std::shared_ptr<const RealizedGroup>> factors_;
    u64 size_;
};

class SubGroup final : public RealizedGroup {
public:
    SubGroup(std::shared_ptr<const RealizedGroup> parent, const std::vector<u32>& gen_indices)
        : parent_(std::move(parent)), gens_(gen_indices) {
        elems_ = parent_->closure(gen_indices);  // sorted parent indices
    }
    u64 size() const override { return elems_.size(); }
    u32 mult(u32 x, u32 y) const override { return sub_index(parent_->mult(elems_[x], elems_[y])); }
    u64 order_of(u32 x) const override { return parent_->order_of(elems_[x]); }
    u32 identity() const override { return sub_index(parent_->identity()); }
    ElementDesc describe(u32 x) const override { return parent_->describe(elems_[x]); }
    std::optional<u32> index_of(const ElementDesc& d) const override {
        const auto p = parent_->index_of(d);
        if (!p) return std::nullopt;
        const auto it = std::lower_bound(elems_.begin(), elems_.end(), *p);
        if (it == elems_.end() || *it != *p) return std::nullopt;
        return static_cast<u32>(it - elems_.begin());
    }
    GroupSpec spec() const override {
        std::vector<ElementDesc> gd;
        for (u32 g : gens_) gd.push_back(parent_->describe(g));
        return GroupSpec::generated_subgroup(parent_->spec(), std::move(gd));
    }

private:
    u32 sub_index(u32 parent_index) const {
        const auto it = std::lower_bound(elems_.begin(), elems_.end(), parent_index);
        assert(it != elems_.end() && *it == parent_index);
        return static_cast<u32>(it - elems_.begin());
    }

    std::shared_ptr<const RealizedGroup> parent_;
    std::vector<u32> gens_;
    std::vector<u32> elems_;
};

}  // namespace

std::shared_ptr<const RealizedGroup> realize(const GroupSpec& spec, u64 bound) {
    const auto order = spec.order();
    if (order && *order > bound)
        throw ResourceError("realize: |" + spec.str() + "| = " + std::to_string(*order) +
                            " exceeds bound " + std::to_string(bound));
    switch (spec.kind) {
        case GroupSpec::Kind::Cyclic: return std::make_shared<CyclicGroup>(spec.n);
        case GroupSpec::Kind::Dihedral: return std::make_shared<DihedralGroup>(spec.n);
        case GroupSpec::Kind::Alt4: return std::make_shared<PermGroup>(4, true, GroupSpec::alt4());
        case GroupSpec::Kind::Sym4: return std::make_shared<PermGroup>(4, false, GroupSpec::sym4());
        case GroupSpec::Kind::Alt5: return std::make_shared<PermGroup>(5, true, GroupSpec::alt5());
        case GroupSpec::Kind::ElemAbelian3sq: return std::make_shared<ElemAbelian3sqGroup>();
        case GroupSpec::Kind::Psl2: return realize_psl2(spec.n, bound);
        case GroupSpec::Kind::DirectProduct: {
            if (spec.factors.size() > 16)
                throw std::invalid_argument("realize: too many direct factors");
            std::vector<std::shared_ptr<const RealizedGroup>> fs;
            for (const auto& f : spec.factors) fs.push_back(realize(f, bound));
            return std::make_shared<ProductGroup>(std::move(fs));
        }
        case GroupSpec::Kind::GeneratedSubgroup: {
            if (spec.generators.empty())
                throw std::invalid_argument(
                    "realize: GeneratedSubgroup without explicit generators");
            auto parent = realize(spec.factors.at(0), bound);
            std::vector<u32> gi;
            for (const auto& d : spec.generators) {
                const auto idx = parent->index_of(d);
                if (!idx)
                    throw std::invalid_argument("realize: generator is not a parent element");
                gi.push_back(*idx);
            }
            return std::make_shared<SubGroup>(std::move(parent), gi);
        }
    }
    throw std::invalid_argument("realize: unknown spec kind");
}

namespace {

OracleAnswer pair_search(const GroupSpec& spec, const Triple& tr, const OracleConfig& cfg,
                         bool exact_orders) {
    const auto g = realize(spec, cfg.max_group_order);
    std::vector<u32> xs, ys;
    bool t_possible = false;
    for (u64 i = 0; i < g->size(); ++i) {
        const u64 o = g->order_of(static_cast<u32>(i));
        if (exact_orders ? o == static_cast<u64>(tr.r) : static_cast<u64>(tr.r) % o == 0)
            xs.push_back(static_cast<u32>(i));
        if (exact_orders ? o == static_cast<u64>(tr.s) : static_cast<u64>(tr.s) % o == 0)
            ys.push_back(static_cast<u32>(i));
        if (exact_orders ? o == static_cast<u64>(tr.t) : static_cast<u64>(tr.t) % o == 0)
            t_possible = true;
    }
    if (xs.empty() || ys.empty() || !t_possible) return {};

    u64 examined = 0;
    for (u32 x : xs)
        for (u32 y : ys) {
            if (++examined > cfg.search_budget)
                throw ResourceError("oracle: search budget exhausted for " + spec.str());
            const u32 xy = g->mult(x, y);
            const u64 o = g->order_of(xy);
            if (exact_orders ? o != static_cast<u64>(tr.t) : static_cast<u64>(tr.t) % o != 0)
                continue;
            if (!g->generates({x, y})) continue;
            EpimorphismWitness w;
            w.spec = spec;
            w.x = g->describe(x);
            w.y = g->describe(y);
            w.order_x = g->order_of(x);
            w.order_y = g->order_of(y);
            w.order_xy = o;
            w.generating = true;
            return OracleAnswer{true, w};
        }
    return {};
}

}  // namespace

OracleAnswer is_quotient(const GroupSpec& spec, const Triple& tr, const OracleConfig& cfg) {
    return pair_search(spec, tr, cfg, /*exact_orders=*/false);
}

OracleAnswer is_smooth_quotient(const GroupSpec& spec, const Triple& tr, const OracleConfig& cfg) {
    return pair_search(spec, tr, cfg, /*exact_orders=*/true);
}

std::optional<i64> certify_not_quotient_by_order_gap(const GroupSpec& spec, const Triple& tr) {
    if (spec.kind == GroupSpec::Kind::GeneratedSubgroup)
        throw std::invalid_argument("order_gap: unsupported for GeneratedSubgroup");
    if (spec.is_cyclic())
        throw std::invalid_argument("order_gap: cyclic-forcing argument fails for cyclic groups");
    for (i64 m : tr.entries())
        if (!has_nontrivial_element_of_order_dividing(spec, static_cast<u64>(m))) return m;
    return std::nullopt;
}

u64 hom_count(const Triple& tr, const GroupSpec& spec, const OracleConfig& cfg) {
    const auto g = realize(spec, cfg.max_group_order);
    std::vector<u32> xs, ys;
    for (u64 i = 0; i < g->size(); ++i) {
        const u64 o = g->order_of(static_cast<u32>(i));
        if (static_cast<u64>(tr.r) % o == 0) xs.push_back(static_cast<u32>(i));
        if (static_cast<u64>(tr.s) % o == 0) ys.push_back(static_cast<u32>(i));
    }
    u64 count = 0, examined = 0;
    for (u32 x : xs)
        for (u32 y : ys) {
            if (++examined > cfg.search_budget)
                throw ResourceError("hom_count: search budget exhausted for " + spec.str());
            if (static_cast<u64>(tr.t) % g->order_of(g->mult(x, y)) == 0) ++count;
        }
    return count;
}

bool dihedral_quotient_test(const Triple& tr, u64 m) {
    if (m < 3) throw std::invalid_argument("dihedral_quotient_test: m must be >= 3");
    const auto e = tr.entries();
    for (int i = 0; i < 3; ++i) {
        if (e[i] % static_cast<i64>(m) != 0) continue;
        const i64 a = e[(i + 1) % 3], b = e[(i + 2) % 3];
        if (a % 2 == 0 && b % 2 == 0) return true;
    }
    return false;
}

}  // namespace tg
