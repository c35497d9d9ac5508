#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "tg/l2set.hpp"
#include "tg/signature.hpp"

namespace tg {

/// Element orders of PSL(2,p), p an odd prime >= 5: exactly the divisors of
/// p, (p-1)/2 and (p+1)/2, which are pairwise coprime.
struct OrderSpectrum {
    u64 p;
    std::array<u64, 3> maximal_orders;  // {p, (p-1)/2, (p+1)/2}

    explicit OrderSpectrum(u64 p);
    bool divides_some_maximal(u64 n) const {
        for (u64 m : maximal_orders)
            if (n != 0 && m % n == 0) return true;
        return false;
    }
};

/// Concrete element of a realized group, serialisable in certificates.
struct ElementDesc {
    enum class Kind { Matrix, Perm, Residue, Dihedral, Vec3, Tuple };
    Kind kind = Kind::Residue;
    std::vector<i64> data;         // Matrix: a,b,c,d; Perm: images; Residue: k;
                                   // Dihedral: rot,flip; Vec3: a,b
    std::vector<ElementDesc> sub;  // Tuple components

    bool operator==(const ElementDesc&) const = default;
};

/// Symbolic description of a finite group with realizable element-order arithmetic.
struct GroupSpec {
    enum class Kind {
        Cyclic,
        Dihedral,
        Alt4,
        Sym4,
        Alt5,
        ElemAbelian3sq,
        Psl2,
        DirectProduct,
        GeneratedSubgroup
    };

    Kind kind = Kind::Cyclic;
    u64 n = 1;                           // Cyclic order / Dihedral m / Psl2 p
    std::vector<GroupSpec> factors;      // DirectProduct factors; subgroup parent at [0]
    std::vector<ElementDesc> generators; // GeneratedSubgroup; empty = unspecified subgroup

    static GroupSpec cyclic(u64 n);
    static GroupSpec dihedral(u64 m);
    static GroupSpec alt4() { return GroupSpec{Kind::Alt4, 0, {}, {}}; }
    static GroupSpec sym4() { return GroupSpec{Kind::Sym4, 0, {}, {}}; }
    static GroupSpec alt5() { return GroupSpec{Kind::Alt5, 0, {}, {}}; }
    static GroupSpec elem_abelian_3sq() { return GroupSpec{Kind::ElemAbelian3sq, 0, {}, {}}; }
    static GroupSpec psl2(u64 p);
    static GroupSpec direct_product(std::vector<GroupSpec> factors);
    static GroupSpec generated_subgroup(GroupSpec parent, std::vector<ElementDesc> gens);

    /// Symbolic order; nullopt for GeneratedSubgroup (known only after realization).
    std::optional<u64> order() const;
    bool is_cyclic() const { return kind == Kind::Cyclic; }
    std::string str() const;
    bool operator==(const GroupSpec&) const = default;
};

/// Exact set of element orders, sorted ascending. GeneratedSubgroup is
/// unsupported (realize first).
std::vector<u64> element_orders(const GroupSpec& spec);

bool has_element_of_order(const GroupSpec& spec, u64 n);

/// True iff some element order is divisible by q (q >= 2).
bool has_element_of_order_divisible_by(const GroupSpec& spec, u64 q);

/// True iff some element order o with 1 < o divides m.
bool has_nontrivial_element_of_order_dividing(const GroupSpec& spec, u64 m);

/// Macbeath's criterion, prime case: PSL(2,p) is smoothly (r,s,t)-generated iff
/// every member of the L2-set equals p or divides (p-1)/2 or (p+1)/2.
/// Precondition: p >= 5 prime, tr hyperbolic and not exceptional.
bool macbeath_generated(u64 p, const Triple& tr);

/// 2x2 projective matrix over F_p; the canonical representative of {M, -M}
/// has its first nonzero entry in 1..(p-1)/2.
struct ProjMat {
    u64 a, b, c, d;
    bool operator==(const ProjMat&) const = default;
};

ProjMat proj_canon(ProjMat m, u64 p);
ProjMat proj_mult(const ProjMat& x, const ProjMat& y, u64 p);

/// A realized finite group: elements indexed 0..size()-1, identity at 0,
/// read-only after construction and shareable across threads.
class RealizedGroup {
public:
    virtual ~RealizedGroup() = default;
    virtual u64 size() const = 0;
    virtual u32 mult(u32 x, u32 y) const = 0;
    virtual u64 order_of(u32 x) const = 0;
    virtual ElementDesc describe(u32 x) const = 0;
    virtual std::optional<u32> index_of(const ElementDesc& d) const = 0;
    virtual GroupSpec spec() const = 0;
    virtual u32 identity() const = 0;
    std::vector<u32> elements_of_order(u64 n) const;
    std::vector<u32> elements_of_order_dividing(u64 n) const;
    /// Distinct element orders, sorted.
    std::vector<u64> order_values() const;
    /// True iff the subgroup generated by the given elements is the whole group.
    bool generates(const std::vector<u32>& gens) const;
    /// Closure of the given elements under multiplication, ascending indices.
    std::vector<u32> closure(const std::vector<u32>& gens) const;
};

/// Smooth generating pair witness: x, y with z = (xy)^-1, x*y*z = 1.
struct EpimorphismWitness {
    GroupSpec spec;
    ElementDesc x, y;
    u64 order_x = 0, order_y = 0, order_xy = 0;
    bool generating = false;
    bool operator==(const EpimorphismWitness&) const = default;
};

/// Explicit matrix realization of PSL(2,p). Throws ResourceError when
/// p(p^2-1)/2 exceeds the bound.
std::shared_ptr<const RealizedGroup> realize_psl2(u64 p, u64 bound = 10'000'000);

/// First (x,y) in canonical enumeration order with |x|=r, |y|=s, |xy|=t and
/// <x,y> the whole group; empty if none exists.
std::optional<EpimorphismWitness> find_smooth_generating_pair(const RealizedGroup& g,
                                                              const Triple& tr);

}  // namespace tg
