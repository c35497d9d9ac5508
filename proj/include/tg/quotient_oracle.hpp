#pragma once

#include "tg/psl2.hpp"

namespace tg {

struct OracleConfig {
    u64 max_group_order = 10'000;          // realization cap for pair searches
    u64 search_budget = 1'000'000'000'000; // element-pair cap
};

/// Realize any GroupSpec as an explicit group (matrices for Psl2, permutations
/// or residue tuples otherwise). Throws ResourceError when the order exceeds
/// the bound, std::invalid_argument for unrealizable specs (e.g. a
/// GeneratedSubgroup without generators).
std::shared_ptr<const RealizedGroup> realize(const GroupSpec& spec, u64 bound);

struct OracleAnswer {
    bool yes = false;
    std::optional<EpimorphismWitness> witness;
};

/// True iff some pair (x,y) has |x| dividing r, |y| dividing s, |xy| dividing t
/// and <x,y> the whole group. Deterministic witness (first in canonical order).
OracleAnswer is_quotient(const GroupSpec& spec, const Triple& tr, const OracleConfig& cfg);

/// As is_quotient but with exact orders |x|=r, |y|=s, |xy|=t.
OracleAnswer is_smooth_quotient(const GroupSpec& spec, const Triple& tr, const OracleConfig& cfg);

/// Entry m of tr such that spec has no nontrivial element of order dividing m;
/// any image of the triangle group in spec's isomorphism type is then cyclic,
/// hence proper. Purely order-arithmetic. Precondition: spec not cyclic, not
/// GeneratedSubgroup.
std::optional<i64> certify_not_quotient_by_order_gap(const GroupSpec& spec, const Triple& tr);

/// Exact number of homomorphisms: pairs (x,y) with |x| | r, |y| | s, |xy| | t.
u64 hom_count(const Triple& tr, const GroupSpec& spec, const OracleConfig& cfg);

/// Closed form for D_m being a quotient of the (r,s,t) triangle group: some
/// assignment of the entries has one divisible by m and the other two even.
bool dihedral_quotient_test(const Triple& tr, u64 m);

}  // namespace tg
