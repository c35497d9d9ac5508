#pragma once

#include <optional>
#include <vector>

#include "tg/signature.hpp"

namespace tg {

/// The pairwise-coprime decomposition governing PSL(2,p) generation:
/// the finest set of pairwise coprime integers >= 2 whose lcm equals the
/// triple's lcm and in which each entry divides exactly one member.
struct L2Set {
    std::vector<i64> members;  // sorted ascending
    bool operator==(const L2Set&) const = default;
    std::string str() const;
};

L2Set l2_set(const Triple& tr);

/// Maximal prime powers q1, q2 of the common lcm such that q1*q2 divides one
/// member of the joined side's L2-set while q1 and q2 lie in different members
/// (m1 and m2) of the split side's.
struct L2SplitWitness {
    i64 q1, q2;
    i64 m1, m2;      // members of the split side containing q1 resp. q2
    int split_side;  // 1 or 2: which argument of l2_split_witness has them split
};

/// Empty when the two L2-sets coincide. Precondition: equal lcms.
std::optional<L2SplitWitness> l2_split_witness(const Triple& t1, const Triple& t2);

}  // namespace tg
