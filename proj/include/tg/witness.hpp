#pragma once

#include <variant>

#include "tg/quotient_oracle.hpp"

namespace tg {

struct WitnessConfig {
    OracleConfig oracle;
    u64 prime_bound = 0;  // 0: automatic (default_prime_bound of the constraint set)
    bool strongest_certificate = false;
};

/// Two triples equal as multisets.
struct IdenticalCert {
    bool operator==(const IdenticalCert&) const = default;
};

/// A cheap invariant differs; `field` names the first differing one.
struct InvariantMismatchCert {
    std::string field;
    i64 value1, value2;
    bool operator==(const InvariantMismatchCert&) const = default;
};

/// D_m is a quotient of exactly one side.
struct DihedralWitnessCert {
    u64 m;
    int side;  // 1 or 2
    bool operator==(const DihedralWitnessCert&) const = default;
};

struct NonQuotientEvidence {
    enum class Kind { OrderGap, OracleFalse };
    Kind kind = Kind::OrderGap;
    i64 entry = 0;  // OrderGap: entry with no nontrivial dividing element order
    bool operator==(const NonQuotientEvidence&) const = default;
};

/// PSL(2,p) is a smooth quotient of one side and provably not a quotient of the
/// other (order gap or exhaustive oracle).
struct PslQuotientWitnessCert {
    u64 p;
    int quotient_side;
    i64 q1, q2;  // split prime powers: q1*q2 divides one member of the other side's L2-set
    i64 m1, m2;  // members of the quotient side's L2-set containing q1 resp. q2
    std::vector<ResidueConstraint> constraints;
    std::optional<EpimorphismWitness> witness;
    NonQuotientEvidence non_quotient;
    bool operator==(const PslQuotientWitnessCert&) const = default;
};

/// The entry q of one side is coprime to 6 and to the other side stripped of
/// q's primes; G is a quotient of the stripped triple with no nontrivial
/// element of order dividing q, forcing any image of the q side to be cyclic.
struct SuppressionWitnessCert {
    i64 q;
    int q_side;                  // side containing entry q (the non-quotient side)
    std::array<i64, 3> reduced;  // other side's entries stripped of q's primes, positional
    GroupSpec group;
    std::vector<ResidueConstraint> constraints;  // empty for table groups
    bool extended_scope = false;                 // composite q
    bool operator==(const SuppressionWitnessCert&) const = default;
};

/// H (PSL(2,p), or a subgroup of PSL(2,p) x G) is smoothly generated for one
/// side while no element order is divisible by blocked = q1*q2, which divides
/// an entry of the other side. Separates the sets of smoothly generated
/// quotients; the same-smooth-quotients lemma lifts this to distinct
/// finite-quotient sets (recorded as the certificate's basis).
struct SmoothGenerationWitnessCert {
    GroupSpec group;  // H
    int smooth_side;
    u64 blocked;                  // q1*q2
    i64 q1, q2;
    std::array<i64, 3> split1;    // (r1,s1,t1) aligned with the smooth side's entries
    std::array<i64, 3> split2;    // (r2,s2,t2); all 1 when H = Psl2(p) alone
    std::vector<u64> primes;      // p, then the second factor's prime when PSL
    std::vector<ResidueConstraint> constraints;
    bool operator==(const SmoothGenerationWitnessCert&) const = default;
};

struct UnresolvedCert {
    std::vector<std::string> stages_attempted;
    bool operator==(const UnresolvedCert&) const = default;
};

using Certificate =
    std::variant<IdenticalCert, InvariantMismatchCert, DihedralWitnessCert,
                 PslQuotientWitnessCert, SuppressionWitnessCert, SmoothGenerationWitnessCert,
                 UnresolvedCert>;

/// Pipeline stage that produced the certificate: 0 identical, 1..5 per stage,
/// -1 for Unresolved.
int certificate_stage(const Certificate& c);
std::string certificate_kind(const Certificate& c);

/// Staged distinguishing pipeline; stages applied cheapest-first, first
/// success returned (strongest-certificate mode keeps searching for a
/// PslQuotient/Suppression upgrade). Precondition: both triples hyperbolic.
Certificate distinguish(const Triple& t1, const Triple& t2, const WitnessConfig& cfg);

/// Independent re-derivation of every claim in the certificate. Returns false
/// with a reason on any mismatch.
bool verify(const Certificate& c, const Triple& t1, const Triple& t2, const WitnessConfig& cfg,
            std::string* reason = nullptr);

/// Individual stages, exposed for census bookkeeping. Each returns a
/// certificate when the stage succeeds on this pair.
std::optional<Certificate> attempt_invariant_stage(const Triple& t1, const Triple& t2);
std::optional<Certificate> attempt_dihedral_stage(const Triple& t1, const Triple& t2);
std::optional<Certificate> attempt_l2_stage(const Triple& t1, const Triple& t2,
                                            const WitnessConfig& cfg);
std::optional<Certificate> attempt_suppression_stage(const Triple& t1, const Triple& t2,
                                                     const WitnessConfig& cfg);
std::optional<Certificate> attempt_product_stage(const Triple& t1, const Triple& t2,
                                                 const WitnessConfig& cfg);

/// Coprime-entry test: some entry of either triple is coprime to the other
/// two entries of its triple. Such pairs always split at the L2 stage.
bool coprime_entry_test(const Triple& t1, const Triple& t2);

}  // namespace tg
