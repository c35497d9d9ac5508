#include "tg/witness.hpp"

#include <algorithm>
#include <stdexcept>

namespace tg {

int certificate_stage(const Certificate& c) {
    struct V {
        int operator()(const IdenticalCert&) const { return 0; }
        int operator()(const InvariantMismatchCert&) const { return 1; }
        int operator()(const DihedralWitnessCert&) const { return 2; }
        int operator()(const PslQuotientWitnessCert&) const { return 3; }
        int operator()(const SuppressionWitnessCert&) const { return 4; }
        int operator()(const SmoothGenerationWitnessCert& s) const {
            // Stage 3 emits the fallback with a trivial second split.
            return s.split2 == std::array<i64, 3>{1, 1, 1} ? 3 : 5;
        }
        int operator()(const UnresolvedCert&) const { return -1; }
    };
    return std::visit(V{}, c);
}

std::string certificate_kind(const Certificate& c) {
    struct V {
        std::string operator()(const IdenticalCert&) const { return "identical"; }
        std::string operator()(const InvariantMismatchCert&) const { return "invariant-mismatch"; }
        std::string operator()(const DihedralWitnessCert&) const { return "dihedral"; }
        std::string operator()(const PslQuotientWitnessCert&) const { return "psl2-quotient"; }
        std::string operator()(const SuppressionWitnessCert&) const { return "suppression"; }
        std::string operator()(const SmoothGenerationWitnessCert&) const {
            return "smooth-generation";
        }
        std::string operator()(const UnresolvedCert&) const { return "unresolved"; }
    };
    return std::visit(V{}, c);
}

bool coprime_entry_test(const Triple& t1, const Triple& t2) {
    auto has_coprime_entry = [](const Triple& t) {
        const auto e = t.entries();
        for (int i = 0; i < 3; ++i)
            if (std::gcd(e[i], e[(i + 1) % 3]) == 1 && std::gcd(e[i], e[(i + 2) % 3]) == 1)
                return true;
        return false;
    };
    return has_coprime_entry(t1) || has_coprime_entry(t2);
}

// ---------------------------------------------------------------------------
// Stage 1: cheap invariants

std::optional<Certificate> attempt_invariant_stage(const Triple& t1, const Triple& t2) {
    const InvariantProfile a = invariant_profile(t1);
    const InvariantProfile b = invariant_profile(t2);
    // Ordered so the most telling mismatch (the product) is named first.
    if (a.product != b.product)
        return Certificate{InvariantMismatchCert{"product", a.product, b.product}};
    if (a.lcm3 != b.lcm3) return Certificate{InvariantMismatchCert{"lcm3", a.lcm3, b.lcm3}};
    if (a.pairwise_sum != b.pairwise_sum)
        return Certificate{InvariantMismatchCert{"pairwise_sum", a.pairwise_sum, b.pairwise_sum}};
    if (a.gcd3 != b.gcd3) return Certificate{InvariantMismatchCert{"gcd3", a.gcd3, b.gcd3}};
    if (a.ab_e != b.ab_e) return Certificate{InvariantMismatchCert{"ab_e", a.ab_e, b.ab_e}};
    if (!(a.euler_sum == b.euler_sum))
        return Certificate{InvariantMismatchCert{"euler_sum", a.euler_sum.num, b.euler_sum.num}};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stage 2: parity / dihedral filter

std::optional<Certificate> attempt_dihedral_stage(const Triple& t1, const Triple& t2) {
    // m per the parity proposition: max(t,w) when both triples are all even,
    // otherwise the largest odd entry among the six. (Differing even counts
    // cannot survive stage 1: the parities of product, ab_e and gcd3 pin them.)
    const int ec1 = invariant_profile(t1).even_count;
    const int ec2 = invariant_profile(t2).even_count;
    u64 m = 0;
    if (ec1 == 3 && ec2 == 3) {
        m = static_cast<u64>(std::max(t1.t, t2.t));
    } else {
        for (i64 v : t1.entries())
            if (v % 2 == 1) m = std::max<u64>(m, v);
        for (i64 v : t2.entries())
            if (v % 2 == 1) m = std::max<u64>(m, v);
    }
    if (m < 3) return std::nullopt;
    const bool d1 = dihedral_quotient_test(t1, m), d2 = dihedral_quotient_test(t2, m);
    if (d1 == d2) return std::nullopt;
    return Certificate{DihedralWitnessCert{m, d1 ? 1 : 2}};
}

// ---------------------------------------------------------------------------
// Stage 3: L2-set comparison

namespace {

u64 lcm3_of(const Triple& t) { return lcm_u64(lcm_u64(t.r, t.s), t.t); }

u64 prime_bound_for(const WitnessConfig& cfg, const std::vector<ResidueConstraint>& cs) {
    return cfg.prime_bound ? cfg.prime_bound : default_prime_bound(cs);
}

}  // namespace

std::optional<Certificate> attempt_l2_stage(const Triple& t1, const Triple& t2,
                                            const WitnessConfig& cfg) {
    if (!is_hyperbolic(t1) || !is_hyperbolic(t2)) return std::nullopt;
    if (is_exceptional(t1) || is_exceptional(t2)) return std::nullopt;
    if (lcm3_of(t1) != lcm3_of(t2)) return std::nullopt;  // stage 1 territory
    const auto split = l2_split_witness(t1, t2);
    if (!split) return std::nullopt;

    const Triple& x = split->split_side == 1 ? t1 : t2;
    const Triple& y = split->split_side == 1 ? t2 : t1;

    // p = 1 mod 2*m1 puts q1 into (p-1)/2; p = -1 mod 2*m for every other
    // member (m2 included) puts them into (p+1)/2.
    std::vector<ResidueConstraint> cs;
    for (i64 m : l2_set(x).members) {
        const u64 mod = 2 * static_cast<u64>(m);
        if (m == split->m1)
            cs.push_back({mod, {1}, {}});
        else
            cs.push_back({mod, {mod - 1}, {}});
    }
    const auto p = find_prime(cs, prime_bound_for(cfg, cs));
    if (!p)
        throw ResourceError("l2 stage: prime search bound exhausted for " + t1.str() + " vs " +
                            t2.str());

    if (!macbeath_generated(*p, x) || macbeath_generated(*p, y))
        throw std::logic_error("l2 stage: constructed prime fails the Macbeath check");

    const GroupSpec psl = GroupSpec::psl2(*p);
    const u64 psl_order = psl.order().value_or(UINT64_MAX);  // overflow: too big anyway

    NonQuotientEvidence ev;
    bool have_evidence = false;
    if (const auto gap = certify_not_quotient_by_order_gap(psl, y)) {
        ev = NonQuotientEvidence{NonQuotientEvidence::Kind::OrderGap, *gap};
        have_evidence = true;
    } else if (psl_order <= cfg.oracle.max_group_order) {
        if (!is_quotient(psl, y, cfg.oracle).yes) {
            ev = NonQuotientEvidence{NonQuotientEvidence::Kind::OracleFalse, 0};
            have_evidence = true;
        }
    }

    const int x_index = split->split_side;
    if (have_evidence) {
        PslQuotientWitnessCert cert;
        cert.p = *p;
        cert.quotient_side = x_index;
        cert.q1 = split->q1;
        cert.q2 = split->q2;
        cert.m1 = split->m1;
        cert.m2 = split->m2;
        cert.constraints = cs;
        if (psl_order <= cfg.oracle.max_group_order) {
            const auto g = realize_psl2(*p, cfg.oracle.max_group_order);
            cert.witness = find_smooth_generating_pair(*g, x);
        }
        cert.non_quotient = ev;
        return Certificate{cert};
    }

    // Smooth-generation separation: PSL(2,p) is smoothly x-generated but has no
    // element of order q1*q2, while q1*q2 divides a member of y's L2-set, so it
    // cannot be smoothly y-generated.
    SmoothGenerationWitnessCert cert;
    cert.group = psl;
    cert.smooth_side = x_index;
    cert.blocked = static_cast<u64>(split->q1) * static_cast<u64>(split->q2);
    cert.q1 = split->q1;
    cert.q2 = split->q2;
    cert.split1 = x.entries();
    cert.split2 = {1, 1, 1};
    cert.primes = {*p};
    cert.constraints = cs;
    return Certificate{cert};
}

// ---------------------------------------------------------------------------
// Stage 4: suppression

namespace {

// Strip from v every prime factor it shares with q.
i64 strip_primes_of(i64 v, i64 q) {
    for (i64 g = std::gcd(v, q); g > 1; g = std::gcd(v, q)) v /= g;
    return v;
}

/// A noncyclic smoothly (tr)-generated group avoiding the blocked orders,
/// built per the nondivisor recipe: exceptional table, PSL(2,p) for
/// non-exceptional hyperbolic triples, or a dihedral fallback. With
/// block_divisors the group has no nontrivial element of order dividing any
/// blocked value (cyclic forcing); otherwise no order divisible by one.
/// Returns the group and the constraints used (PSL case).
std::optional<std::pair<GroupSpec, std::vector<ResidueConstraint>>> build_blocked_quotient(
    const Triple& tr, const std::vector<u64>& blocked, bool block_divisors,
    const WitnessConfig& cfg) {
    auto blocks_all = [&](const GroupSpec& g) {
        for (u64 q : blocked) {
            if (block_divisors ? has_nontrivial_element_of_order_dividing(g, q)
                               : has_element_of_order_divisible_by(g, q))
                return false;
        }
        return true;
    };

    if (is_exceptional(tr)) {
        GroupSpec g = GroupSpec::alt5();
        if (tr == Triple(2, 3, 3))
            g = GroupSpec::alt4();
        else if (tr == Triple(2, 3, 4))
            g = GroupSpec::sym4();
        else if (tr == Triple(3, 3, 3))
            g = GroupSpec::elem_abelian_3sq();
        else if (tr == Triple(2, 3, 5) || tr == Triple(2, 5, 5) || tr == Triple(3, 3, 5) ||
                 tr == Triple(3, 5, 5) || tr == Triple(5, 5, 5))
            g = GroupSpec::alt5();
        else
            return std::nullopt;  // spherical families outside the table
        if (!blocks_all(g)) return std::nullopt;
        return std::make_pair(g, std::vector<ResidueConstraint>{});
    }

    if (is_hyperbolic(tr)) {
        // p = +-1 mod twice each L2-set member, plus the blocking congruences.
        std::vector<ResidueConstraint> cs;
        for (i64 m : l2_set(tr).members) {
            const u64 mod = 2 * static_cast<u64>(m);
            cs.push_back({mod, {1, mod - 1}, {}});
        }
        for (u64 q : blocked) {
            if (block_divisors) {
                // No prime of q may appear in the spectrum at all.
                for (const auto& [prime, exp] : factorize(q).factors) {
                    (void)exp;
                    cs.push_back({prime, {}, {0, 1, prime - 1}});
                }
            } else {
                // q itself must divide no maximal order.
                cs.push_back({2 * q, {}, {1, 2 * q - 1}});
                for (const auto& [prime, exp] : factorize(q).factors) {
                    (void)exp;
                    cs.push_back({prime, {}, {0}});
                }
            }
        }
        std::optional<u64> p;
        try {
            p = find_prime(cs, prime_bound_for(cfg, cs));
        } catch (const InconsistencyError&) {
            return std::nullopt;
        }
        if (!p) return std::nullopt;
        const GroupSpec g = GroupSpec::psl2(*p);
        if (!macbeath_generated(*p, tr) || !blocks_all(g)) return std::nullopt;
        return std::make_pair(g, cs);
    }

    // Euclidean leftovers: dihedral fallback via the closed-form test.
    std::vector<u64> candidates;
    for (i64 e : tr.entries())
        for (u64 d : factorize(static_cast<u64>(e)).divisors())
            if (d >= 3) candidates.push_back(d);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (u64 m : candidates) {
        if (!dihedral_quotient_test(tr, m)) continue;
        const GroupSpec g = GroupSpec::dihedral(m);
        if (blocks_all(g)) return std::make_pair(g, std::vector<ResidueConstraint>{});
    }
    return std::nullopt;
}

std::optional<Certificate> suppression_for(const Triple& a, const Triple& b, int a_index, i64 q,
                                           bool extended, const WitnessConfig& cfg) {
    std::array<i64, 3> reduced;
    const auto be = b.entries();
    for (int i = 0; i < 3; ++i) reduced[i] = strip_primes_of(be[i], q);
    if (reduced[0] == 1 || reduced[1] == 1 || reduced[2] == 1) return std::nullopt;

    const Triple rt(reduced[0], reduced[1], reduced[2]);
    auto built = build_blocked_quotient(rt, {static_cast<u64>(q)}, /*block_divisors=*/true, cfg);
    if (!built) return std::nullopt;
    if (has_nontrivial_element_of_order_dividing(built->first, static_cast<u64>(q)))
        return std::nullopt;

    SuppressionWitnessCert cert;
    cert.q = q;
    cert.q_side = a_index;
    cert.reduced = reduced;
    cert.group = built->first;
    cert.constraints = built->second;
    cert.extended_scope = extended;
    (void)a;
    return Certificate{cert};
}

}  // namespace

std::optional<Certificate> attempt_suppression_stage(const Triple& t1, const Triple& t2,
                                                     const WitnessConfig& cfg) {
    for (const bool extended : {false, true}) {
        for (int side = 1; side <= 2; ++side) {
            const Triple& a = side == 1 ? t1 : t2;
            const Triple& b = side == 1 ? t2 : t1;
            std::vector<i64> qs;
            for (i64 q : a.entries())
                if (std::gcd<i64>(q, 6) == 1 && is_prime(static_cast<u64>(q)) != extended)
                    qs.push_back(q);
            std::sort(qs.begin(), qs.end());
            qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
            for (i64 q : qs)
                if (auto cert = suppression_for(a, b, side, q, extended, cfg)) return cert;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stage 5: direct products

namespace {

i64 largest_divisor_avoiding(i64 x, i64 q) {
    const auto divs = factorize(static_cast<u64>(x)).divisors();
    for (auto it = divs.rbegin(); it != divs.rend(); ++it)
        if (static_cast<i64>(*it % static_cast<u64>(q)) != 0) return static_cast<i64>(*it);
    return 1;
}

struct SplitChoice {
    std::array<i64, 3> x1, x2;
};

/// The q1q2 recipe applied to triple `a` for a given coprime split lcm = m1*m2
/// with q1 | m1, q2 | m2. `order_mask` picks the side for entries divisible by
/// neither q1 nor q2.
std::optional<SplitChoice> derive_split(const Triple& a, i64 q1, i64 q2, i64 m1, i64 m2,
                                        unsigned order_mask) {
    SplitChoice out;
    const auto ae = a.entries();
    int ambiguous = 0;
    for (int i = 0; i < 3; ++i) {
        const i64 x = ae[i];
        i64 x1, x2;
        if (x % q1 == 0) {
            x1 = std::gcd(x, m1);
            x2 = std::gcd(x, m2);
            if (x2 == 1) x2 = largest_divisor_avoiding(x, q1);
        } else if (x % q2 == 0) {
            x1 = std::gcd(x, m2);
            x2 = std::gcd(x, m1);
            if (x2 == 1) x2 = largest_divisor_avoiding(x, q2);
        } else {
            const i64 g1 = std::gcd(x, m1), g2 = std::gcd(x, m2);
            if (g1 > 1 && g2 > 1) {
                const bool swap = (order_mask >> ambiguous++) & 1;
                x1 = swap ? g2 : g1;
                x2 = swap ? g1 : g2;
            } else {
                x1 = x2 = x;  // x divides m1 or m2 entirely
            }
        }
        if (x2 == 1 || x1 == 1) return std::nullopt;
        if (lcm_u64(x1, x2) != static_cast<u64>(x)) return std::nullopt;  // (i)
        out.x1[i] = x1;
        out.x2[i] = x2;
    }
    // (ii): each first-component coprime to q1 or q2; both q's avoided by some entry.
    bool some_coprime_q1 = false, some_coprime_q2 = false;
    for (i64 v : out.x1) {
        const bool c1 = std::gcd(v, q1) == 1, c2 = std::gcd(v, q2) == 1;
        if (!c1 && !c2) return std::nullopt;
        some_coprime_q1 |= c1;
        some_coprime_q2 |= c2;
    }
    if (!some_coprime_q1 || !some_coprime_q2) return std::nullopt;
    return out;
}

std::optional<Certificate> product_witness_for(const Triple& a, int a_index, i64 q1, i64 q2,
                                               const WitnessConfig& cfg) {
    const u64 lcm = lcm3_of(a);
    const Factorization lf = factorize(lcm);

    // m1 takes the maximal prime powers over q1's primes, m2 those over q2's;
    // the remaining maximal prime powers are free to go either way.
    i64 base1 = 1, base2 = 1;
    std::vector<i64> free_pp;
    for (const auto& [prime, exponent] : lf.factors) {
        u64 pp = 1;
        for (u32 i = 0; i < exponent; ++i) pp = checked_mul(pp, prime);
        if (q1 % static_cast<i64>(prime) == 0)
            base1 = static_cast<i64>(checked_mul(base1, pp));
        else if (q2 % static_cast<i64>(prime) == 0)
            base2 = static_cast<i64>(checked_mul(base2, pp));
        else
            free_pp.push_back(static_cast<i64>(pp));
    }
    if (base1 % q1 != 0 || base2 % q2 != 0) return std::nullopt;

    const unsigned nfree = static_cast<unsigned>(free_pp.size());
    for (unsigned split_mask = 0; split_mask < (1u << nfree); ++split_mask) {
        i64 m1 = base1, m2 = base2;
        for (unsigned i = 0; i < nfree; ++i) {
            if ((split_mask >> i) & 1)
                m1 = static_cast<i64>(checked_mul(m1, free_pp[i]));
            else
                m2 = static_cast<i64>(checked_mul(m2, free_pp[i]));
        }
        for (unsigned order_mask = 0; order_mask < 8; ++order_mask) {
            const auto split = derive_split(a, q1, q2, m1, m2, order_mask);
            if (!split) continue;

            const Triple head(split->x1[0], split->x1[1], split->x1[2]);
            if (!is_hyperbolic(head) || is_exceptional(head)) continue;

            const Triple tail(split->x2[0], split->x2[1], split->x2[2]);
            // (iii): tail's L2-set avoids q1 and q2 entirely.
            {
                bool ok = true;
                for (i64 m : l2_set(tail).members)
                    if (m % q1 == 0 || m % q2 == 0) ok = false;
                if (!ok) continue;
            }

            // Prime for the head factor: members on the m1 side go into
            // (p-1)/2, members on the m2 side into (p+1)/2, and no prime of q1
            // may meet the q2 half or vice versa.
            std::vector<ResidueConstraint> cs;
            bool side_ok = true;
            for (i64 m : l2_set(head).members) {
                const u64 mod = 2 * static_cast<u64>(m);
                if (m1 % m == 0)
                    cs.push_back({mod, {1}, {}});
                else if (m2 % m == 0)
                    cs.push_back({mod, {mod - 1}, {}});
                else
                    side_ok = false;
            }
            if (!side_ok) continue;
            for (const auto& [prime, exp] : factorize(static_cast<u64>(q1)).factors) {
                (void)exp;
                if (prime == 2)
                    cs.push_back({4, {1}, {}});
                else
                    cs.push_back({prime, {}, {0, prime - 1}});
            }
            for (const auto& [prime, exp] : factorize(static_cast<u64>(q2)).factors) {
                (void)exp;
                if (prime == 2)
                    cs.push_back({4, {3}, {}});
                else
                    cs.push_back({prime, {}, {0, 1}});
            }
            std::optional<u64> p;
            try {
                p = find_prime(cs, prime_bound_for(cfg, cs));
            } catch (const InconsistencyError&) {
                continue;
            }
            if (!p) continue;
            if (!macbeath_generated(*p, head)) continue;
            {
                // Spectrum purity: no maximal order mixes q1-primes with q2-primes.
                const OrderSpectrum sp(*p);
                bool pure = true;
                for (u64 mo : sp.maximal_orders)
                    if (std::gcd<u64>(mo, q1) > 1 && std::gcd<u64>(mo, q2) > 1) pure = false;
                if (!pure) continue;
            }

            // Second factor: smoothly tail-generated, no order divisible by q1 or q2.
            const auto built =
                build_blocked_quotient(tail, {static_cast<u64>(q1), static_cast<u64>(q2)},
                                       /*block_divisors=*/false, cfg);
            if (!built) continue;

            const GroupSpec product =
                GroupSpec::direct_product({GroupSpec::psl2(*p), built->first});
            const u64 blocked = static_cast<u64>(q1) * static_cast<u64>(q2);
            if (has_element_of_order_divisible_by(product, blocked)) continue;

            SmoothGenerationWitnessCert cert;
            cert.group = GroupSpec::generated_subgroup(product, {});
            cert.smooth_side = a_index;
            cert.blocked = blocked;
            cert.q1 = q1;
            cert.q2 = q2;
            cert.split1 = split->x1;
            cert.split2 = split->x2;
            cert.primes = {*p};
            if (built->first.kind == GroupSpec::Kind::Psl2) cert.primes.push_back(built->first.n);
            cert.constraints = cs;
            for (const auto& c : built->second) cert.constraints.push_back(c);
            return Certificate{cert};
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Certificate> attempt_product_stage(const Triple& t1, const Triple& t2,
                                                 const WitnessConfig& cfg) {
    if (lcm3_of(t1) != lcm3_of(t2)) return std::nullopt;
    for (int uvw_side = 1; uvw_side <= 2; ++uvw_side) {
        const Triple& b = uvw_side == 1 ? t1 : t2;  // q1*q2 divides an entry of b
        const Triple& a = uvw_side == 1 ? t2 : t1;  // a receives the divisor split
        const int a_index = uvw_side == 1 ? 2 : 1;

        std::vector<i64> candidates;
        for (i64 e : b.entries())
            for (u64 d : factorize(static_cast<u64>(e)).divisors()) candidates.push_back(d);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        const auto ae = a.entries();
        for (i64 d : candidates) {
            if (d <= 12) continue;  // q1, q2 > 3 forces q1*q2 > 12
            if (ae[0] % d == 0 || ae[1] % d == 0 || ae[2] % d == 0) continue;
            for (u64 f : factorize(static_cast<u64>(d)).divisors()) {
                const i64 q1 = static_cast<i64>(f), q2 = d / q1;
                if (q1 >= q2) break;
                if (q1 <= 3 || q2 <= 3 || std::gcd(q1, q2) != 1) continue;
                if (auto c = product_witness_for(a, a_index, q1, q2, cfg)) return c;
                if (auto c = product_witness_for(a, a_index, q2, q1, cfg)) return c;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Verification: every claim re-derived from the two triples plus the recorded
// primes; any mismatch yields false with a reason.

namespace {

bool fail(std::string* reason, const std::string& msg) {
    if (reason) *reason = msg;
    return false;
}

const Triple& side_of(int side, const Triple& t1, const Triple& t2) {
    return side == 1 ? t1 : t2;
}

bool constraints_admit(const std::vector<ResidueConstraint>& cs, u64 p) {
    for (const auto& c : cs)
        if (!c.admits(p)) return false;
    return true;
}

/// Exact order n realizable in PSL(2,p) iff n divides one of the maximal orders.
bool psl2_has_exact_order(u64 p, u64 n) {
    return OrderSpectrum(p).divides_some_maximal(n);
}

/// G smoothly (tr)-generated, verified by arithmetic (PSL) or by the
/// exhaustive oracle (small groups).
bool verify_smooth_generation(const GroupSpec& g, const Triple& tr, const WitnessConfig& cfg,
                              std::string* reason) {
    switch (g.kind) {
        case GroupSpec::Kind::Psl2:
            if (is_exceptional(tr) || !is_hyperbolic(tr))
                return fail(reason, "PSL evidence needs a non-exceptional hyperbolic triple");
            if (!macbeath_generated(g.n, tr))
                return fail(reason, g.str() + " is not smoothly " + tr.str() + "-generated");
            return true;
        default: {
            const auto order = g.order();
            if (!order || *order > cfg.oracle.max_group_order)
                return fail(reason, "cannot re-check smooth generation of " + g.str());
            if (!is_smooth_quotient(g, tr, cfg.oracle).yes)
                return fail(reason, g.str() + " not smoothly " + tr.str() + "-generated");
            return true;
        }
    }
}

/// G a quotient of the (tr) triangle group: smooth generation for PSL, the
/// closed form for dihedral fallbacks (possibly non-smooth), the oracle
/// otherwise.
bool verify_is_quotient(const GroupSpec& g, const Triple& tr, const WitnessConfig& cfg,
                        std::string* reason) {
    switch (g.kind) {
        case GroupSpec::Kind::Psl2:
            return verify_smooth_generation(g, tr, cfg, reason);
        case GroupSpec::Kind::Dihedral:
            if (!dihedral_quotient_test(tr, g.n))
                return fail(reason, g.str() + " is not a quotient of " + tr.str());
            return true;
        default: {
            const auto order = g.order();
            if (!order || *order > cfg.oracle.max_group_order)
                return fail(reason, "cannot re-check the quotient claim for " + g.str());
            if (!is_quotient(g, tr, cfg.oracle).yes)
                return fail(reason, g.str() + " is not a quotient of " + tr.str());
            return true;
        }
    }
}

bool verify_identical(const IdenticalCert&, const Triple& t1, const Triple& t2,
                      std::string* reason) {
    if (!(t1 == t2)) return fail(reason, "triples are not equal as multisets");
    return true;
}

bool verify_invariant(const InvariantMismatchCert& c, const Triple& t1, const Triple& t2,
                      std::string* reason) {
    const auto expect = attempt_invariant_stage(t1, t2);
    if (!expect) return fail(reason, "all compared invariants agree");
    const auto& e = std::get<InvariantMismatchCert>(*expect);
    if (e.field != c.field || e.value1 != c.value1 || e.value2 != c.value2)
        return fail(reason, "recorded mismatch (" + c.field + ") is not the first differing field");
    return true;
}

bool verify_dihedral(const DihedralWitnessCert& c, const Triple& t1, const Triple& t2,
                     const WitnessConfig& cfg, std::string* reason) {
    if (c.side != 1 && c.side != 2) return fail(reason, "bad side");
    if (c.m < 3) return fail(reason, "dihedral m < 3");
    const Triple& yes_side = side_of(c.side, t1, t2);
    const Triple& no_side = side_of(3 - c.side, t1, t2);
    if (!dihedral_quotient_test(yes_side, c.m))
        return fail(reason, "D_m is not a quotient of the claimed side");
    if (dihedral_quotient_test(no_side, c.m))
        return fail(reason, "D_m is a quotient of both sides");
    if (2 * c.m <= cfg.oracle.max_group_order) {
        const GroupSpec dm = GroupSpec::dihedral(c.m);
        if (!is_quotient(dm, yes_side, cfg.oracle).yes)
            return fail(reason, "oracle refutes D_m quotient claim");
        if (is_quotient(dm, no_side, cfg.oracle).yes)
            return fail(reason, "oracle finds D_m quotient on the other side");
    }
    return true;
}

bool verify_psl_quotient(const PslQuotientWitnessCert& c, const Triple& t1, const Triple& t2,
                         const WitnessConfig& cfg, std::string* reason) {
    if (c.quotient_side != 1 && c.quotient_side != 2) return fail(reason, "bad side");
    if (!is_prime(c.p) || c.p < 5) return fail(reason, "p is not a prime >= 5");
    const Triple& x = side_of(c.quotient_side, t1, t2);
    const Triple& y = side_of(3 - c.quotient_side, t1, t2);
    if (is_exceptional(x) || is_exceptional(y)) return fail(reason, "exceptional triple");
    if (lcm3_of(x) != lcm3_of(y)) return fail(reason, "lcm mismatch");

    // Split data: q1, q2 maximal prime powers; split in x, joined in y.
    const auto mpp = factorize(lcm3_of(x)).maximal_prime_powers();
    if (std::find(mpp.begin(), mpp.end(), static_cast<u64>(c.q1)) == mpp.end() ||
        std::find(mpp.begin(), mpp.end(), static_cast<u64>(c.q2)) == mpp.end())
        return fail(reason, "q1/q2 are not maximal prime powers of the lcm");
    const L2Set lx = l2_set(x), ly = l2_set(y);
    auto member_with = [](const L2Set& s, i64 q) -> i64 {
        for (i64 m : s.members)
            if (m % q == 0) return m;
        return 0;
    };
    if (member_with(lx, c.q1) != c.m1 || member_with(lx, c.q2) != c.m2 || c.m1 == c.m2)
        return fail(reason, "q1/q2 are not split across the recorded members of the quotient side");
    if (member_with(ly, c.q1) != member_with(ly, c.q2))
        return fail(reason, "q1 and q2 do not share a member on the other side");

    if (!constraints_admit(c.constraints, c.p)) return fail(reason, "p violates the constraints");
    if (!macbeath_generated(c.p, x))
        return fail(reason, "PSL(2,p) is not smoothly generated for the quotient side");
    if (macbeath_generated(c.p, y))
        return fail(reason, "PSL(2,p) is smoothly generated for the other side too");

    const GroupSpec psl = GroupSpec::psl2(c.p);
    const u64 order = psl.order().value_or(UINT64_MAX);
    switch (c.non_quotient.kind) {
        case NonQuotientEvidence::Kind::OrderGap: {
            const auto ye = y.entries();
            if (std::find(ye.begin(), ye.end(), c.non_quotient.entry) == ye.end())
                return fail(reason, "order-gap entry is not an entry of the other side");
            if (has_nontrivial_element_of_order_dividing(psl, c.non_quotient.entry))
                return fail(reason, "order gap refuted: a dividing element order exists");
            break;
        }
        case NonQuotientEvidence::Kind::OracleFalse: {
            if (order > cfg.oracle.max_group_order)
                return fail(reason, "oracle evidence not re-checkable within the bound");
            if (is_quotient(psl, y, cfg.oracle).yes)
                return fail(reason, "oracle finds PSL(2,p) to be a quotient of the other side");
            break;
        }
    }

    if (c.witness) {
        if (!(c.witness->spec == psl)) return fail(reason, "witness group mismatch");
        if (c.witness->order_x != static_cast<u64>(x.r) ||
            c.witness->order_y != static_cast<u64>(x.s) ||
            c.witness->order_xy != static_cast<u64>(x.t))
            return fail(reason, "witness orders do not match the quotient side");
        if (order <= cfg.oracle.max_group_order) {
            const auto g = realize_psl2(c.p, cfg.oracle.max_group_order);
            const auto xi = g->index_of(c.witness->x), yi = g->index_of(c.witness->y);
            if (!xi || !yi) return fail(reason, "witness elements are not group elements");
            if (g->order_of(*xi) != c.witness->order_x || g->order_of(*yi) != c.witness->order_y ||
                g->order_of(g->mult(*xi, *yi)) != c.witness->order_xy)
                return fail(reason, "witness element orders do not recompute");
            if (!g->generates({*xi, *yi})) return fail(reason, "witness pair does not generate");
        }
    } else if (order <= cfg.oracle.max_group_order) {
        if (!is_smooth_quotient(psl, x, cfg.oracle).yes)
            return fail(reason, "oracle refutes smooth generation of the quotient side");
    }
    return true;
}

bool verify_suppression(const SuppressionWitnessCert& c, const Triple& t1, const Triple& t2,
                        const WitnessConfig& cfg, std::string* reason) {
    if (c.q_side != 1 && c.q_side != 2) return fail(reason, "bad side");
    const Triple& a = side_of(c.q_side, t1, t2);
    const Triple& b = side_of(3 - c.q_side, t1, t2);
    const auto aes = a.entries();
    if (std::find(aes.begin(), aes.end(), c.q) == aes.end())
        return fail(reason, "q is not an entry of the recorded side");
    if (std::gcd<i64>(c.q, 6) != 1 || c.q < 5) return fail(reason, "q is not coprime to 6");
    if (c.extended_scope == is_prime(static_cast<u64>(c.q)))
        return fail(reason, "extended-scope flag does not match q's primality");

    const auto be = b.entries();
    for (int i = 0; i < 3; ++i) {
        if (c.reduced[i] != strip_primes_of(be[i], c.q))
            return fail(reason, "reduced triple does not recompute");
        if (c.reduced[i] <= 1) return fail(reason, "reduced entry is trivial");
    }
    const Triple rt(c.reduced[0], c.reduced[1], c.reduced[2]);

    if (c.group.is_cyclic()) return fail(reason, "cyclic group cannot force a cyclic image");
    if (c.group.kind == GroupSpec::Kind::Psl2 && !constraints_admit(c.constraints, c.group.n))
        return fail(reason, "p violates the recorded constraints");
    if (has_nontrivial_element_of_order_dividing(c.group, static_cast<u64>(c.q)))
        return fail(reason, "group has a nontrivial element of order dividing q");
    if (!verify_is_quotient(c.group, rt, cfg, reason)) return false;

    // Full oracle cross-check when the group realizes within the bound.
    const auto order = c.group.order();
    if (order && *order <= cfg.oracle.max_group_order) {
        if (!is_quotient(c.group, b, cfg.oracle).yes)
            return fail(reason, "oracle refutes the quotient claim for the reduced side");
        if (is_quotient(c.group, a, cfg.oracle).yes)
            return fail(reason, "oracle finds the group to be a quotient of the q side");
    }
    return true;
}

bool verify_smooth_generation_cert(const SmoothGenerationWitnessCert& c, const Triple& t1,
                                   const Triple& t2, const WitnessConfig& cfg,
                                   std::string* reason) {
    if (c.smooth_side != 1 && c.smooth_side != 2) return fail(reason, "bad side");
    const Triple& a = side_of(c.smooth_side, t1, t2);
    const Triple& b = side_of(3 - c.smooth_side, t1, t2);
    if (c.blocked != static_cast<u64>(c.q1) * static_cast<u64>(c.q2))
        return fail(reason, "blocked order is not q1*q2");
    if (std::gcd(c.q1, c.q2) != 1) return fail(reason, "q1 and q2 are not coprime");

    const bool stage3_form = c.split2 == std::array<i64, 3>{1, 1, 1};
    if (stage3_form) {
        if (c.group.kind != GroupSpec::Kind::Psl2 || c.primes.size() != 1 ||
            c.primes[0] != c.group.n)
            return fail(reason, "stage-3 form must carry H = PSL(2,p)");
        const u64 p = c.group.n;
        if (!is_prime(p) || p < 5) return fail(reason, "p is not a prime >= 5");
        if (is_exceptional(a) || is_exceptional(b)) return fail(reason, "exceptional triple");
        if (lcm3_of(a) != lcm3_of(b)) return fail(reason, "lcm mismatch");
        if (c.split1 != a.entries()) return fail(reason, "split1 must equal the smooth side");
        if (!constraints_admit(c.constraints, p)) return fail(reason, "p violates constraints");
        if (!macbeath_generated(p, a))
            return fail(reason, "PSL(2,p) is not smoothly generated for the smooth side");
        if (has_element_of_order_divisible_by(c.group, c.blocked))
            return fail(reason, "blocked order present in the spectrum");
        bool joined = false;
        for (i64 m : l2_set(b).members)
            if (m % c.q1 == 0 && m % c.q2 == 0) joined = true;
        if (!joined)
            return fail(reason, "q1*q2 does not divide a member of the other side's L2-set");
        if (macbeath_generated(p, b))
            return fail(reason, "PSL(2,p) is smoothly generated for the other side too");
        const auto order = c.group.order();
        if (order && *order <= cfg.oracle.max_group_order) {
            if (!is_smooth_quotient(c.group, a, cfg.oracle).yes)
                return fail(reason, "oracle refutes smooth generation of the smooth side");
            if (is_smooth_quotient(c.group, b, cfg.oracle).yes)
                return fail(reason, "oracle finds smooth generation on the other side");
        }
        return true;
    }

    // Stage-5 form: H = subgroup of PSL(2,p) x G.
    if (c.q1 <= 3 || c.q2 <= 3) return fail(reason, "q1, q2 must both exceed 3");
    if (c.group.kind != GroupSpec::Kind::GeneratedSubgroup || c.group.factors.empty())
        return fail(reason, "stage-5 form must carry a subgroup of a direct product");
    const GroupSpec& product = c.group.factors[0];
    if (product.kind != GroupSpec::Kind::DirectProduct || product.factors.size() != 2)
        return fail(reason, "expected a two-factor direct product");
    const GroupSpec& head_group = product.factors[0];
    const GroupSpec& tail_group = product.factors[1];
    if (head_group.kind != GroupSpec::Kind::Psl2 || c.primes.empty() ||
        c.primes[0] != head_group.n)
        return fail(reason, "first factor must be PSL(2,p) with p recorded");
    const u64 p = head_group.n;
    if (!is_prime(p) || p < 5) return fail(reason, "p is not a prime >= 5");

    const auto ae = a.entries(), be_ = b.entries();
    bool b_has_blocked = false;
    for (i64 e : be_)
        if (e % static_cast<i64>(c.blocked) == 0) b_has_blocked = true;
    if (!b_has_blocked) return fail(reason, "blocked order divides no entry of the other side");
    for (i64 e : ae)
        if (e % static_cast<i64>(c.blocked) == 0)
            return fail(reason, "blocked order divides an entry of the smooth side");

    for (int i = 0; i < 3; ++i) {
        if (c.split1[i] <= 1 || c.split2[i] <= 1) return fail(reason, "trivial split entry");
        if (lcm_u64(c.split1[i], c.split2[i]) != static_cast<u64>(ae[i]))
            return fail(reason, "split lcm does not reproduce the smooth side's entries");
    }
    const Triple head(c.split1[0], c.split1[1], c.split1[2]);
    const Triple tail(c.split2[0], c.split2[1], c.split2[2]);
    if (!is_hyperbolic(head) || is_exceptional(head))
        return fail(reason, "head triple unusable for the PSL factor");
    if (!macbeath_generated(p, head))
        return fail(reason, "PSL(2,p) is not smoothly head-generated");
    {
        const OrderSpectrum sp(p);
        for (u64 mo : sp.maximal_orders)
            if (std::gcd<u64>(mo, c.q1) > 1 && std::gcd<u64>(mo, c.q2) > 1)
                return fail(reason, "a maximal order of PSL(2,p) mixes q1 and q2 primes");
    }
    for (int i = 0; i < 3; ++i)
        if (!psl2_has_exact_order(p, static_cast<u64>(c.split1[i])))
            return fail(reason, "split1 order unrealizable in PSL(2,p)");

    if (!verify_smooth_generation(tail_group, tail, cfg, reason)) return false;
    for (i64 v : c.split2)
        if (!has_element_of_order(tail_group, static_cast<u64>(v)))
            return fail(reason, "split2 order unrealizable in the second factor");
    if (has_element_of_order_divisible_by(tail_group, static_cast<u64>(c.q1)) ||
        has_element_of_order_divisible_by(tail_group, static_cast<u64>(c.q2)))
        return fail(reason, "second factor has an order divisible by q1 or q2");

    if (has_element_of_order_divisible_by(product, c.blocked))
        return fail(reason, "product spectrum contains an order divisible by q1*q2");

    // Oracle cross-check when the whole product realizes within the bound: a
    // pair of exact orders (r,s,t) exists on the smooth side and cannot exist
    // on the other (its blocked entry order is absent).
    const auto order = product.order();
    if (order && *order <= cfg.oracle.max_group_order) {
        const auto g = realize(product, cfg.oracle.max_group_order);
        bool found = false;
        const auto xs = g->elements_of_order(a.r);
        const auto ys = g->elements_of_order(a.s);
        for (u32 x : xs) {
            for (u32 y : ys)
                if (g->order_of(g->mult(x, y)) == static_cast<u64>(a.t)) {
                    found = true;
                    break;
                }
            if (found) break;
        }
        if (!found) return fail(reason, "no exact-order pair in the realized product");
    }
    return true;
}

bool verify_unresolved(const UnresolvedCert& c, const Triple& t1, const Triple& t2,
                       const WitnessConfig& cfg, std::string* reason) {
    const Certificate again = distinguish(t1, t2, cfg);
    if (const auto* u = std::get_if<UnresolvedCert>(&again)) {
        if (u->stages_attempted != c.stages_attempted)
            return fail(reason, "attempted-stage log does not reproduce");
        return true;
    }
    return fail(reason, "pipeline now resolves this pair");
}

}  // namespace

bool verify(const Certificate& c, const Triple& t1, const Triple& t2, const WitnessConfig& cfg,
            std::string* reason) {
    struct V {
        const Triple& t1;
        const Triple& t2;
        const WitnessConfig& cfg;
        std::string* reason;
        bool operator()(const IdenticalCert& x) const { return verify_identical(x, t1, t2, reason); }
        bool operator()(const InvariantMismatchCert& x) const {
            return verify_invariant(x, t1, t2, reason);
        }
        bool operator()(const DihedralWitnessCert& x) const {
            return verify_dihedral(x, t1, t2, cfg, reason);
        }
        bool operator()(const PslQuotientWitnessCert& x) const {
            return verify_psl_quotient(x, t1, t2, cfg, reason);
        }
        bool operator()(const SuppressionWitnessCert& x) const {
            return verify_suppression(x, t1, t2, cfg, reason);
        }
        bool operator()(const SmoothGenerationWitnessCert& x) const {
            return verify_smooth_generation_cert(x, t1, t2, cfg, reason);
        }
        bool operator()(const UnresolvedCert& x) const {
            return verify_unresolved(x, t1, t2, cfg, reason);
        }
    };
    return std::visit(V{t1, t2, cfg, reason}, c);
}

// ---------------------------------------------------------------------------
// Pipeline

Certificate distinguish(const Triple& t1, const Triple& t2, const WitnessConfig& cfg) {
    if (!is_hyperbolic(t1) || !is_hyperbolic(t2))
        throw std::domain_error("distinguish: both triples must be hyperbolic");

    if (t1 == t2) return Certificate{IdenticalCert{}};

    UnresolvedCert trail;
    if (auto c = attempt_invariant_stage(t1, t2)) return *c;
    trail.stages_attempted.push_back("invariants");
    if (auto c = attempt_dihedral_stage(t1, t2)) return *c;
    trail.stages_attempted.push_back("dihedral");

    std::optional<Certificate> fallback;
    if (auto c = attempt_l2_stage(t1, t2, cfg)) {
        if (!cfg.strongest_certificate ||
            std::holds_alternative<PslQuotientWitnessCert>(*c))
            return *c;
        fallback = c;  // smooth-generation separation; look for a stronger witness
    }
    trail.stages_attempted.push_back("l2-set");
    if (auto c = attempt_suppression_stage(t1, t2, cfg)) return *c;
    trail.stages_attempted.push_back("suppression");
    if (fallback) return *fallback;
    if (auto c = attempt_product_stage(t1, t2, cfg)) return *c;
    trail.stages_attempted.push_back("direct-product");

    return Certificate{trail};
}

}  // namespace tg
