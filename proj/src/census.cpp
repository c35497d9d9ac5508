#include "tg/census.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "tg/certificate_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tg {

namespace {

struct TripleKey {
    i64 gcd3, lcm3, pairwise_sum, ab_e;
    bool operator<(const TripleKey& o) const {
        return std::tie(gcd3, lcm3, pairwise_sum, ab_e) <
               std::tie(o.gcd3, o.lcm3, o.pairwise_sum, o.ab_e);
    }
    bool operator==(const TripleKey& o) const {
        return std::tie(gcd3, lcm3, pairwise_sum, ab_e) ==
               std::tie(o.gcd3, o.lcm3, o.pairwise_sum, o.ab_e);
    }
};

TripleKey key_of(i64 r, i64 s, i64 t) {
    const i64 g_rs = std::gcd(r, s), g_rt = std::gcd(r, t), g_st = std::gcd(s, t);
    TripleKey k;
    k.gcd3 = std::gcd(g_rs, t);
    k.lcm3 = static_cast<i64>(lcm_u64(lcm_u64(r, s), t));
    k.pairwise_sum = r * s + r * t + s * t;
    k.ab_e = static_cast<i64>(lcm_u64(lcm_u64(g_rs, g_rt), g_st));
    return k;
}

bool keep_triple(i64 r, i64 s, i64 t, bool at_most_one_even) {
    if (at_most_one_even) {
        const int evens = static_cast<int>(r % 2 == 0) + static_cast<int>(s % 2 == 0) +
                          static_cast<int>(t % 2 == 0);
        if (evens > 1) return false;
    }
    return s * t + r * t + r * s < r * s * t;  // hyperbolic
}

struct RawTriple {
    i64 r, s, t;
    bool operator<(const RawTriple& o) const {
        return std::tie(r, s, t) < std::tie(o.r, o.s, o.t);
    }
};

struct RawPair {
    i64 product;
    RawTriple a, b;  // a < b
};

/// Divisor-triple enumeration for every product in [lo, hi), grouped per
/// product; candidate pairs appended in (product, a, b) order.
void enumerate_block(const SpfTable& spf, u64 lo, u64 hi, bool at_most_one_even,
                     std::vector<RawPair>& pairs_out, u64& triple_count,
                     u64& shared_entry_violations) {
    std::vector<u64> divs;
    std::vector<RawTriple> triples;
    std::vector<std::pair<TripleKey, std::size_t>> keyed;
    for (u64 n = std::max<u64>(lo, 8); n < hi; ++n) {
        // Divisors from the SPF factorisation.
        divs.assign(1, 1);
        u64 m = n;
        while (m > 1) {
            const u32 p = spf[static_cast<u32>(m)];
            u32 e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            const std::size_t base = divs.size();
            u64 pk = 1;
            for (u32 i = 1; i <= e; ++i) {
                pk *= p;
                for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
            }
        }
        std::sort(divs.begin(), divs.end());

        triples.clear();
        for (std::size_t i = 1; i < divs.size(); ++i) {  // skip divisor 1
            const u64 r = divs[i];
            if (r * r * r > n) break;
            const u64 m1 = n / r;
            for (std::size_t j = i; j < divs.size(); ++j) {
                const u64 s = divs[j];
                if (s * s > m1) break;
                if (m1 % s != 0) continue;
                const u64 t = m1 / s;
                if (keep_triple(static_cast<i64>(r), static_cast<i64>(s), static_cast<i64>(t),
                                at_most_one_even))
                    triples.push_back(
                        {static_cast<i64>(r), static_cast<i64>(s), static_cast<i64>(t)});
            }
        }
        triple_count += triples.size();
        if (triples.size() < 2) continue;

        keyed.clear();
        for (std::size_t i = 0; i < triples.size(); ++i)
            keyed.emplace_back(key_of(triples[i].r, triples[i].s, triples[i].t), i);
        std::sort(keyed.begin(), keyed.end(),
                  [&](const auto& a, const auto& b) {
                      if (a.first == b.first) return triples[a.second] < triples[b.second];
                      return a.first < b.first;
                  });
        std::vector<std::pair<RawTriple, RawTriple>> found;
        for (std::size_t i = 0; i < keyed.size(); ++i) {
            for (std::size_t j = i + 1;
                 j < keyed.size() && keyed[j].first == keyed[i].first; ++j) {
                const RawTriple& a = triples[keyed[i].second];
                const RawTriple& b = triples[keyed[j].second];
                found.emplace_back(a, b);
                const std::array<i64, 3> ae{a.r, a.s, a.t}, be{b.r, b.s, b.t};
                for (i64 x : ae)
                    for (i64 y : be)
                        if (x == y) ++shared_entry_violations;
            }
        }
        // Pairs of one product in lexicographic order.
        std::sort(found.begin(), found.end());
        for (const auto& [a, b] : found) pairs_out.push_back({static_cast<i64>(n), a, b});
    }
}

struct BlockResult {
    std::vector<RawPair> pairs;
    u64 triple_count = 0;
    u64 shared_entry_violations = 0;
    std::string error;
};

std::vector<BlockResult> enumerate_sharded(const CensusConfig& cfg, const SpfTable& spf) {
    const u64 n_max = cfg.max_product;
    const u64 block = 1 << 16;
    const u64 nblocks = n_max / block + 1;
    std::vector<BlockResult> results(nblocks);

#ifdef _OPENMP
    const int requested = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(requested)
#endif
    for (u64 bi = 0; bi < nblocks; ++bi) {
        BlockResult& res = results[bi];
        const u64 lo = bi * block;
        const u64 hi = std::min(n_max + 1, (bi + 1) * block);
        if (lo > n_max) continue;
        try {
            enumerate_block(spf, lo, hi, cfg.require_at_most_one_even, res.pairs,
                            res.triple_count, res.shared_entry_violations);
        } catch (const std::exception& e) {
            res.error = std::string("shard ") + std::to_string(bi) + ": " + e.what();
        }
    }
    for (const auto& r : results)
        if (!r.error.empty()) throw ResourceError(r.error);
    return results;
}

}  // namespace

std::vector<std::pair<Triple, Triple>> enumerate_pairs(const CensusConfig& cfg) {
    const SpfTable spf(static_cast<u32>(cfg.max_product),
                       std::max<u32>(static_cast<u32>(cfg.max_product), SpfTable::kDefaultBudget));
    std::vector<std::pair<Triple, Triple>> out;
    for (const auto& block : enumerate_sharded(cfg, spf))
        for (const auto& p : block.pairs)
            out.emplace_back(Triple(p.a.r, p.a.s, p.a.t), Triple(p.b.r, p.b.s, p.b.t));
    return out;
}

std::vector<std::pair<Triple, Triple>> enumerate_pairs_naive(u64 max_product,
                                                             bool require_at_most_one_even) {
    std::map<std::pair<i64, TripleKey>, std::vector<RawTriple>> buckets;
    const i64 n_max = static_cast<i64>(max_product);
    for (i64 r = 2; r * r * r <= n_max; ++r)
        for (i64 s = r; r * s * s <= n_max; ++s)
            for (i64 t = s; r * s * t <= n_max; ++t)
                if (keep_triple(r, s, t, require_at_most_one_even))
                    buckets[{r * s * t, key_of(r, s, t)}].push_back({r, s, t});

    std::vector<std::pair<Triple, Triple>> out;
    for (const auto& [key, triples] : buckets)
        for (std::size_t i = 0; i < triples.size(); ++i)
            for (std::size_t j = i + 1; j < triples.size(); ++j)
                out.emplace_back(Triple(triples[i].r, triples[i].s, triples[i].t),
                                 Triple(triples[j].r, triples[j].s, triples[j].t));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const i64 pa = a.first.r * a.first.s * a.first.t;
        const i64 pb = b.first.r * b.first.s * b.first.t;
        if (pa != pb) return pa < pb;
        if (!(a.first == b.first)) return a.first < b.first;
        return a.second < b.second;
    });
    return out;
}

CensusReport run_census(const CensusConfig& cfg) {
    const SpfTable spf(static_cast<u32>(cfg.max_product),
                       std::max<u32>(static_cast<u32>(cfg.max_product), SpfTable::kDefaultBudget));
    CensusReport report;
    report.max_product = cfg.max_product;

    const auto blocks = enumerate_sharded(cfg, spf);
    for (const auto& b : blocks) {
        report.triple_count += b.triple_count;
        report.shared_entry_violations += b.shared_entry_violations;
        for (const auto& p : b.pairs)
            report.pairs.emplace_back(Triple(p.a.r, p.a.s, p.a.t), Triple(p.b.r, p.b.s, p.b.t),
                                      p.product);
    }
    report.candidate_pair_count = report.pairs.size();

    // Resolve pairs independently; deterministic because slots are indexed.
    std::vector<std::string> errors(report.pairs.size());
#ifdef _OPENMP
    const int requested = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(requested)
#endif
    for (std::size_t i = 0; i < report.pairs.size(); ++i) {
        PairRecord& rec = report.pairs[i];
        try {
            rec.coprime_flag = coprime_entry_test(rec.left, rec.right);
            std::optional<Certificate> cert = attempt_invariant_stage(rec.left, rec.right);
            if (!cert) cert = attempt_dihedral_stage(rec.left, rec.right);
            if (!cert) cert = attempt_l2_stage(rec.left, rec.right, cfg.witness);
            if (!cert) {
                const auto c4 = attempt_suppression_stage(rec.left, rec.right, cfg.witness);
                const auto c5 = attempt_product_stage(rec.left, rec.right, cfg.witness);
                rec.suppression_capable = c4.has_value();
                rec.product_capable = c5.has_value();
                if (c4)
                    cert = c4;
                else if (c5)
                    cert = c5;
            }
            if (cert) {
                rec.cert = *cert;
                rec.stage = certificate_stage(*cert);
                rec.kind = certificate_kind(*cert);
            } else {
                rec.cert = Certificate{UnresolvedCert{
                    {"invariants", "dihedral", "l2-set", "suppression", "direct-product"}}};
                rec.stage = -1;
                rec.kind = "unresolved";
            }
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw ResourceError("census pair " + report.pairs[i].left.str() + " vs " +
                                report.pairs[i].right.str() + ": " + errors[i]);

    for (const auto& rec : report.pairs) {
        if (rec.stage >= 1 && rec.stage <= 5)
            ++report.stage_counts[rec.stage];
        else
            ++report.unresolved;
        if (rec.coprime_flag) {
            ++report.coprime_flagged;
            if (rec.stage != 3) ++report.coprime_off_stage;
        }
        if (rec.suppression_capable && !rec.product_capable) ++report.suppression_only;
    }
    return report;
}

namespace {

std::string triple_csv(const Triple& t) {
    return std::to_string(t.r) + "," + std::to_string(t.s) + "," + std::to_string(t.t);
}

std::string cert_id(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "C%06zu", index + 1);
    return buf;
}

}  // namespace

std::string render_summary(const CensusReport& r) {
    std::ostringstream os;
    os << "summary max-product=" << r.max_product << " triples=" << r.triple_count
       << " candidate-pairs=" << r.candidate_pair_count;
    for (int s = 1; s <= 5; ++s) os << " stage" << s << "=" << r.stage_counts[s];
    os << " unresolved=" << r.unresolved << " coprime-flagged=" << r.coprime_flagged
       << " suppression-only=" << r.suppression_only
       << " shared-entry-violations=" << r.shared_entry_violations
       << " coprime-off-stage=" << r.coprime_off_stage << "\n";
    for (const auto& rec : r.pairs)
        if (rec.suppression_capable && !rec.product_capable)
            os << "suppression-only-pair left=" << triple_csv(rec.left)
               << " right=" << triple_csv(rec.right) << "\n";
    return os.str();
}

std::string render_pairs_file(const CensusReport& r) {
    std::ostringstream os;
    os << "tgq-census v1\n";
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
        const auto& rec = r.pairs[i];
        os << "pair product=" << rec.product << " left=" << triple_csv(rec.left)
           << " right=" << triple_csv(rec.right) << " stage=" << rec.stage
           << " kind=" << rec.kind << " coprime=" << (rec.coprime_flag ? 1 : 0)
           << " suppression-only="
           << ((rec.suppression_capable && !rec.product_capable) ? 1 : 0)
           << " cert=" << cert_id(i) << "\n";
    }
    os << render_summary(r);
    return os.str();
}

std::string render_certs_file(const CensusReport& r) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
        os << "### " << cert_id(i) << "\n";
        os << serialize_certificate(r.pairs[i].cert, r.pairs[i].left, r.pairs[i].right);
    }
    return os.str();
}

}  // namespace tg
