#pragma once

#include "tg/witness.hpp"

namespace tg {

struct CensusConfig {
    u64 max_product = 12'000'000;
    bool require_at_most_one_even = true;
    int threads = 0;  // 0: library default
    WitnessConfig witness;
};

/// One candidate pair: distinct hyperbolic triples agreeing on product, lcm,
/// pairwise sum, gcd and ab_e (each with at most one even entry under the
/// default filter). left < right lexicographically.
struct PairRecord {
    Triple left;
    Triple right;
    i64 product;
    int stage = -1;  // resolving stage, -1 when unresolved
    std::string kind;
    bool coprime_flag = false;
    bool suppression_capable = false;  // stage 4 succeeds on this pair
    bool product_capable = false;      // stage 5 succeeds on this pair
    Certificate cert{UnresolvedCert{}};

    PairRecord(Triple l, Triple r, i64 prod) : left(l), right(r), product(prod) {}
};

struct CensusReport {
    u64 max_product = 0;
    u64 triple_count = 0;
    u64 candidate_pair_count = 0;
    std::array<u64, 6> stage_counts{};  // [1..5]
    u64 unresolved = 0;
    u64 coprime_flagged = 0;
    u64 suppression_only = 0;
    u64 shared_entry_violations = 0;   // expected 0 (no candidate pair shares an entry)
    u64 coprime_off_stage = 0;         // expected 0 (coprime-flagged pairs resolve at stage 3)
    std::vector<PairRecord> pairs;     // sorted by (product, left, right)
};

/// Enumerate candidate pairs and resolve each through the pipeline.
/// Shard-parallel over product ranges; output independent of thread count.
CensusReport run_census(const CensusConfig& cfg);

/// Enumeration only (no resolution), same order as run_census.
std::vector<std::pair<Triple, Triple>> enumerate_pairs(const CensusConfig& cfg);

/// Independent reference enumerator: one plain triple loop, no sieve, no
/// sharding. Kept for testing and benchmarking against the sharded kernel.
std::vector<std::pair<Triple, Triple>> enumerate_pairs_naive(u64 max_product,
                                                             bool require_at_most_one_even);

/// Line-oriented census output (stable field order, golden-file tested).
std::string render_pairs_file(const CensusReport& report);
std::string render_certs_file(const CensusReport& report);
std::string render_summary(const CensusReport& report);

}  // namespace tg
