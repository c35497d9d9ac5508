#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tg/census.hpp"
#include "tg/certificate_io.hpp"

using namespace tg;

TEST_CASE("tiny censuses") {
    CensusConfig cfg;
    cfg.max_product = 4;
    CHECK(run_census(cfg).candidate_pair_count == 0);
    cfg.max_product = 1000;
    const CensusReport r = run_census(cfg);
    CHECK(r.unresolved == 0);
    CHECK(r.shared_entry_violations == 0);
}

TEST_CASE("double enumeration: sharded kernel equals the naive reference") {
    for (u64 n : {5'000ULL, 30'000ULL, 100'000ULL}) {
        CensusConfig cfg;
        cfg.max_product = n;
        const auto fast = enumerate_pairs(cfg);
        const auto naive = enumerate_pairs_naive(n, true);
        CHECK(fast == naive);
    }
}

TEST_CASE("determinism across thread counts") {
    CensusConfig one;
    one.max_product = 100'000;
    one.threads = 1;
    CensusConfig eight = one;
    eight.threads = 8;
    const CensusReport a = run_census(one);
    const CensusReport b = run_census(eight);
    CHECK(render_pairs_file(a) == render_pairs_file(b));
    CHECK(render_certs_file(a) == render_certs_file(b));
}

TEST_CASE("census pairs contain the paper pairs") {
    CensusConfig cfg;
    cfg.max_product = 40'000;
    const auto pairs = enumerate_pairs(cfg);
    const auto has = [&](const Triple& a, const Triple& b) {
        for (const auto& p : pairs)
            if ((p.first == a && p.second == b) || (p.first == b && p.second == a)) return true;
        return false;
    };
    CHECK(has(Triple(13, 15, 117), Triple(9, 39, 65)));
    CHECK(has(Triple(15, 42, 63), Triple(21, 21, 90)));
}

TEST_CASE("every census certificate verifies and stages are consistent") {
    CensusConfig cfg;
    cfg.max_product = 60'000;
    const CensusReport r = run_census(cfg);
    CHECK(r.unresolved == 0);
    CHECK(r.coprime_off_stage == 0);
    for (const auto& rec : r.pairs) {
        CHECK(rec.stage >= 3);  // candidate pairs agree on all cheap invariants
        std::string reason;
        const bool ok = verify(rec.cert, rec.left, rec.right, cfg.witness, &reason);
        CHECK_MESSAGE(ok, rec.left.str(), " vs ", rec.right.str(), ": ", reason);
    }
}

TEST_CASE("filter off: pairs with two even entries resolve at stage <= 2") {
    CensusConfig cfg;
    cfg.max_product = 8'000;
    cfg.require_at_most_one_even = false;
    const auto pairs = enumerate_pairs(cfg);
    WitnessConfig wcfg;
    int seen = 0;
    for (const auto& [a, b] : pairs) {
        const int evens_a = static_cast<int>(a.r % 2 == 0) + static_cast<int>(a.s % 2 == 0) +
                            static_cast<int>(a.t % 2 == 0);
        if (evens_a < 2) continue;
        ++seen;
        const Certificate c = distinguish(a, b, wcfg);
        CHECK(certificate_stage(c) <= 2);
        CHECK(certificate_stage(c) >= 0);
    }
    CHECK(seen > 0);
}

TEST_CASE("certificate blocks in the certs file parse back to the records") {
    CensusConfig cfg;
    cfg.max_product = 23'000;
    const CensusReport r = run_census(cfg);
    const std::string certs = render_certs_file(r);
    // Split on the "### C..." comment headers and reparse each block.
    std::vector<std::string> blocks;
    std::size_t pos = 0;
    while ((pos = certs.find("tgq-certificate", pos)) != std::string::npos) {
        const std::size_t end = certs.find("end\n", pos);
        REQUIRE(end != std::string::npos);
        blocks.push_back(certs.substr(pos, end + 4 - pos));
        pos = end + 4;
    }
    REQUIRE(blocks.size() == r.pairs.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const ParsedCertificate back = parse_certificate(blocks[i]);
        CHECK(back.left == r.pairs[i].left);
        CHECK(back.right == r.pairs[i].right);
        CHECK(back.cert == r.pairs[i].cert);
    }
}

TEST_CASE("render formats are stable") {
    CensusConfig cfg;
    cfg.max_product = 23'000;
    const CensusReport r = run_census(cfg);
    const std::string pairs = render_pairs_file(r);
    CHECK(pairs.find("tgq-census v1\n") == 0);
    CHECK(pairs.find("pair product=22815 left=9,39,65 right=13,15,117 stage=4 "
                     "kind=suppression coprime=0") != std::string::npos);
    const std::string summary = render_summary(r);
    CHECK(summary.find("candidate-pairs=") != std::string::npos);
    const std::string certs = render_certs_file(r);
    CHECK(certs.find("### C000001\n") == 0);
}
