// tgq: decide whether two hyperbolic triangle groups can share their finite
// quotients, and emit verifiable certificates when they cannot.
//
//   tgq invariants 15 42 63
//   tgq distinguish 13 15 117 9 39 65
//   tgq verify cert.txt
//   tgq census --max-product 12000000 --out census
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 unresolved, 4 resource limit.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tg/census.hpp"
#include "tg/certificate_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitUnresolved = 3;
constexpr int kExitResource = 4;

struct CommonOpts {
    std::string format = "human";
    tg::u64 prime_bound = 0;
    tg::u64 oracle_bound = 10'000;
    int threads = 0;
};

tg::WitnessConfig witness_config(const CommonOpts& o) {
    tg::WitnessConfig cfg;
    cfg.oracle.max_group_order = o.oracle_bound;
    cfg.prime_bound = o.prime_bound;
    return cfg;
}

int cmd_invariants(const std::vector<tg::i64>& e, const CommonOpts& opts) {
    const tg::Triple t(e[0], e[1], e[2]);
    const tg::InvariantProfile p = tg::invariant_profile(t);
    const tg::L2Set l2 = tg::l2_set(t);
    const char* cls = "hyperbolic";
    switch (tg::classify(t)) {
        case tg::SignatureClass::Spherical: cls = "spherical"; break;
        case tg::SignatureClass::Euclidean: cls = "euclidean"; break;
        case tg::SignatureClass::Hyperbolic: break;
    }
    if (opts.format == "structured") {
        std::cout << "triple " << t.r << " " << t.s << " " << t.t << "\n"
                  << "class " << cls << "\n"
                  << "product " << p.product << "\n"
                  << "lcm3 " << p.lcm3 << "\n"
                  << "gcd3 " << p.gcd3 << "\n"
                  << "pairwise-sum " << p.pairwise_sum << "\n"
                  << "abelianization " << p.ab_d << " " << p.ab_e << "\n"
                  << "euler-sum " << p.euler_sum.num << "/" << p.euler_sum.den << "\n"
                  << "even-count " << p.even_count << "\n"
                  << "exceptional " << (tg::is_exceptional(t) ? 1 : 0) << "\n"
                  << "l2-set";
        for (tg::i64 m : l2.members) std::cout << " " << m;
        std::cout << "\n";
    } else {
        std::cout << "triple " << t.str() << " is " << cls << "\n"
                  << "  product      " << p.product << "\n"
                  << "  lcm          " << p.lcm3 << "\n"
                  << "  gcd          " << p.gcd3 << "\n"
                  << "  pairwise sum " << p.pairwise_sum << "\n"
                  << "  abelianization C" << p.ab_d << " x C" << p.ab_e << "\n"
                  << "  euler sum    " << p.euler_sum.num << "/" << p.euler_sum.den << "\n"
                  << "  even entries " << p.even_count << "\n"
                  << "  exceptional  " << (tg::is_exceptional(t) ? "yes" : "no") << "\n"
                  << "  L2-set       " << l2.str() << "\n";
    }
    return kExitOk;
}

int cmd_distinguish(const std::vector<tg::i64>& e, const CommonOpts& opts) {
    const tg::Triple t1(e[0], e[1], e[2]);
    const tg::Triple t2(e[3], e[4], e[5]);
    if (!tg::is_hyperbolic(t1) || !tg::is_hyperbolic(t2)) {
        std::cerr << "error: both triples must be hyperbolic\n";
        return kExitBadInput;
    }
    const tg::Certificate cert = tg::distinguish(t1, t2, witness_config(opts));
    if (opts.format == "structured")
        std::cout << tg::serialize_certificate(cert, t1, t2);
    else
        std::cout << tg::describe_certificate(cert, t1, t2);
    return std::holds_alternative<tg::UnresolvedCert>(cert) ? kExitUnresolved : kExitOk;
}

int cmd_verify(const std::string& path, const CommonOpts& opts) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        return kExitBadInput;
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    tg::ParsedCertificate parsed = tg::parse_certificate(text);
    std::string reason;
    if (!tg::verify(parsed.cert, parsed.left, parsed.right, witness_config(opts), &reason)) {
        std::cerr << "verification failed: " << reason << "\n";
        return kExitVerifyFailed;
    }
    std::cout << "certificate verified for " << parsed.left.str() << " vs " << parsed.right.str()
              << "\n";
    if (std::holds_alternative<tg::UnresolvedCert>(parsed.cert))
        std::cout << "note: an unresolved record separates nothing\n";
    return kExitOk;
}

int cmd_census(tg::u64 max_product, bool allow_two_even, const std::string& out_prefix,
               const CommonOpts& opts) {
    tg::CensusConfig cfg;
    cfg.max_product = max_product;
    cfg.require_at_most_one_even = !allow_two_even;
    cfg.threads = opts.threads;
    cfg.witness = witness_config(opts);
    const tg::CensusReport report = tg::run_census(cfg);

    if (!out_prefix.empty()) {
        std::ofstream pairs(out_prefix + ".pairs.txt");
        pairs << tg::render_pairs_file(report);
        std::ofstream certs(out_prefix + ".certs.txt");
        certs << tg::render_certs_file(report);
        if (!pairs || !certs) {
            std::cerr << "error: cannot write output files with prefix " << out_prefix << "\n";
            return kExitResource;
        }
    }
    std::cout << tg::render_summary(report);
    return report.unresolved == 0 ? kExitOk : kExitUnresolved;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-quotient separation for hyperbolic triangle groups"};
    app.require_subcommand(1);

    CommonOpts opts;
    app.add_option("--format", opts.format, "output format: human | structured")
        ->check(CLI::IsMember({"human", "structured"}));
    app.add_option("--prime-bound", opts.prime_bound, "prime search bound (0 = automatic)");
    app.add_option("--oracle-bound", opts.oracle_bound,
                   "largest group order the brute-force oracle may realize");
    app.add_option("--threads", opts.threads, "census worker threads (0 = default)");

    std::vector<tg::i64> inv_entries;
    auto* inv = app.add_subcommand("invariants", "print the quotient-set invariants of a triple");
    inv->add_option("entries", inv_entries, "r s t")->expected(3)->required();

    std::vector<tg::i64> dis_entries;
    auto* dis = app.add_subcommand("distinguish", "certify two triples have different quotients");
    dis->add_option("entries", dis_entries, "r s t u v w")->expected(6)->required();

    std::string verify_path;
    auto* ver = app.add_subcommand("verify", "re-derive every claim of a stored certificate");
    ver->add_option("path", verify_path, "certificate file")->required();

    tg::u64 census_n = 12'000'000;
    bool census_two_even = false;
    std::string census_out;
    auto* cen = app.add_subcommand("census", "enumerate and resolve all candidate pairs");
    cen->add_option("--max-product", census_n, "largest product rst to enumerate");
    cen->add_flag("--allow-two-even", census_two_even,
                  "drop the at-most-one-even-entry filter");
    cen->add_option("--out", census_out, "output file prefix (.pairs.txt, .certs.txt)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints the message or the help text
        return rc == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (inv->parsed()) return cmd_invariants(inv_entries, opts);
        if (dis->parsed()) return cmd_distinguish(dis_entries, opts);
        if (ver->parsed()) return cmd_verify(verify_path, opts);
        if (cen->parsed()) return cmd_census(census_n, census_two_even, census_out, opts);
    } catch (const tg::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const tg::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    }
    return kExitBadInput;
}
