// Benchmark: naive serial enumerator vs the sharded kernel (1 thread and the
// machine default), verifying identical pair sets while timing each.

#include <chrono>
#include <cstdio>
#include <string>

#include "tg/census.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    tg::u64 n = 200'000;
    if (argc > 1) n = std::stoull(argv[1]);

    std::printf("census enumeration benchmark, max product %llu\n",
                static_cast<unsigned long long>(n));

    auto t0 = Clock::now();
    const auto naive = tg::enumerate_pairs_naive(n, true);
    const double naive_s = seconds_since(t0);
    std::printf("  naive serial reference : %8.3f s  (%zu pairs)\n", naive_s, naive.size());

    tg::CensusConfig cfg;
    cfg.max_product = n;
    cfg.threads = 1;
    t0 = Clock::now();
    const auto serial = tg::enumerate_pairs(cfg);
    const double serial_s = seconds_since(t0);
    std::printf("  sharded kernel, 1 thread: %8.3f s  (%zu pairs)\n", serial_s, serial.size());

    int max_threads = 1;
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    cfg.threads = max_threads;
    t0 = Clock::now();
    const auto parallel = tg::enumerate_pairs(cfg);
    const double parallel_s = seconds_since(t0);
    std::printf("  sharded kernel, %d thread%s: %6.3f s  (%zu pairs)\n", max_threads,
                max_threads == 1 ? "" : "s", parallel_s, parallel.size());

    if (naive != serial || serial != parallel) {
        std::printf("MISMATCH: enumerators disagree\n");
        return 1;
    }
    std::printf("  all enumerators agree; serial/naive speedup %.2fx, parallel/serial %.2fx\n",
                naive_s / serial_s, serial_s / parallel_s);
    return 0;
}
