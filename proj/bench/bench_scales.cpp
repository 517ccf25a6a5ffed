// Compares the OpenMP scale application against the serial reference and
// verifies they agree bitwise.
#include "carleson/generators.hpp"
#include "carleson/kernel.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

using namespace carleson;

namespace {
double time_ms(const GridFunction& f, const LinearizingFunction& N, const KernelConfig& cfg,
               bool parallel, int reps) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    for (int r = 0; r < reps; ++r) {
        for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
            GridFunction out =
                parallel ? apply_scale(f, N, k, cfg) : apply_scale_serial(f, N, k, cfg);
            // keep the result alive
            if (out.values[0].real() > 1e300) std::abort();
        }
    }
    auto t1 = clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}
} // namespace

int main(int argc, char** argv) {
    const int K = argc > 1 ? std::atoi(argv[1]) : 12;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    KernelConfig cfg = KernelConfig::defaults(K);
    GridFunction f = gen::random_step(K, 32, 5, 7);
    LinearizingFunction N = gen::random_piecewise(K, 16, 11);

    // bitwise agreement before timing
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        GridFunction a = apply_scale(f, N, k, cfg);
        GridFunction b = apply_scale_serial(f, N, k, cfg);
        for (std::size_t x = 0; x < a.size(); ++x) {
            if (a.values[x] != b.values[x]) {
                std::fprintf(stderr, "mismatch at k=%d x=%zu\n", k, x);
                return 1;
            }
        }
    }

    double serial = time_ms(f, N, cfg, false, reps);
    double parallel = time_ms(f, N, cfg, true, reps);
    std::printf("K=%d  all scales once: serial %.2f ms, parallel %.2f ms, speedup %.2fx\n", K,
                serial, parallel, serial / parallel);
    return 0;
}
