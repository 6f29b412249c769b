// Times the all-cuts oracle across the relay counts the cut-reduction suite
// exercises. The suite budget assumes a single core; run this after touching
// gauss_info to confirm the numbers still fit.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "relaycap/gauss_info.hpp"
#include "relaycap/verify.hpp"

using namespace relaycap;

int main(int argc, char** argv) {
    std::size_t trials_per_r = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 25;
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    double sink = 0.0;
    double total_s = 0.0;
    for (std::size_t r = 1; r <= 8; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        for (std::size_t i = 0; i < trials_per_r; ++i) {
            NetworkConfig cfg = sample_config(state, r);
            for (int k = 0; k <= 20; ++k) {
                double rho = 0.05 * k;
                CorrelationState corr = CorrelationState::full_relay(r, rho);
                sink += aref_min_cut(cfg, corr).bits;
            }
        }
        auto t1 = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(t1 - t0).count();
        total_s += s;
        std::printf("R=%zu  %zu trials x 21 rho  %.3f s  (%.2f ms/min-cut)\n", r,
                    trials_per_r, s, 1e3 * s / (trials_per_r * 21.0));
    }
    std::printf("total %.3f s  (sink %.6f)\n", total_s, sink);
    return 0;
}
