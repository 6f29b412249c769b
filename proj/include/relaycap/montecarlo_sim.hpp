#ifndef RELAYCAP_MONTECARLO_SIM_HPP
#define RELAYCAP_MONTECARLO_SIM_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "relaycap/channel_model.hpp"
#include "relaycap/relay_strategies.hpp"

namespace relaycap {

// Counter-style generator: every draw is one splitmix64 step, so a stream is
// fully determined by its seed and position. Streams are keyed per
// (run seed, source id, block index), which makes block-parallel simulation
// reproducible: stream ids are
//   0            shared relay innovation W
//   1            source symbols X_s
//   2 + r        relay noise Z_r
//   2 + R        destination noise Z_d
//   3 + R        standard-normal stand-in for X_s/sqrt(P_s) when P_s = 0
std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t stream_seed(std::uint64_t run_seed, std::uint64_t stream_id,
                          std::uint64_t block);

// Standard normal draws via Box-Muller on explicit 53-bit uniforms.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : state_(seed) {}
    double next();

private:
    double next_uniform(); // in [0, 1)
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Compensated (Kahan) accumulator; block partials are combined in block
// order, so reports do not depend on how blocks were scheduled.
class KahanSum {
public:
    void add(double x);
    void merge(const KahanSum& other);
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

enum class SimMode { correlated, af };

struct SimRun {
    std::uint64_t seed = 0;
    std::size_t num_blocks = 1;
    std::size_t samples_per_block = 1;
    NetworkConfig config;
    SimMode mode = SimMode::correlated;
    double rho = 0.0;  // correlated mode: common rho_sr, relays fully correlated
    AfGains gains;     // af mode
};

struct MomentCheck {
    std::string name;
    double empirical = 0.0;
    double predicted = 0.0;
    double sigma = 0.0;      // standard error of the empirical estimate
    bool pass = false;       // |empirical - predicted| <= 4 sigma
    bool informational = false; // excluded from the report verdict
};

struct MomentReport {
    std::vector<MomentCheck> checks;
    std::size_t total_samples = 0;
    bool all_pass() const;
};

// Draws (X_s, X_r, Y_r, Y_d) per the signal model with fully correlated
// relays at common rho, and checks raw second moments against the closed
// forms: relay powers, Var(Y_d), the per-relay broadcast residual
// (matched-filter combination of Y_d and Y_r regressed on X_r), its
// refinement given X_s, and the destination residual given all inputs.
MomentReport simulate_correlated(const SimRun& run);

// Block pipeline with one-block relay delay: X_r^(b) = beta_r Y_r^(b-1).
// Checks relay output powers, the destination noise floor (1 + sum beta^2
// g_rd) N, per-branch signal powers, and the combined source-branch power
// under independent adjacent blocks; the same-block coherent reading of the
// combined power is reported informationally.
MomentReport simulate_af(const SimRun& run);

} // namespace relaycap

#endif
