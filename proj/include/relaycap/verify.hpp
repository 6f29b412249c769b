#ifndef RELAYCAP_VERIFY_HPP
#define RELAYCAP_VERIFY_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "relaycap/channel_model.hpp"

namespace relaycap {

struct SuiteCheck {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<SuiteCheck> checks;
    double worst_deviation = 0.0;
    bool pass = true;
};

// Uniform draw in [0, 1) advancing a splitmix64 state.
double uniform01(std::uint64_t& state);

// Random network: gains log-uniform in [1e-4, 10], powers log-uniform in
// [1e-3, 1] W, N = 1e-6 W. The ensemble behind the randomized suites.
NetworkConfig sample_config(std::uint64_t& state, std::size_t relay_count);

// min over the closed-form cut terms: min{min_r broadcast_r(rho), mac(rho)}.
double closed_min_cut(const NetworkConfig& cfg, double rho);

// Named property suites:
//   cut-reduction    all-cuts oracle vs closed-form min over a 21-point rho
//                    grid; trial i uses R = 1 + (i mod 8)
//   full-correlation R=2 min-cut over a relay-correlation grid; checks the
//                    grid argmax sits at the largest grid point
//   moments          Monte-Carlo second moments vs closed forms (deviation
//                    in sigma units, tolerance 4)
//   upper-bound-ordering
//                    the two case-study sweeps; cutset vs achievable rates
//                    at every grid point (trials > 0 runs them once)
// trials = 0 returns an empty passing report.
SuiteReport run_suite(std::string_view name, std::uint64_t seed,
                      std::size_t trials);

} // namespace relaycap

#endif
