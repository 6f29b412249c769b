#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "relaycap/cutset_bound.hpp"
#include "relaycap/errors.hpp"
#include "relaycap/gauss_info.hpp"
#include "relaycap/relay_strategies.hpp"
#include "relaycap/verify.hpp"

using namespace relaycap;

namespace {

NetworkConfig unity_config(std::size_t relays) {
    NetworkConfig cfg;
    cfg.source_power = 1.0;
    cfg.noise_power = 1.0;
    cfg.gain_sd = 1.0;
    cfg.relay_powers.assign(relays, 1.0);
    cfg.gains_sr.assign(relays, 1.0);
    cfg.gains_rd.assign(relays, 1.0);
    return cfg;
}

// snr_sr < snr_rd for every relay, the regime where the weakest
// source-relay link pins the bound at rho = 0.
NetworkConfig sample_broadcast_limited(std::uint64_t& state, std::size_t relays) {
    NetworkConfig cfg = sample_config(state, relays);
    for (std::size_t r = 0; r < relays; ++r)
        cfg.gains_sr[r] = 0.5 * cfg.gains_rd[r] * cfg.relay_powers[r] /
                          cfg.source_power;
    return cfg;
}

} // namespace

TEST_CASE("awgn capacity fixed points") {
    CHECK(awgn_capacity(0.0) == 0.0);
    CHECK(awgn_capacity(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(awgn_capacity(3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(awgn_capacity(1e5) ==
          doctest::Approx(8.3048274506575428).epsilon(1e-12));
    CHECK_THROWS_AS(awgn_capacity(-0.1), ValidationError);
}

TEST_CASE("broadcast term endpoints") {
    NetworkConfig cfg = unity_config(1);
    CHECK(broadcast_term(cfg, 0, 0.0) ==
          doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
    CHECK(broadcast_term(cfg, 0, 1.0) == doctest::Approx(0.0));
    // Even in rho.
    CHECK(broadcast_term(cfg, 0, -0.5) ==
          doctest::Approx(broadcast_term(cfg, 0, 0.5)).epsilon(1e-15));
}

TEST_CASE("mac term endpoints") {
    NetworkConfig cfg = unity_config(1);
    CHECK(mac_term(cfg, 0.0) ==
          doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
    CHECK(mac_term(cfg, 1.0) ==
          doctest::Approx(0.5 * std::log2(5.0)).epsilon(1e-12));
}

TEST_CASE("unity single-relay cutset") {
    CutsetResult res = cutset(unity_config(1));
    CHECK(res.rate == doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
    CHECK(std::abs(res.rho_star) <= 1e-9);
    CHECK(res.binding.kind == BindingCut::Kind::tie);
    REQUIRE(res.term_values.size() == 2);
    CHECK(res.term_values[0] == doctest::Approx(res.rate).epsilon(1e-9));
    CHECK(res.term_values[1] == doctest::Approx(res.rate).epsilon(1e-9));
}

TEST_CASE("zero-relay cutset is the direct link") {
    NetworkConfig cfg = unity_config(0);
    cfg.gain_sd = 3.0;
    CutsetResult res = cutset(cfg);
    CHECK(res.rate == awgn_capacity(snr_direct(cfg)));
    CHECK(res.rho_star == 0.0);
    CHECK(res.binding.kind == BindingCut::Kind::mac);
    CHECK(res.term_values.size() == 1);
}

TEST_CASE("a deaf relay drags the bound down to the direct link") {
    NetworkConfig cfg = unity_config(2);
    cfg.gains_sr[1] = 1e-9;
    CutsetResult res = cutset(cfg);
    CHECK(res.rate == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(res.rate > 0.5);
    CHECK(res.rho_star == 0.0);
    CHECK(res.binding.kind == BindingCut::Kind::broadcast);
    CHECK(res.binding.relay == 1);
    // Strictly below the bound without the deaf relay.
    CHECK(res.rate < cutset(unity_config(1)).rate - 0.2);
}

TEST_CASE("broadcast-limited regime pins rho at zero") {
    std::uint64_t state = 2024;
    for (int trial = 0; trial < 40; ++trial) {
        NetworkConfig cfg = sample_broadcast_limited(state, 1 + trial % 4);
        CutsetResult res = cutset(cfg);
        CHECK(res.rho_star < 1e-6);
        CHECK(res.binding.kind == BindingCut::Kind::broadcast);
        // Binding relay has the weakest source-relay SNR.
        std::size_t argmin = 0;
        for (std::size_t r = 1; r < cfg.relay_count(); ++r)
            if (cfg.gains_sr[r] < cfg.gains_sr[argmin]) argmin = r;
        CHECK(res.binding.relay == argmin);
    }
}

TEST_CASE("in the broadcast-limited regime only the weakest relay matters") {
    std::uint64_t state = 99;
    for (int trial = 0; trial < 20; ++trial) {
        NetworkConfig cfg = sample_broadcast_limited(state, 4);
        std::size_t argmin = 0;
        for (std::size_t r = 1; r < 4; ++r)
            if (cfg.gains_sr[r] < cfg.gains_sr[argmin]) argmin = r;
        NetworkConfig solo = cfg;
        solo.relay_powers = {cfg.relay_powers[argmin]};
        solo.gains_sr = {cfg.gains_sr[argmin]};
        solo.gains_rd = {cfg.gains_rd[argmin]};
        CHECK(std::abs(cutset(cfg).rate - cutset(solo).rate) < 1e-6);
    }
}

TEST_CASE("extreme source-relay advantage drives rho toward one") {
    NetworkConfig cfg = unity_config(1);
    cfg.gain_sd = 1e-6;
    cfg.gains_sr[0] = 10.0;
    cfg.gains_rd[0] = 1e-6;
    cfg.noise_power = 1e-6;
    CutsetResult res = cutset(cfg);
    CHECK(res.rho_star > 1.0 - 1e-6);
    // The broadcast term collapses toward zero at full correlation, so the
    // optimum is the crossing, never a pure MAC minimum.
    CHECK(res.binding.kind == BindingCut::Kind::tie);
}

TEST_CASE("cutset dominates the direct link") {
    std::uint64_t state = 5150;
    for (int trial = 0; trial < 30; ++trial) {
        NetworkConfig cfg = sample_config(state, 1 + trial % 5);
        CHECK(cutset(cfg).rate >= direct_rate(cfg) - 1e-12);
    }
}

TEST_CASE("solver finds the grid optimum of the oracle") {
    std::uint64_t state = 31337;
    for (int trial = 0; trial < 6; ++trial) {
        NetworkConfig cfg = sample_config(state, 1 + trial % 3);
        CutsetResult res = cutset(cfg);
        double grid_best = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double rho = i / 100.0;
            CorrelationState corr =
                CorrelationState::full_relay(cfg.relay_count(), rho);
            grid_best = std::max(grid_best, aref_min_cut(cfg, corr).bits);
        }
        // The solver result upper-bounds every grid sample and the coarse
        // grid cannot sit far below the continuous optimum.
        CHECK(grid_best <= res.rate + 1e-6);
        CHECK(res.rate - grid_best < 0.02);
    }
}

TEST_CASE("term values evaluate at the reported rho") {
    std::uint64_t state = 404;
    NetworkConfig cfg = sample_config(state, 3);
    CutsetResult res = cutset(cfg);
    REQUIRE(res.term_values.size() == 4);
    for (std::size_t r = 0; r < 3; ++r)
        CHECK(res.term_values[r] ==
              doctest::Approx(broadcast_term(cfg, r, res.rho_star))
                  .epsilon(1e-12));
    CHECK(res.term_values[3] ==
          doctest::Approx(mac_term(cfg, res.rho_star)).epsilon(1e-12));
    CHECK(*std::min_element(res.term_values.begin(), res.term_values.end()) ==
          doctest::Approx(res.rate).epsilon(1e-12));
}

TEST_CASE("parallel channels rate") {
    CHECK(parallel_channels_rate(unity_config(1)) ==
          doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
    NetworkConfig r0 = unity_config(0);
    CHECK(parallel_channels_rate(r0) == direct_rate(r0));
    // Adding a pipe can only help.
    CHECK(parallel_channels_rate(unity_config(2)) >
          parallel_channels_rate(unity_config(1)));
}

TEST_CASE("cutset rejects invalid configs") {
    NetworkConfig cfg = unity_config(1);
    cfg.noise_power = 0.0;
    CHECK_THROWS_AS(cutset(cfg), ValidationError);
}
