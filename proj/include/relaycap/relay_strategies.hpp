#ifndef RELAYCAP_RELAY_STRATEGIES_HPP
#define RELAYCAP_RELAY_STRATEGIES_HPP

#include <cstddef>
#include <vector>

#include "relaycap/channel_model.hpp"

namespace relaycap {

// Per-relay amplitude scaling factors for amplify-and-forward.
struct AfGains {
    std::vector<double> beta;
};

// Rate of the direct link alone: C(snr_sd).
double direct_rate(const NetworkConfig& cfg);

// Largest feasible amplification: sqrt(P_r / (N + g_sr P_s)).
double af_gain_limit(const NetworkConfig& cfg, std::size_t relay_index);

// All relays at their amplification limit.
AfGains af_max_gains(const NetworkConfig& cfg);

// AF rate with one-block relay delay and coherent combining:
//   C( (sqrt(g_sd) + sum_r beta_r sqrt(g_sr g_rd))^2 P_s
//      / ((1 + sum_r beta_r^2 g_rd) N) ).
// Throws ValidationError if any |beta_r| exceeds its power limit
// (slack 1e-12 on |beta|^2).
double af_rate(const NetworkConfig& cfg, const AfGains& gains);

// Maximal ratio combining reference:
//   C( snr_sd + sum_r snr_sr snr_rd / (snr_sr + snr_rd) ),
// with a zero contribution from relays whose snr_sr + snr_rd = 0.
double mrc_rate(const NetworkConfig& cfg);

// AF evaluated at beta_r = min(af_gain_limit, snr_sr) against MRC; a pure
// report of the comparison, never an assertion.
struct AfMrcReport {
    AfGains gains_used;
    std::vector<bool> condition_holds; // |beta_r| <= snr_sr per relay
    double af = 0.0;
    double mrc = 0.0;
    bool af_favorable = false; // af >= mrc
};

AfMrcReport af_mrc_comparison(const NetworkConfig& cfg);

// True when (N + g_sr P_s) / P_r strictly exceeds the threshold: amplifying
// through relay r cannot contribute meaningfully.
bool useless_relay_predicate(const NetworkConfig& cfg, std::size_t relay_index,
                             double threshold = 100.0);

} // namespace relaycap

#endif
