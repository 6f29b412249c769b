#ifndef RELAYCAP_CUTSET_BOUND_HPP
#define RELAYCAP_CUTSET_BOUND_HPP

#include <cstddef>
#include <vector>

#include "relaycap/channel_model.hpp"

namespace relaycap {

// Which term attains the minimum at the optimal correlation.
struct BindingCut {
    enum class Kind { broadcast, mac, tie };
    Kind kind = Kind::mac;
    std::size_t relay = 0; // valid when kind == broadcast
};

struct CutsetResult {
    double rate = 0.0;     // bits per channel use
    double rho_star = 0.0; // optimal source-relay correlation
    BindingCut binding;
    // Per-term rates at rho_star: broadcast terms for relays 0..R-1,
    // then the MAC term.
    std::vector<double> term_values;
};

// C(x) = 1/2 log2(1 + x) bits per real channel use.
double awgn_capacity(double snr);

// Broadcast term of relay r: C((g_sd + g_sr) P_s (1 - rho^2) / N).
double broadcast_term(const NetworkConfig& cfg, std::size_t relay_index,
                      double rho);

// Multiple-access term: C((Var(Y_d) - N) / N) with fully correlated relays.
double mac_term(const NetworkConfig& cfg, double rho);

// Upper bound: sup over rho in [-1, 1] of min{min_r broadcast, MAC}. The
// broadcast terms are even and non-increasing in |rho| while the MAC term is
// non-decreasing, so the search reduces to the crossing point (or an
// endpoint) on [0, 1]; solved by bisection with a grid fallback.
CutsetResult cutset(const NetworkConfig& cfg);

// C(snr_sd + sum_r snr_rd): capacity of independent pipes to the destination.
double parallel_channels_rate(const NetworkConfig& cfg);

} // namespace relaycap

#endif
