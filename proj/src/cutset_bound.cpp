#include "relaycap/cutset_bound.hpp"
#include "relaycap/errors.hpp"
#include "relaycap/gauss_info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relaycap {

namespace {

constexpr double kRhoBisectTol = 1e-9;  // width of the final rho bracket
constexpr double kTieTolBits = 1e-9;    // broadcast/MAC tie detection

double min_broadcast(const NetworkConfig& cfg, double rho,
                     std::size_t* argmin = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_r = 0;
    for (std::size_t r = 0; r < cfg.relay_count(); ++r) {
        const double v = broadcast_term(cfg, r, rho);
        if (v < best) {
            best = v;
            best_r = r;
        }
    }
    if (argmin)
        *argmin = best_r;
    return best;
}

// at_crossing marks a rho found by bisecting the broadcast/MAC gap: there
// the two envelopes meet by construction, even when their slopes are too
// steep for the finite bracket to show it in the term values.
CutsetResult result_at(const NetworkConfig& cfg, double rho,
                       bool at_crossing = false) {
    CutsetResult res;
    res.rho_star = rho;
    res.term_values.reserve(cfg.relay_count() + 1);
    std::size_t bc_arg = 0;
    const double bc = min_broadcast(cfg, rho, &bc_arg);
    for (std::size_t r = 0; r < cfg.relay_count(); ++r)
        res.term_values.push_back(broadcast_term(cfg, r, rho));
    const double mac = mac_term(cfg, rho);
    res.term_values.push_back(mac);
    res.rate = std::min(bc, mac);
    // Tie whenever two or more terms sit at the minimum: the broadcast/MAC
    // crossing, or equal broadcast terms from symmetric relay placements.
    std::size_t near_min = 0;
    for (double v : res.term_values)
        if (v - res.rate < kTieTolBits)
            ++near_min;
    if (at_crossing || near_min >= 2) {
        res.binding.kind = BindingCut::Kind::tie;
    } else if (bc < mac) {
        res.binding.kind = BindingCut::Kind::broadcast;
        res.binding.relay = bc_arg;
    } else {
        res.binding.kind = BindingCut::Kind::mac;
    }
    return res;
}

} // namespace

double awgn_capacity(double snr) {
    if (!(snr >= 0.0))
        throw ValidationError("snr must be >= 0");
    return 0.5 * std::log2(1.0 + snr);
}

double broadcast_term(const NetworkConfig& cfg, std::size_t relay_index,
                      double rho) {
    const double cov = cond_cov_broadcast(cfg, relay_index, rho);
    return awgn_capacity((cov - cfg.noise_power) / cfg.noise_power);
}

double mac_term(const NetworkConfig& cfg, double rho) {
    const double v = var_yd(cfg, rho);
    return awgn_capacity((v - cfg.noise_power) / cfg.noise_power);
}

CutsetResult cutset(const NetworkConfig& cfg) {
    cfg.validate();
    if (cfg.relay_count() == 0) {
        CutsetResult res;
        res.rate = awgn_capacity(snr_direct(cfg));
        res.rho_star = 0.0;
        res.binding.kind = BindingCut::Kind::mac;
        res.term_values = {res.rate};
        return res;
    }

    // Broadcast terms are even and non-increasing in |rho|, the MAC term is
    // non-decreasing on [0, 1], so f(rho) = min(bc_min, mac) is maximized at
    // rho = 0 when mac already dominates there, and at the crossing of the
    // two envelopes otherwise.
    auto gap = [&](double rho) {
        return mac_term(cfg, rho) - min_broadcast(cfg, rho);
    };
    if (gap(0.0) >= 0.0)
        return result_at(cfg, 0.0);

    double lo = 0.0, hi = 1.0;
    if (gap(hi) < 0.0) {
        // min_broadcast(1) = 0 <= mac(1), so this bracket failure means the
        // monotone structure did not hold numerically; scan instead.
        double best_rho = 0.0;
        double best = -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 1000; ++i) {
            const double rho = i / 1000.0;
            const double f =
                std::min(min_broadcast(cfg, rho), mac_term(cfg, rho));
            if (f > best) {
                best = f;
                best_rho = rho;
            }
        }
        return result_at(cfg, best_rho);
    }
    while (hi - lo > kRhoBisectTol) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    return result_at(cfg, 0.5 * (lo + hi), /*at_crossing=*/true);
}

double parallel_channels_rate(const NetworkConfig& cfg) {
    cfg.validate();
    double total = snr_direct(cfg);
    for (std::size_t r = 0; r < cfg.relay_count(); ++r)
        total += cfg.gains_rd[r] * cfg.relay_powers[r] / cfg.noise_power;
    return awgn_capacity(total);
}

} // namespace relaycap
