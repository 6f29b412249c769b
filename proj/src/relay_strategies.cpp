#include "relaycap/relay_strategies.hpp"
#include "relaycap/cutset_bound.hpp"
#include "relaycap/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace relaycap {

double direct_rate(const NetworkConfig& cfg) {
    return awgn_capacity(snr_direct(cfg));
}

double af_gain_limit(const NetworkConfig& cfg, std::size_t relay_index) {
    if (relay_index >= cfg.relay_count())
        throw ValidationError("relay_index out of range");
    return std::sqrt(cfg.relay_powers[relay_index] /
                     (cfg.noise_power +
                      cfg.gains_sr[relay_index] * cfg.source_power));
}

AfGains af_max_gains(const NetworkConfig& cfg) {
    AfGains g;
    g.beta.reserve(cfg.relay_count());
    for (std::size_t r = 0; r < cfg.relay_count(); ++r)
        g.beta.push_back(af_gain_limit(cfg, r));
    return g;
}

double af_rate(const NetworkConfig& cfg, const AfGains& gains) {
    if (gains.beta.size() != cfg.relay_count())
        throw ValidationError("AfGains must have one beta per relay");
    double amp = std::sqrt(cfg.gain_sd);
    double noise_scale = 1.0;
    for (std::size_t r = 0; r < cfg.relay_count(); ++r) {
        const double beta = gains.beta[r];
        const double limit = af_gain_limit(cfg, r);
        if (beta * beta > limit * limit + 1e-12)
            throw ValidationError(
                "beta[" + std::to_string(r) +
                "] exceeds the relay power constraint (limit " +
                std::to_string(limit) + ")");
        amp += beta * std::sqrt(cfg.gains_sr[r] * cfg.gains_rd[r]);
        noise_scale += beta * beta * cfg.gains_rd[r];
    }
    const double snr =
        amp * amp * cfg.source_power / (noise_scale * cfg.noise_power);
    return awgn_capacity(snr);
}

double mrc_rate(const NetworkConfig& cfg) {
    double total = snr_direct(cfg);
    for (std::size_t r = 0; r < cfg.relay_count(); ++r) {
        const SnrTriple s = snr(cfg, r);
        const double denom = s.sr + s.rd;
        if (denom > 0.0)
            total += s.sr * s.rd / denom;
    }
    return awgn_capacity(total);
}

AfMrcReport af_mrc_comparison(const NetworkConfig& cfg) {
    AfMrcReport rep;
    rep.gains_used.beta.reserve(cfg.relay_count());
    rep.condition_holds.reserve(cfg.relay_count());
    for (std::size_t r = 0; r < cfg.relay_count(); ++r) {
        const double limit = af_gain_limit(cfg, r);
        const double snr_sr = snr(cfg, r).sr;
        const double beta = std::min(limit, snr_sr);
        rep.gains_used.beta.push_back(beta);
        rep.condition_holds.push_back(beta <= snr_sr);
    }
    rep.af = af_rate(cfg, rep.gains_used);
    rep.mrc = mrc_rate(cfg);
    rep.af_favorable = rep.af >= rep.mrc;
    return rep;
}

bool useless_relay_predicate(const NetworkConfig& cfg,
                             std::size_t relay_index, double threshold) {
    if (relay_index >= cfg.relay_count())
        throw ValidationError("relay_index out of range");
    const double pr = cfg.relay_powers[relay_index];
    if (pr <= 0.0)
        return true;
    const double ratio =
        (cfg.noise_power + cfg.gains_sr[relay_index] * cfg.source_power) / pr;
    return ratio > threshold;
}

} // namespace relaycap
