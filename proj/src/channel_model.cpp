#include "relaycap/channel_model.hpp"
#include "relaycap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace relaycap {

void NetworkConfig::validate() const {
    const std::size_t r = relay_powers.size();
    if (gains_sr.size() != r || gains_rd.size() != r) {
        throw ValidationError(
            "relay_powers, gains_sr and gains_rd must have equal length (got " +
            std::to_string(r) + ", " + std::to_string(gains_sr.size()) + ", " +
            std::to_string(gains_rd.size()) + ")");
    }
    if (!(source_power >= 0.0) || !std::isfinite(source_power))
        throw ValidationError("source_power must be finite and >= 0");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        throw ValidationError("noise_power must be finite and > 0");
    if (!(gain_sd >= 0.0) || !std::isfinite(gain_sd))
        throw ValidationError("gain_sd must be finite and >= 0");
    for (std::size_t i = 0; i < r; ++i) {
        if (!(relay_powers[i] >= 0.0) || !std::isfinite(relay_powers[i]))
            throw ValidationError("relay_powers[" + std::to_string(i) +
                                  "] must be finite and >= 0");
        if (!(gains_sr[i] >= 0.0) || !std::isfinite(gains_sr[i]))
            throw ValidationError("gains_sr[" + std::to_string(i) +
                                  "] must be finite and >= 0");
        if (!(gains_rd[i] >= 0.0) || !std::isfinite(gains_rd[i]))
            throw ValidationError("gains_rd[" + std::to_string(i) +
                                  "] must be finite and >= 0");
    }
}

double path_gain(const Geometry& geom, const Point& a, const Point& b) {
    if (!(geom.reference_distance > 0.0))
        throw ValidationError("reference_distance must be > 0");
    if (!(geom.min_distance > 0.0))
        throw ValidationError("min_distance must be > 0");
    const double d = std::hypot(b.x - a.x, b.y - a.y);
    const double eff = std::max(d, geom.min_distance);
    return std::pow(eff / geom.reference_distance, -geom.path_loss_exponent);
}

NetworkConfig config_from_geometry(const Geometry& geom,
                                   double source_power,
                                   const std::vector<double>& relay_powers,
                                   double noise_power) {
    if (relay_powers.size() != geom.relays.size())
        throw ValidationError("relay_powers must match geometry relay count");
    NetworkConfig cfg;
    cfg.source_power = source_power;
    cfg.relay_powers = relay_powers;
    cfg.noise_power = noise_power;
    cfg.gain_sd = path_gain(geom, geom.source, geom.destination);
    cfg.gains_sr.reserve(geom.relays.size());
    cfg.gains_rd.reserve(geom.relays.size());
    for (const Point& p : geom.relays) {
        cfg.gains_sr.push_back(path_gain(geom, geom.source, p));
        cfg.gains_rd.push_back(path_gain(geom, p, geom.destination));
    }
    cfg.validate();
    return cfg;
}

SnrTriple snr(const NetworkConfig& cfg, std::size_t relay_index) {
    if (relay_index >= cfg.relay_count())
        throw ValidationError("relay_index out of range");
    SnrTriple s;
    s.sd = cfg.gain_sd * cfg.source_power / cfg.noise_power;
    s.sr = cfg.gains_sr[relay_index] * cfg.source_power / cfg.noise_power;
    s.rd = cfg.gains_rd[relay_index] * cfg.relay_powers[relay_index] /
           cfg.noise_power;
    return s;
}

double snr_direct(const NetworkConfig& cfg) {
    return cfg.gain_sd * cfg.source_power / cfg.noise_power;
}

} // namespace relaycap
