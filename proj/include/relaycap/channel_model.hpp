#ifndef RELAYCAP_CHANNEL_MODEL_HPP
#define RELAYCAP_CHANNEL_MODEL_HPP

#include <cstddef>
#include <vector>

namespace relaycap {

// Static AWGN relay network: one source, one destination, R parallel relays
// that do not hear each other. All powers in watts, gains are dimensionless
// amplitude-squared path gains.
struct NetworkConfig {
    double source_power = 0.0;          // P_s
    std::vector<double> relay_powers;   // P_r, size R
    double noise_power = 0.0;           // N, same at every receiver
    double gain_sd = 0.0;               // source -> destination
    std::vector<double> gains_sr;       // source -> relay r
    std::vector<double> gains_rd;       // relay r -> destination

    std::size_t relay_count() const { return relay_powers.size(); }

    // Throws ValidationError naming the offending field if any power is
    // negative, the noise power is not strictly positive, any gain is
    // negative, or the three relay-indexed vectors disagree in length.
    void validate() const;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Planar node layout converted to gains through a power-law path loss model
// g = (max(d, min_distance) / reference_distance)^(-exponent).
struct Geometry {
    Point source;
    Point destination;
    std::vector<Point> relays;
    double path_loss_exponent = 2.0;
    double reference_distance = 1.0;    // meters
    double min_distance = 0.01;         // clamp, keeps gains finite
};

// Path gain between two points under the geometry's loss model.
double path_gain(const Geometry& geom, const Point& a, const Point& b);

// Full config from a layout plus transmit powers. Validates the result.
NetworkConfig config_from_geometry(const Geometry& geom,
                                   double source_power,
                                   const std::vector<double>& relay_powers,
                                   double noise_power);

// Receive SNRs of the three link classes for relay r.
struct SnrTriple {
    double sd = 0.0;    // g_sd * P_s / N
    double sr = 0.0;    // g_sr * P_s / N
    double rd = 0.0;    // g_rd * P_r / N
};

SnrTriple snr(const NetworkConfig& cfg, std::size_t relay_index);

// Direct-link SNR alone, valid for any R including 0.
double snr_direct(const NetworkConfig& cfg);

} // namespace relaycap

#endif
