#ifndef RELAYCAP_EXPERIMENTS_HPP
#define RELAYCAP_EXPERIMENTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relaycap/channel_model.hpp"
#include "relaycap/cutset_bound.hpp"
#include "relaycap/relay_strategies.hpp"

namespace relaycap {

enum class Strategy { direct, cutset, af, mrc, parallel };

// Node layout template for a horizontal relay sweep: source at (0, 0),
// destination at (d_sd, 0), relay r at (d_sr, relay_offsets[r]).
struct GeometryTemplate {
    double d_sd = 1.0;
    std::vector<double> relay_offsets; // signed vertical offsets, meters
    double path_loss_exponent = 2.0;
    double reference_distance = 1.0;
    double min_distance = 0.01;
};

// How the AF amplification factors are chosen at each sweep position.
struct AfPolicy {
    enum class Kind {
        max_gain,      // per-relay power limit
        capped_by_snr, // min(limit, snr_sr)
        fraction,      // fraction * limit
        carryover      // limits of a reference sweep, affinely mapped
    };

    struct CarryoverRef {
        GeometryTemplate geom;
        double start = 0.0;
        double stop = 0.0;
        double source_power = 0.0;
        std::vector<double> relay_powers;
        double noise_power = 0.0;
    };

    Kind kind = Kind::max_gain;
    double fraction = 1.0;
    std::optional<CarryoverRef> carryover;
};

struct SweepSpec {
    GeometryTemplate geom;
    double start = 0.0; // d_sr range, meters
    double stop = 0.0;
    double step = 0.0;
    double source_power = 0.0;
    std::vector<double> relay_powers;
    double noise_power = 0.0;
    std::vector<Strategy> strategies;
    AfPolicy af_policy;
    // Optional externally supplied rho(d_sr) samples; when present the curve
    // gains a column with the cutset min-term evaluated at the interpolated
    // rho instead of the optimized one.
    std::optional<std::vector<std::pair<double, double>>> user_rho;

    void validate() const;
};

struct RatePoint {
    double d_sr = 0.0;
    std::optional<double> direct;
    std::optional<double> cutset;
    std::optional<double> af;
    std::optional<double> mrc;
    std::optional<double> parallel;
    std::optional<double> rho_star;
    std::optional<BindingCut> binding;
    std::optional<double> cutset_user_rho;
    std::vector<double> af_betas;
};

struct RateCurve {
    std::vector<RatePoint> points;
};

// The network config at one sweep position.
NetworkConfig config_at(const SweepSpec& spec, double d_sr);

// AF gains at one sweep position under the spec's policy.
AfGains af_gains_at(const SweepSpec& spec, double d_sr);

// Evaluates every requested strategy on the d_sr grid. Deterministic; rows
// ordered by d_sr.
RateCurve run_sweep(const SweepSpec& spec);

// Cutset rates for reduced relay counts on the same sweep: count n keeps the
// first n relay offsets, so the one-relay variant places its relay at
// (d_sr, +d_r). Ratios are later count over earlier count.
struct RelayCountComparison {
    std::vector<std::size_t> counts;
    std::string baseline_note;
    struct Row {
        double d_sr = 0.0;
        std::vector<double> cutset; // one per count
        std::optional<double> ratio;
    };
    std::vector<Row> rows;
};

RelayCountComparison compare_relay_counts(const SweepSpec& spec,
                                          const std::vector<std::size_t>& counts);

// CSV with header d_sr,direct,cutset,rho_star,binding_cut,af,mrc,parallel
// ('.' decimal, ',' separator); unrequested strategies leave empty cells.
std::string to_csv(const RateCurve& curve);

std::string comparison_to_csv(const RelayCountComparison& cmp);

// Self-contained SVG line chart, one polyline per strategy plus a legend.
std::string to_svg(const RateCurve& curve);

// The two case studies: a short high-power hop (d_sd = 1 m, offsets
// +-0.1 m, 100 mW, 1 uW, d_sr in [-0.5, 1.5] step 0.01) and a long
// low-power hop (d_sd = 500 m, offsets +-10 m, d_sr in [-100, 600] step
// 5 m). The high-power sweep runs AF at the gain limit; the low-power sweep
// carries over the high-power sweep's gain limits (mapped along the range),
// the operating point under which its rate ordering claims hold.
SweepSpec high_snr_case_study(std::size_t relay_count = 2);
SweepSpec low_snr_case_study(std::size_t relay_count = 1);

} // namespace relaycap

#endif
