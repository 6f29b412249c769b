#ifndef RELAYCAP_SERIALIZATION_HPP
#define RELAYCAP_SERIALIZATION_HPP

#include <string>
#include <string_view>

#include "relaycap/channel_model.hpp"
#include "relaycap/cutset_bound.hpp"
#include "relaycap/errors.hpp"
#include "relaycap/experiments.hpp"
#include "relaycap/montecarlo_sim.hpp"
#include "relaycap/relay_strategies.hpp"
#include "relaycap/verify.hpp"

namespace relaycap {

// Malformed input document; the message carries line and field context.
class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& what) : ValidationError(what) {}
};

// Doubles serialize with 17 significant digits so emitted documents
// re-parse to bit-identical values.
std::string fmt17(double v);

// Accepts either the flat NetworkConfig form (gains given directly) or the
// Geometry form (a "geometry" object plus powers).
NetworkConfig parse_network_config(std::string_view text);

// Sweep document: a "sweep" object (layout, range, AF policy, strategies)
// plus powers and noise.
SweepSpec parse_sweep_spec(std::string_view text);

// Simulation document: a "sim" object (mode, blocks, samples, rho or betas)
// plus a network config in either form. The run's seed defaults to 0; the
// CLI overrides it from --seed.
SimRun parse_sim_run(std::string_view text);

struct RateSummary {
    std::size_t relays = 0;
    double direct = 0.0;
    CutsetResult cutset;
    AfGains af_gains;
    double af = 0.0;
    double mrc = 0.0;
    double parallel = 0.0;
};

// Evaluates every strategy at the AF gain limit.
RateSummary compute_rate_summary(const NetworkConfig& cfg);

std::string rate_summary_to_json(const RateSummary& s);
RateSummary parse_rate_summary(std::string_view text);

std::string moment_report_to_json(const MomentReport& rep);
std::string suite_report_to_json(const SuiteReport& rep);

std::string binding_cut_token(const BindingCut& b);

} // namespace relaycap

#endif
