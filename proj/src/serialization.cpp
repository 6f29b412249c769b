#include "relaycap/serialization.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

namespace relaycap {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        if (byte > text.size()) byte = text.size();
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail("malformed JSON at line " + std::to_string(line) + ", column " +
             std::to_string(col));
    }
}

const json& member(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + " is missing field '" + key + "'");
    return *it;
}

bool has(const json& obj, const char* key) {
    return obj.is_object() && obj.contains(key);
}

double as_num(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where + " must be a number");
    return j.get<double>();
}

double num_field(const json& obj, const char* key, const std::string& where) {
    return as_num(member(obj, key, where), where + "." + key);
}

double opt_num_field(const json& obj, const char* key, const std::string& where,
                     double fallback) {
    if (!has(obj, key)) return fallback;
    return as_num(obj.at(key), where + "." + key);
}

std::uint64_t uint_field(const json& obj, const char* key,
                         const std::string& where) {
    const json& j = member(obj, key, where);
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
        fail(where + "." + key + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

std::vector<double> num_array(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_num(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<double> num_array_field(const json& obj, const char* key,
                                    const std::string& where) {
    return num_array(member(obj, key, where), where + "." + key);
}

std::string string_field(const json& obj, const char* key,
                         const std::string& where) {
    const json& j = member(obj, key, where);
    if (!j.is_string()) fail(where + "." + key + " must be a string");
    return j.get<std::string>();
}

Point point_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        fail(where + " must be a two-element [x, y] array");
    return Point{as_num(j[0], where + "[0]"), as_num(j[1], where + "[1]")};
}

Geometry parse_geometry(const json& g, const std::string& where) {
    Geometry geom;
    geom.source = point_at(member(g, "source", where), where + ".source");
    geom.destination =
        point_at(member(g, "destination", where), where + ".destination");
    const json& relays = member(g, "relays", where);
    if (!relays.is_array()) fail(where + ".relays must be an array of points");
    for (std::size_t i = 0; i < relays.size(); ++i)
        geom.relays.push_back(
            point_at(relays[i], where + ".relays[" + std::to_string(i) + "]"));
    geom.path_loss_exponent =
        opt_num_field(g, "path_loss_exponent", where, geom.path_loss_exponent);
    geom.reference_distance =
        opt_num_field(g, "reference_distance", where, geom.reference_distance);
    geom.min_distance = opt_num_field(g, "min_distance", where, geom.min_distance);
    return geom;
}

NetworkConfig network_config_from_json(const json& doc) {
    if (has(doc, "geometry")) {
        Geometry geom = parse_geometry(doc.at("geometry"), "geometry");
        double ps = num_field(doc, "source_power", "document");
        std::vector<double> prs =
            num_array_field(doc, "relay_powers", "document");
        double n = num_field(doc, "noise_power", "document");
        return config_from_geometry(geom, ps, prs, n);
    }
    NetworkConfig cfg;
    cfg.source_power = num_field(doc, "source_power", "document");
    cfg.relay_powers = num_array_field(doc, "relay_powers", "document");
    cfg.noise_power = num_field(doc, "noise_power", "document");
    cfg.gain_sd = num_field(doc, "gain_sd", "document");
    cfg.gains_sr = num_array_field(doc, "gains_sr", "document");
    cfg.gains_rd = num_array_field(doc, "gains_rd", "document");
    cfg.validate();
    return cfg;
}

GeometryTemplate parse_geometry_template(const json& s, const std::string& where) {
    GeometryTemplate geom;
    geom.d_sd = num_field(s, "d_sd", where);
    geom.relay_offsets = num_array_field(s, "relay_offsets", where);
    geom.path_loss_exponent =
        opt_num_field(s, "path_loss_exponent", where, geom.path_loss_exponent);
    geom.reference_distance =
        opt_num_field(s, "reference_distance", where, geom.reference_distance);
    geom.min_distance = opt_num_field(s, "min_distance", where, geom.min_distance);
    return geom;
}

Strategy parse_strategy(const std::string& name, const std::string& where) {
    if (name == "direct") return Strategy::direct;
    if (name == "cutset") return Strategy::cutset;
    if (name == "af") return Strategy::af;
    if (name == "mrc") return Strategy::mrc;
    if (name == "parallel") return Strategy::parallel;
    fail(where + ": unknown strategy '" + name + "'");
}

AfPolicy parse_af_policy(const json& j, const std::string& where) {
    AfPolicy policy;
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (name == "max_gain") {
            policy.kind = AfPolicy::Kind::max_gain;
        } else if (name == "capped_by_snr") {
            policy.kind = AfPolicy::Kind::capped_by_snr;
        } else {
            fail(where + ": unknown AF policy '" + name + "'");
        }
        return policy;
    }
    if (j.is_object() && j.contains("fraction")) {
        policy.kind = AfPolicy::Kind::fraction;
        policy.fraction = num_field(j, "fraction", where);
        if (policy.fraction < 0.0 || policy.fraction > 1.0)
            fail(where + ".fraction must lie in [0, 1]");
        return policy;
    }
    if (j.is_object() && j.contains("carryover")) {
        const json& c = j.at("carryover");
        std::string cw = where + ".carryover";
        AfPolicy::CarryoverRef ref;
        ref.geom = parse_geometry_template(c, cw);
        ref.start = num_field(c, "start", cw);
        ref.stop = num_field(c, "stop", cw);
        ref.source_power = num_field(c, "source_power", cw);
        ref.relay_powers = num_array_field(c, "relay_powers", cw);
        ref.noise_power = num_field(c, "noise_power", cw);
        policy.kind = AfPolicy::Kind::carryover;
        policy.carryover = std::move(ref);
        return policy;
    }
    fail(where + " must be \"max_gain\", \"capped_by_snr\", {\"fraction\": f},"
                 " or {\"carryover\": {...}}");
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string num_list(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt17(v[i]);
    }
    out += "]";
    return out;
}

BindingCut parse_binding_token(const std::string& tok, const std::string& where) {
    BindingCut b;
    if (tok == "mac") {
        b.kind = BindingCut::Kind::mac;
        return b;
    }
    if (tok == "tie") {
        b.kind = BindingCut::Kind::tie;
        return b;
    }
    if (tok.rfind("relay:", 0) == 0) {
        b.kind = BindingCut::Kind::broadcast;
        char* end = nullptr;
        b.relay = std::strtoul(tok.c_str() + 6, &end, 10);
        if (end && *end == '\0') return b;
    }
    fail(where + ": unknown binding cut token '" + tok + "'");
}

} // namespace

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string binding_cut_token(const BindingCut& b) {
    switch (b.kind) {
        case BindingCut::Kind::mac: return "mac";
        case BindingCut::Kind::tie: return "tie";
        case BindingCut::Kind::broadcast:
            return "relay:" + std::to_string(b.relay);
    }
    return "mac";
}

NetworkConfig parse_network_config(std::string_view text) {
    return network_config_from_json(parse_document(text));
}

SweepSpec parse_sweep_spec(std::string_view text) {
    json doc = parse_document(text);
    const json& s = member(doc, "sweep", "document");
    SweepSpec spec;
    spec.geom = parse_geometry_template(s, "sweep");
    spec.start = num_field(s, "start", "sweep");
    spec.stop = num_field(s, "stop", "sweep");
    spec.step = num_field(s, "step", "sweep");
    spec.source_power = num_field(doc, "source_power", "document");
    spec.relay_powers = num_array_field(doc, "relay_powers", "document");
    spec.noise_power = num_field(doc, "noise_power", "document");
    if (has(s, "strategies")) {
        const json& arr = s.at("strategies");
        if (!arr.is_array()) fail("sweep.strategies must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const json& e = arr[i];
            std::string where = "sweep.strategies[" + std::to_string(i) + "]";
            if (!e.is_string()) fail(where + " must be a string");
            spec.strategies.push_back(parse_strategy(e.get<std::string>(), where));
        }
    } else {
        spec.strategies = {Strategy::direct, Strategy::cutset, Strategy::af,
                           Strategy::mrc, Strategy::parallel};
    }
    if (has(s, "af_policy"))
        spec.af_policy = parse_af_policy(s.at("af_policy"), "sweep.af_policy");
    if (has(s, "user_rho")) {
        const json& arr = s.at("user_rho");
        if (!arr.is_array()) fail("sweep.user_rho must be an array of [d, rho]");
        std::vector<std::pair<double, double>> samples;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string where = "sweep.user_rho[" + std::to_string(i) + "]";
            const json& e = arr[i];
            if (!e.is_array() || e.size() != 2)
                fail(where + " must be a two-element [d, rho] array");
            samples.emplace_back(as_num(e[0], where + "[0]"),
                                 as_num(e[1], where + "[1]"));
        }
        spec.user_rho = std::move(samples);
    }
    spec.validate();
    return spec;
}

SimRun parse_sim_run(std::string_view text) {
    json doc = parse_document(text);
    const json& s = member(doc, "sim", "document");
    SimRun run;
    run.config = network_config_from_json(doc);
    std::string mode = string_field(s, "mode", "sim");
    if (mode == "correlated") {
        run.mode = SimMode::correlated;
    } else if (mode == "af") {
        run.mode = SimMode::af;
    } else {
        fail("sim.mode must be \"correlated\" or \"af\"");
    }
    run.num_blocks = static_cast<std::size_t>(uint_field(s, "num_blocks", "sim"));
    run.samples_per_block =
        static_cast<std::size_t>(uint_field(s, "samples_per_block", "sim"));
    if (run.num_blocks == 0) fail("sim.num_blocks must be positive");
    if (run.samples_per_block == 0)
        fail("sim.samples_per_block must be positive");
    if (run.mode == SimMode::correlated) {
        run.rho = opt_num_field(s, "rho", "sim", 0.0);
        if (run.rho < -1.0 || run.rho > 1.0)
            fail("sim.rho must lie in [-1, 1]");
    } else if (has(s, "betas")) {
        run.gains.beta = num_array_field(s, "betas", "sim");
        if (run.gains.beta.size() != run.config.relay_count())
            fail("sim.betas must list one gain per relay");
    } else {
        run.gains = af_max_gains(run.config);
    }
    return run;
}

RateSummary compute_rate_summary(const NetworkConfig& cfg) {
    cfg.validate();
    RateSummary s;
    s.relays = cfg.relay_count();
    s.direct = direct_rate(cfg);
    s.cutset = cutset(cfg);
    s.af_gains = af_max_gains(cfg);
    s.af = af_rate(cfg, s.af_gains);
    s.mrc = mrc_rate(cfg);
    s.parallel = parallel_channels_rate(cfg);
    return s;
}

std::string rate_summary_to_json(const RateSummary& s) {
    std::string out = "{\n";
    out += "  \"relays\": " + std::to_string(s.relays) + ",\n";
    out += "  \"direct\": " + fmt17(s.direct) + ",\n";
    out += "  \"cutset\": {\n";
    out += "    \"rate\": " + fmt17(s.cutset.rate) + ",\n";
    out += "    \"rho_star\": " + fmt17(s.cutset.rho_star) + ",\n";
    out += "    \"binding_cut\": \"" + binding_cut_token(s.cutset.binding) +
           "\",\n";
    out += "    \"term_values\": " + num_list(s.cutset.term_values) + "\n";
    out += "  },\n";
    out += "  \"af\": {\n";
    out += "    \"rate\": " + fmt17(s.af) + ",\n";
    out += "    \"betas\": " + num_list(s.af_gains.beta) + "\n";
    out += "  },\n";
    out += "  \"mrc\": " + fmt17(s.mrc) + ",\n";
    out += "  \"parallel\": " + fmt17(s.parallel) + "\n";
    out += "}\n";
    return out;
}

RateSummary parse_rate_summary(std::string_view text) {
    json doc = parse_document(text);
    RateSummary s;
    s.relays = static_cast<std::size_t>(uint_field(doc, "relays", "document"));
    s.direct = num_field(doc, "direct", "document");
    const json& c = member(doc, "cutset", "document");
    s.cutset.rate = num_field(c, "rate", "cutset");
    s.cutset.rho_star = num_field(c, "rho_star", "cutset");
    s.cutset.binding = parse_binding_token(
        string_field(c, "binding_cut", "cutset"), "cutset.binding_cut");
    s.cutset.term_values = num_array_field(c, "term_values", "cutset");
    const json& a = member(doc, "af", "document");
    s.af = num_field(a, "rate", "af");
    s.af_gains.beta = num_array_field(a, "betas", "af");
    s.mrc = num_field(doc, "mrc", "document");
    s.parallel = num_field(doc, "parallel", "document");
    return s;
}

std::string moment_report_to_json(const MomentReport& rep) {
    std::string out = "{\n";
    out += "  \"total_samples\": " + std::to_string(rep.total_samples) + ",\n";
    out += "  \"all_pass\": " + std::string(rep.all_pass() ? "true" : "false") +
           ",\n";
    out += "  \"checks\": [\n";
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        const MomentCheck& ck = rep.checks[i];
        out += "    {\"name\": \"" + escape(ck.name) + "\", ";
        out += "\"empirical\": " + fmt17(ck.empirical) + ", ";
        out += "\"predicted\": " + fmt17(ck.predicted) + ", ";
        out += "\"sigma\": " + fmt17(ck.sigma) + ", ";
        out += "\"pass\": " + std::string(ck.pass ? "true" : "false") + ", ";
        out += "\"informational\": " +
               std::string(ck.informational ? "true" : "false") + "}";
        out += (i + 1 < rep.checks.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

std::string suite_report_to_json(const SuiteReport& rep) {
    std::string out = "{\n";
    out += "  \"suite\": \"" + escape(rep.suite) + "\",\n";
    out += "  \"seed\": " + std::to_string(rep.seed) + ",\n";
    out += "  \"trials\": " + std::to_string(rep.trials) + ",\n";
    out += "  \"pass\": " + std::string(rep.pass ? "true" : "false") + ",\n";
    out += "  \"worst_deviation\": " + fmt17(rep.worst_deviation) + ",\n";
    out += "  \"checks\": [\n";
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        const SuiteCheck& ck = rep.checks[i];
        out += "    {\"name\": \"" + escape(ck.name) + "\", ";
        out += "\"deviation\": " + fmt17(ck.deviation) + ", ";
        out += "\"tolerance\": " + fmt17(ck.tolerance) + ", ";
        out += "\"pass\": " + std::string(ck.pass ? "true" : "false") + "}";
        out += (i + 1 < rep.checks.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

} // namespace relaycap
