#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relaycap/errors.hpp"
#include "relaycap/experiments.hpp"
#include "relaycap/montecarlo_sim.hpp"
#include "relaycap/serialization.hpp"
#include "relaycap/verify.hpp"

namespace {

using namespace relaycap;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path + "'");
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw IoError("cannot write '" + path + "'");
}

std::string curve_to_json(const RateCurve& curve) {
    std::string out = "{\n  \"points\": [\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const RatePoint& p = curve.points[i];
        out += "    {\"d_sr\": " + fmt17(p.d_sr);
        auto field = [&out](const char* name, const std::optional<double>& v) {
            if (v) out += std::string(", \"") + name + "\": " + fmt17(*v);
        };
        field("direct", p.direct);
        field("cutset", p.cutset);
        field("rho_star", p.rho_star);
        if (p.binding)
            out += ", \"binding_cut\": \"" + binding_cut_token(*p.binding) + "\"";
        field("af", p.af);
        field("mrc", p.mrc);
        field("parallel", p.parallel);
        field("cutset_user_rho", p.cutset_user_rho);
        if (!p.af_betas.empty()) {
            out += ", \"af_betas\": [";
            for (std::size_t k = 0; k < p.af_betas.size(); ++k) {
                if (k) out += ",";
                out += fmt17(p.af_betas[k]);
            }
            out += "]";
        }
        out += "}";
        out += (i + 1 < curve.points.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

struct Options {
    std::string config_path;
    std::string out_path;
    std::string format = "";
    std::uint64_t seed = 0;
    std::size_t trials = 200;
    std::string suite;
    std::size_t relays = 0;
    int verbosity = 0;
};

int cmd_rate(const Options& opt) {
    if (!opt.format.empty() && opt.format != "json")
        throw ValidationError("rate output is JSON only");
    NetworkConfig cfg = parse_network_config(read_file(opt.config_path));
    RateSummary summary = compute_rate_summary(cfg);
    write_output(opt.out_path, rate_summary_to_json(summary));
    return 0;
}

int cmd_sweep(const Options& opt) {
    SweepSpec spec = parse_sweep_spec(read_file(opt.config_path));
    if (opt.relays > 0) {
        if (!opt.format.empty() && opt.format != "csv")
            throw ValidationError("relay-count comparison output is CSV only");
        std::vector<std::size_t> counts(opt.relays);
        std::iota(counts.begin(), counts.end(), std::size_t{1});
        RelayCountComparison cmp = compare_relay_counts(spec, counts);
        if (opt.verbosity > 0)
            std::cerr << "comparison: " << cmp.rows.size() << " positions, "
                      << counts.size() << " relay counts\n";
        write_output(opt.out_path, comparison_to_csv(cmp));
        return 0;
    }
    RateCurve curve = run_sweep(spec);
    if (opt.verbosity > 0)
        std::cerr << "sweep: " << curve.points.size() << " positions\n";
    std::string format = opt.format.empty() ? "csv" : opt.format;
    if (format == "csv") {
        write_output(opt.out_path, to_csv(curve));
    } else if (format == "json") {
        write_output(opt.out_path, curve_to_json(curve));
    } else {
        write_output(opt.out_path, to_svg(curve));
    }
    return 0;
}

int cmd_verify(const Options& opt) {
    if (opt.suite != "cut-reduction" && opt.suite != "full-correlation" &&
        opt.suite != "moments" && opt.suite != "upper-bound-ordering")
        throw ValidationError("unknown suite '" + opt.suite + "'");
    SuiteReport rep = run_suite(opt.suite, opt.seed, opt.trials);
    if (opt.verbosity > 0) {
        for (const SuiteCheck& ck : rep.checks)
            std::cerr << (ck.pass ? "pass " : "FAIL ") << ck.name
                      << " deviation " << ck.deviation << " tolerance "
                      << ck.tolerance << "\n";
    }
    write_output(opt.out_path, suite_report_to_json(rep));
    return rep.pass ? 0 : 2;
}

int cmd_simulate(const Options& opt) {
    SimRun run = parse_sim_run(read_file(opt.config_path));
    run.seed = opt.seed;
    MomentReport rep =
        run.mode == SimMode::correlated ? simulate_correlated(run) : simulate_af(run);
    if (opt.verbosity > 0) {
        for (const MomentCheck& ck : rep.checks)
            std::cerr << (ck.pass ? "pass " : "FAIL ") << ck.name << " empirical "
                      << ck.empirical << " predicted " << ck.predicted << "\n";
    }
    write_output(opt.out_path, moment_report_to_json(rep));
    return rep.all_pass() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity bounds and achievable rates for parallel-relay "
                 "AWGN links"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&opt](CLI::App* cmd) {
        cmd->add_option("--out", opt.out_path, "Output path (default stdout)");
        cmd->add_flag("-v,--verbose", opt.verbosity, "Progress on stderr");
    };

    CLI::App* rate = app.add_subcommand("rate", "Rates for one configuration");
    rate->add_option("--config", opt.config_path, "Config document (JSON)")
        ->required();
    rate->add_option("--format", opt.format, "json")
        ->check(CLI::IsMember({"json"}));
    add_common(rate);

    CLI::App* sweep = app.add_subcommand("sweep", "Rate curve over relay positions");
    sweep->add_option("--config", opt.config_path, "Sweep document (JSON)")
        ->required();
    sweep->add_option("--format", opt.format, "csv, json, or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    sweep->add_option("--relays", opt.relays,
                      "Compare cutset rates for relay counts 1..n");
    add_common(sweep);

    CLI::App* verify = app.add_subcommand("verify", "Run a property suite");
    verify->add_option("--suite", opt.suite,
                       "cut-reduction, full-correlation, moments, or "
                       "upper-bound-ordering")
        ->required();
    verify->add_option("--seed", opt.seed, "Suite seed (default 0)");
    verify->add_option("--trials", opt.trials, "Trial count (default 200)");
    add_common(verify);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo moment check");
    simulate->add_option("--config", opt.config_path, "Simulation document (JSON)")
        ->required();
    simulate->add_option("--seed", opt.seed, "Run seed (default 0)");
    add_common(simulate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (rate->parsed()) return cmd_rate(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (verify->parsed()) return cmd_verify(opt);
        return cmd_simulate(opt);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
