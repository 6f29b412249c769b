#include "relaycap/montecarlo_sim.hpp"
#include "relaycap/errors.hpp"
#include "relaycap/gauss_info.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace relaycap {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t run_seed, std::uint64_t stream_id,
                          std::uint64_t block) {
    std::uint64_t s = splitmix64(run_seed ^ 0x8C67E7DE1A6F3D25ull);
    s = splitmix64(s ^ stream_id);
    return splitmix64(s ^ block);
}

double NormalStream::next_uniform() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double NormalStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - next_uniform(); // (0, 1], keeps log finite
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

void KahanSum::add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
}

void KahanSum::merge(const KahanSum& other) {
    add(other.sum_);
    add(-other.carry_);
}

bool MomentReport::all_pass() const {
    for (const MomentCheck& c : checks)
        if (!c.informational && !c.pass)
            return false;
    return true;
}

namespace {

constexpr double kPassSigmas = 4.0;

MomentCheck make_check(std::string name, double empirical, double predicted,
                       double sigma, bool informational = false) {
    MomentCheck c;
    c.name = std::move(name);
    c.empirical = empirical;
    c.predicted = predicted;
    c.sigma = sigma;
    c.pass = std::abs(empirical - predicted) <= kPassSigmas * sigma;
    c.informational = informational;
    return c;
}

// Standard error of a raw second-moment estimate of a Gaussian with the
// predicted variance: Var(sum x^2 / n) = 2 v^2 / n.
double moment_sigma(double predicted_var, std::size_t n) {
    return std::sqrt(2.0 / static_cast<double>(n)) * predicted_var;
}

// Residual variance of t regressed on x, from raw cross moments.
double residual_var(double sum_tt, double sum_tx, double sum_xx,
                    std::size_t n) {
    double ss = sum_tt;
    if (sum_xx > 0.0)
        ss -= sum_tx * sum_tx / sum_xx;
    return ss / static_cast<double>(n);
}

void validate_run(const SimRun& run, SimMode expected) {
    run.config.validate();
    if (run.mode != expected)
        throw ValidationError("SimRun mode does not match the simulator");
    if (run.num_blocks < 1 || run.samples_per_block < 1)
        throw ValidationError("num_blocks and samples_per_block must be >= 1");
}

} // namespace

MomentReport simulate_correlated(const SimRun& run) {
    validate_run(run, SimMode::correlated);
    if (!(std::abs(run.rho) <= 1.0))
        throw ValidationError("rho must lie in [-1, 1]");
    const NetworkConfig& cfg = run.config;
    const std::size_t R = cfg.relay_count();
    const std::size_t n = run.samples_per_block;

    const double sqrt_ps = std::sqrt(cfg.source_power);
    const double sqrt_gsd = std::sqrt(cfg.gain_sd);
    const double rho = run.rho;
    const double innov = std::sqrt(1.0 - rho * rho);
    std::vector<double> sqrt_pr(R), sqrt_gsr(R), sqrt_grd(R), mix_denom(R);
    for (std::size_t r = 0; r < R; ++r) {
        sqrt_pr[r] = std::sqrt(cfg.relay_powers[r]);
        sqrt_gsr[r] = std::sqrt(cfg.gains_sr[r]);
        sqrt_grd[r] = std::sqrt(cfg.gains_rd[r]);
        mix_denom[r] = std::sqrt(cfg.gain_sd + cfg.gains_sr[r]);
    }

    KahanSum xs2, yd2, s2, yds;
    std::vector<KahanSum> xr2(R), t2(R), txr(R), txs(R);
    std::vector<double> xr(R);

    for (std::size_t b = 0; b < run.num_blocks; ++b) {
        NormalStream w_stream(stream_seed(run.seed, 0, b));
        NormalStream xs_stream(stream_seed(run.seed, 1, b));
        std::vector<NormalStream> zr_streams;
        zr_streams.reserve(R);
        for (std::size_t r = 0; r < R; ++r)
            zr_streams.emplace_back(stream_seed(run.seed, 2 + r, b));
        NormalStream zd_stream(stream_seed(run.seed, 2 + R, b));
        NormalStream u_stream(stream_seed(run.seed, 3 + R, b));

        KahanSum b_xs2, b_yd2, b_s2, b_yds;
        std::vector<KahanSum> b_xr2(R), b_t2(R), b_txr(R), b_txs(R);

        for (std::size_t i = 0; i < n; ++i) {
            const double xs = sqrt_ps * xs_stream.next();
            // Normalized source component of the relay signals; at P_s = 0
            // an independent unit normal keeps Var(X_r) = P_r with
            // Cov(X_s, X_r) = 0.
            const double base =
                cfg.source_power > 0.0 ? xs / sqrt_ps : u_stream.next();
            const double w = w_stream.next();
            const double zd = zd_stream.next() * std::sqrt(cfg.noise_power);

            double relay_sum = 0.0;
            for (std::size_t r = 0; r < R; ++r) {
                xr[r] = sqrt_pr[r] * (rho * base + innov * w);
                relay_sum += sqrt_grd[r] * xr[r];
            }
            const double signal = sqrt_gsd * xs + relay_sum;
            const double yd = signal + zd;
            const double yd_no_relays = sqrt_gsd * xs + zd;

            b_xs2.add(xs * xs);
            b_yd2.add(yd * yd);
            b_s2.add(signal * signal);
            b_yds.add(yd * signal);
            for (std::size_t r = 0; r < R; ++r) {
                const double zr =
                    zr_streams[r].next() * std::sqrt(cfg.noise_power);
                const double yr = sqrt_gsr[r] * xs + zr;
                // Matched-filter combination of (Y_d stripped of the relay
                // signals, Y_r); its residual given X_r carries the
                // broadcast-cut second moment.
                const double t =
                    mix_denom[r] > 0.0
                        ? (sqrt_gsd * yd_no_relays + sqrt_gsr[r] * yr) /
                              mix_denom[r]
                        : yd_no_relays;
                b_xr2[r].add(xr[r] * xr[r]);
                b_t2[r].add(t * t);
                b_txr[r].add(t * xr[r]);
                b_txs[r].add(t * xs);
            }
        }
        xs2.merge(b_xs2);
        yd2.merge(b_yd2);
        s2.merge(b_s2);
        yds.merge(b_yds);
        for (std::size_t r = 0; r < R; ++r) {
            xr2[r].merge(b_xr2[r]);
            t2[r].merge(b_t2[r]);
            txr[r].merge(b_txr[r]);
            txs[r].merge(b_txs[r]);
        }
    }

    const std::size_t total = run.num_blocks * n;
    MomentReport rep;
    rep.total_samples = total;

    rep.checks.push_back(make_check("var_yd", yd2.value() / total,
                                    var_yd(cfg, rho),
                                    moment_sigma(var_yd(cfg, rho), total)));
    for (std::size_t r = 0; r < R; ++r) {
        rep.checks.push_back(make_check(
            "relay_power[" + std::to_string(r) + "]", xr2[r].value() / total,
            cfg.relay_powers[r], moment_sigma(cfg.relay_powers[r], total)));
        const double pred_bc = cond_cov_broadcast(cfg, r, rho);
        rep.checks.push_back(make_check(
            "bc_residual[" + std::to_string(r) + "]",
            residual_var(t2[r].value(), txr[r].value(), xr2[r].value(), total),
            pred_bc, moment_sigma(pred_bc, total)));
        rep.checks.push_back(make_check(
            "bc_residual_given_xs[" + std::to_string(r) + "]",
            residual_var(t2[r].value(), txs[r].value(), xs2.value(), total),
            cfg.noise_power, moment_sigma(cfg.noise_power, total)));
    }
    rep.checks.push_back(make_check(
        "yd_residual_given_inputs",
        residual_var(yd2.value(), yds.value(), s2.value(), total),
        cfg.noise_power, moment_sigma(cfg.noise_power, total)));
    return rep;
}

MomentReport simulate_af(const SimRun& run) {
    validate_run(run, SimMode::af);
    const NetworkConfig& cfg = run.config;
    const std::size_t R = cfg.relay_count();
    const std::size_t n = run.samples_per_block;
    if (run.gains.beta.size() != R)
        throw ValidationError("AfGains must have one beta per relay");
    if (run.num_blocks < 2)
        throw ValidationError("af mode needs num_blocks >= 2 (one-block delay)");
    for (std::size_t r = 0; r < R; ++r) {
        const double limit = af_gain_limit(cfg, r);
        if (run.gains.beta[r] * run.gains.beta[r] > limit * limit + 1e-12)
            throw ValidationError("beta[" + std::to_string(r) +
                                  "] exceeds the relay power constraint");
    }

    const double sqrt_ps = std::sqrt(cfg.source_power);
    const double sqrt_n = std::sqrt(cfg.noise_power);
    const double sqrt_gsd = std::sqrt(cfg.gain_sd);
    std::vector<double> sqrt_gsr(R), sqrt_grd(R);
    for (std::size_t r = 0; r < R; ++r) {
        sqrt_gsr[r] = std::sqrt(cfg.gains_sr[r]);
        sqrt_grd[r] = std::sqrt(cfg.gains_rd[r]);
    }
    const std::vector<double>& beta = run.gains.beta;

    KahanSum noise2, direct2, combined2;
    std::vector<KahanSum> xr2(R), branch2(R);

    std::vector<double> prev_xs(n), prev_zr(R * n), cur_xs(n), cur_zr(R * n);
    for (std::size_t b = 0; b < run.num_blocks; ++b) {
        NormalStream xs_stream(stream_seed(run.seed, 1, b));
        NormalStream zd_stream(stream_seed(run.seed, 2 + R, b));
        for (std::size_t i = 0; i < n; ++i)
            cur_xs[i] = sqrt_ps * xs_stream.next();
        for (std::size_t r = 0; r < R; ++r) {
            NormalStream zr_stream(stream_seed(run.seed, 2 + r, b));
            for (std::size_t i = 0; i < n; ++i)
                cur_zr[r * n + i] = sqrt_n * zr_stream.next();
        }

        if (b > 0) {
            KahanSum b_noise2, b_direct2, b_combined2;
            std::vector<KahanSum> b_xr2(R), b_branch2(R);
            for (std::size_t i = 0; i < n; ++i) {
                const double zd = sqrt_n * zd_stream.next();
                double noise_branch = zd;
                double relay_signal = 0.0;
                for (std::size_t r = 0; r < R; ++r) {
                    const double yr_prev =
                        sqrt_gsr[r] * prev_xs[i] + prev_zr[r * n + i];
                    const double xr = beta[r] * yr_prev;
                    b_xr2[r].add(xr * xr);
                    const double sig =
                        beta[r] * sqrt_gsr[r] * sqrt_grd[r] * prev_xs[i];
                    b_branch2[r].add(sig * sig);
                    relay_signal += sig;
                    noise_branch += beta[r] * sqrt_grd[r] * prev_zr[r * n + i];
                }
                const double direct = sqrt_gsd * cur_xs[i];
                b_noise2.add(noise_branch * noise_branch);
                b_direct2.add(direct * direct);
                const double combined = direct + relay_signal;
                b_combined2.add(combined * combined);
            }
            noise2.merge(b_noise2);
            direct2.merge(b_direct2);
            combined2.merge(b_combined2);
            for (std::size_t r = 0; r < R; ++r) {
                xr2[r].merge(b_xr2[r]);
                branch2[r].merge(b_branch2[r]);
            }
        }
        std::swap(prev_xs, cur_xs);
        std::swap(prev_zr, cur_zr);
    }

    const std::size_t total = (run.num_blocks - 1) * n;
    MomentReport rep;
    rep.total_samples = total;

    double beta_branch_amp = 0.0;
    double noise_scale = 1.0;
    for (std::size_t r = 0; r < R; ++r) {
        const double pred_xr =
            beta[r] * beta[r] *
            (cfg.gains_sr[r] * cfg.source_power + cfg.noise_power);
        rep.checks.push_back(make_check("relay_power[" + std::to_string(r) +
                                            "]",
                                        xr2[r].value() / total, pred_xr,
                                        moment_sigma(pred_xr, total)));
        const double pred_branch = beta[r] * beta[r] * cfg.gains_sr[r] *
                                   cfg.gains_rd[r] * cfg.source_power;
        rep.checks.push_back(make_check(
            "branch_relay[" + std::to_string(r) + "]",
            branch2[r].value() / total, pred_branch,
            moment_sigma(pred_branch, total)));
        beta_branch_amp += beta[r] * sqrt_gsr[r] * sqrt_grd[r];
        noise_scale += beta[r] * beta[r] * cfg.gains_rd[r];
    }

    const double pred_noise = noise_scale * cfg.noise_power;
    rep.checks.push_back(make_check("noise_floor", noise2.value() / total,
                                    pred_noise,
                                    moment_sigma(pred_noise, total)));
    const double pred_direct = cfg.gain_sd * cfg.source_power;
    rep.checks.push_back(make_check("branch_direct", direct2.value() / total,
                                    pred_direct,
                                    moment_sigma(pred_direct, total)));
    // Adjacent blocks carry independent symbols, so the direct and relayed
    // source branches add in power.
    const double pred_combined =
        (cfg.gain_sd + beta_branch_amp * beta_branch_amp) * cfg.source_power;
    rep.checks.push_back(make_check("signal_combined",
                                    combined2.value() / total, pred_combined,
                                    moment_sigma(pred_combined, total)));
    // The rate formula's reading sums the branch amplitudes within one
    // block; reported so the gap to the measured power stays visible.
    const double amp = sqrt_gsd + beta_branch_amp;
    rep.checks.push_back(make_check("signal_coherent_reading",
                                    combined2.value() / total,
                                    amp * amp * cfg.source_power,
                                    moment_sigma(pred_combined, total),
                                    /*informational=*/true));
    return rep;
}

} // namespace relaycap
