#include "relaycap/gauss_info.hpp"
#include "relaycap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relaycap {

namespace {

using MatLd = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VecLd = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

constexpr long double kPdetRelLd = static_cast<long double>(kPdetRelTolerance);

// Eigenvalues this far below zero (relative to the trace) mean the input was
// never a covariance matrix; smaller negatives are rounding and are truncated.
constexpr long double kIndefiniteRel = 1e-9L;

MatLd gather(const MatLd& m, const std::vector<std::size_t>& rows,
             const std::vector<std::size_t>& cols) {
    MatLd out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(i, j) = m(rows[i], cols[j]);
    return out;
}

long double log2_pdet(const MatLd& m) {
    if (m.rows() == 0)
        return 0.0L;
    Eigen::SelfAdjointEigenSolver<MatLd> es(m, Eigen::EigenvaluesOnly);
    const long double trace = m.trace();
    const long double tau = kPdetRelLd * trace;
    long double acc = 0.0L;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const long double lam = es.eigenvalues()[i];
        if (lam < -kIndefiniteRel * std::max(trace, 0.0L))
            throw NumericalDegeneracyError(
                "block has a negative eigenvalue beyond rounding tolerance",
                static_cast<double>(lam));
        if (lam > tau)
            acc += std::log2(lam);
    }
    return acc;
}

// Conditional covariance Sigma_BB - Sigma_BC pinv(Sigma_CC) Sigma_CB via
// rank-one downdates in the eigenbasis of the conditioning block. The naive
// explicit-pseudoinverse product cancels catastrophically when the signal
// dwarfs the noise floor; subtracting w w^T / lambda per retained direction
// keeps the subtraction accurate.
MatLd cond_cov(const MatLd& joint, const std::vector<std::size_t>& B,
               const std::vector<std::size_t>& C) {
    MatLd sbb = gather(joint, B, B);
    if (C.empty())
        return sbb;
    const MatLd scc = gather(joint, C, C);
    const MatLd sbc = gather(joint, B, C);
    Eigen::SelfAdjointEigenSolver<MatLd> es(scc);
    const long double trace = scc.trace();
    const long double tau = kPdetRelLd * trace;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const long double lam = es.eigenvalues()[k];
        if (lam < -kIndefiniteRel * std::max(trace, 0.0L))
            throw NumericalDegeneracyError(
                "conditioning block has a negative eigenvalue beyond rounding "
                "tolerance",
                static_cast<double>(lam));
        if (lam <= tau)
            continue;
        const VecLd w = sbc * es.eigenvectors().col(k);
        sbb.noalias() -= (w * w.transpose()) / lam;
    }
    return sbb;
}

void check_disjoint(const JointGaussian& joint,
                    const std::vector<std::size_t>& A,
                    const std::vector<std::size_t>& B,
                    const std::vector<std::size_t>& C) {
    std::vector<char> seen(joint.dim(), 0);
    auto mark = [&](const std::vector<std::size_t>& set, const char* name) {
        for (std::size_t i : set) {
            if (i >= joint.dim())
                throw ValidationError(std::string(name) +
                                      " contains an out-of-range index");
            if (seen[i])
                throw ValidationError(
                    "index sets A, B, C must be pairwise disjoint");
            seen[i] = 1;
        }
    };
    mark(A, "A");
    mark(B, "B");
    mark(C, "C");
}

} // namespace

void CorrelationState::validate(std::size_t relay_count) const {
    const auto r = static_cast<Eigen::Index>(relay_count);
    if (rho_sr.size() != relay_count)
        throw ValidationError("rho_sr must have one entry per relay");
    if (rho_rr.rows() != r || rho_rr.cols() != r)
        throw ValidationError("rho_rr must be R x R");
    for (double v : rho_sr)
        if (!(std::abs(v) <= 1.0))
            throw ValidationError("rho_sr entries must lie in [-1, 1]");
    for (Eigen::Index i = 0; i < r; ++i) {
        if (rho_rr(i, i) != 1.0)
            throw ValidationError("rho_rr diagonal must be 1");
        for (Eigen::Index j = 0; j < r; ++j) {
            if (!(std::abs(rho_rr(i, j)) <= 1.0))
                throw ValidationError("rho_rr entries must lie in [-1, 1]");
            if (rho_rr(i, j) != rho_rr(j, i))
                throw ValidationError("rho_rr must be symmetric");
        }
    }
    if (relay_count == 0)
        return;
    Eigen::MatrixXd corr(r + 1, r + 1);
    corr(0, 0) = 1.0;
    for (Eigen::Index i = 0; i < r; ++i) {
        corr(0, i + 1) = rho_sr[static_cast<std::size_t>(i)];
        corr(i + 1, 0) = corr(0, i + 1);
        for (Eigen::Index j = 0; j < r; ++j)
            corr(i + 1, j + 1) = rho_rr(i, j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corr,
                                                      Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-9)
        throw ValidationError(
            "implied transmit correlation matrix is not PSD (min eigenvalue " +
            std::to_string(min_eig) + ")");
}

CorrelationState CorrelationState::uniform(std::size_t relay_count,
                                           double rho_sr, double rho_rr) {
    CorrelationState c;
    c.rho_sr.assign(relay_count, rho_sr);
    const auto r = static_cast<Eigen::Index>(relay_count);
    c.rho_rr = Eigen::MatrixXd::Constant(r, r, rho_rr);
    c.rho_rr.diagonal().setOnes();
    return c;
}

CorrelationState CorrelationState::full_relay(std::size_t relay_count,
                                              double rho_sr) {
    return uniform(relay_count, rho_sr, 1.0 - kFullCorrelationEpsilon);
}

std::vector<std::size_t> Cut::transmit_relays(std::size_t relay_count) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < relay_count; ++r)
        if (contains(r))
            out.push_back(r);
    return out;
}

JointGaussian build_joint(const NetworkConfig& cfg,
                          const CorrelationState& corr) {
    cfg.validate();
    const std::size_t R = cfg.relay_count();
    corr.validate(R);

    const auto r = static_cast<Eigen::Index>(R);
    // Latent vector L = (X_s, X_1..X_R, Z_1..Z_R, Z_d).
    Eigen::MatrixXd cov_l = Eigen::MatrixXd::Zero(2 * r + 2, 2 * r + 2);
    cov_l(0, 0) = cfg.source_power;
    for (Eigen::Index i = 0; i < r; ++i) {
        const std::size_t ri = static_cast<std::size_t>(i);
        cov_l(1 + i, 1 + i) = cfg.relay_powers[ri];
        cov_l(0, 1 + i) = corr.rho_sr[ri] *
                          std::sqrt(cfg.source_power * cfg.relay_powers[ri]);
        cov_l(1 + i, 0) = cov_l(0, 1 + i);
        for (Eigen::Index j = 0; j < r; ++j)
            if (i != j)
                cov_l(1 + i, 1 + j) =
                    corr.rho_rr(i, j) *
                    std::sqrt(cfg.relay_powers[ri] *
                              cfg.relay_powers[static_cast<std::size_t>(j)]);
    }
    for (Eigen::Index i = 0; i < r + 1; ++i)
        cov_l(1 + r + i, 1 + r + i) = cfg.noise_power;

    // V = (X_s, X_r.., Y_r.., Y_d) = H L.
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * r + 2, 2 * r + 2);
    for (Eigen::Index i = 0; i < 1 + r; ++i)
        h(i, i) = 1.0;
    for (Eigen::Index i = 0; i < r; ++i) {
        h(1 + r + i, 0) = std::sqrt(cfg.gains_sr[static_cast<std::size_t>(i)]);
        h(1 + r + i, 1 + r + i) = 1.0; // Z_r
    }
    h(2 * r + 1, 0) = std::sqrt(cfg.gain_sd);
    for (Eigen::Index i = 0; i < r; ++i)
        h(2 * r + 1, 1 + i) =
            std::sqrt(cfg.gains_rd[static_cast<std::size_t>(i)]);
    h(2 * r + 1, 2 * r + 1) = 1.0; // Z_d

    JointGaussian joint;
    joint.relays = R;
    joint.covariance = h * cov_l * h.transpose();
    // Symmetrize away product rounding.
    joint.covariance =
        ((joint.covariance + joint.covariance.transpose()) / 2.0).eval();
    return joint;
}

double var_yd(const NetworkConfig& cfg, double rho) {
    if (!(std::abs(rho) <= 1.0))
        throw ValidationError("rho must lie in [-1, 1]");
    double v = cfg.gain_sd * cfg.source_power + cfg.noise_power;
    double coherent = 0.0;
    for (std::size_t i = 0; i < cfg.relay_count(); ++i) {
        const double grd_pr = cfg.gains_rd[i] * cfg.relay_powers[i];
        v += 2.0 * rho * std::sqrt(cfg.gain_sd * cfg.source_power * grd_pr);
        coherent += std::sqrt(grd_pr);
    }
    return v + coherent * coherent;
}

double cond_cov_broadcast(const NetworkConfig& cfg, std::size_t relay_index,
                          double rho) {
    if (relay_index >= cfg.relay_count())
        throw ValidationError("relay_index out of range");
    if (!(std::abs(rho) <= 1.0))
        throw ValidationError("rho must lie in [-1, 1]");
    return (cfg.gain_sd + cfg.gains_sr[relay_index]) * cfg.source_power *
               (1.0 - rho * rho) +
           cfg.noise_power;
}

double mutual_information(const JointGaussian& joint,
                          const std::vector<std::size_t>& A,
                          const std::vector<std::size_t>& B,
                          const std::vector<std::size_t>& C) {
    check_disjoint(joint, A, B, C);
    const MatLd j = joint.covariance.cast<long double>();
    std::vector<std::size_t> ac = C;
    ac.insert(ac.end(), A.begin(), A.end());
    const long double num = log2_pdet(cond_cov(j, B, C));
    const long double den = log2_pdet(cond_cov(j, B, ac));
    const long double bits = 0.5L * (num - den);
    return std::max(0.0, static_cast<double>(bits));
}

double aref_cut_value(const NetworkConfig& cfg, const CorrelationState& corr,
                      const Cut& cut) {
    const std::size_t R = cfg.relay_count();
    if (cut.transmit_mask >> R)
        throw ValidationError("cut references relays beyond R");
    const JointGaussian joint = build_joint(cfg, corr);
    std::vector<std::size_t> A{joint.x_s()};
    std::vector<std::size_t> B{joint.y_d()};
    std::vector<std::size_t> C;
    for (std::size_t r = 0; r < R; ++r) {
        if (cut.contains(r)) {
            A.push_back(joint.x_r(r));
        } else {
            B.push_back(joint.y_r(r));
            C.push_back(joint.x_r(r));
        }
    }
    return mutual_information(joint, A, B, C);
}

MinCut aref_min_cut(const NetworkConfig& cfg, const CorrelationState& corr) {
    cfg.validate();
    const std::size_t R = cfg.relay_count();
    if (R > kMaxOracleRelays)
        throw CapabilityError("cut enumeration supports at most " +
                              std::to_string(kMaxOracleRelays) + " relays");
    corr.validate(R);

    // Input covariance K of (X_s, X_1..X_R) in extended precision.
    const auto n_in = static_cast<Eigen::Index>(R + 1);
    MatLd k(n_in, n_in);
    k(0, 0) = static_cast<long double>(cfg.source_power);
    for (Eigen::Index i = 0; i < n_in - 1; ++i) {
        const std::size_t ri = static_cast<std::size_t>(i);
        const long double pi = cfg.relay_powers[ri];
        k(1 + i, 1 + i) = pi;
        k(0, 1 + i) = static_cast<long double>(corr.rho_sr[ri]) *
                      std::sqrt(static_cast<long double>(cfg.source_power) * pi);
        k(1 + i, 0) = k(0, 1 + i);
        for (Eigen::Index j = 0; j < n_in - 1; ++j)
            if (i != j)
                k(1 + i, 1 + j) =
                    static_cast<long double>(corr.rho_rr(i, j)) *
                    std::sqrt(pi * static_cast<long double>(
                                       cfg.relay_powers[static_cast<std::size_t>(
                                           j)]));
    }

    const long double noise = cfg.noise_power;
    const long double log2_noise = std::log2(noise);
    const long double sqrt_gsd = std::sqrt(static_cast<long double>(cfg.gain_sd));
    std::vector<long double> sqrt_gsr(R), sqrt_grd(R);
    for (std::size_t i = 0; i < R; ++i) {
        sqrt_gsr[i] = std::sqrt(static_cast<long double>(cfg.gains_sr[i]));
        sqrt_grd[i] = std::sqrt(static_cast<long double>(cfg.gains_rd[i]));
    }

    // For every cut the receive side given all transmit signals is pure
    // noise, so the denominator pseudo-determinant is (|T^c|+1) log2(N)
    // analytically; only the numerator block Sigma_{B|C} needs arithmetic.
    long double best = std::numeric_limits<long double>::infinity();
    std::uint32_t best_mask = 0;
    std::vector<std::size_t> t_set, w_set;
    Eigen::SelfAdjointEigenSolver<MatLd> es_w;
    const std::uint32_t n_cuts = 1u << R;

    for (std::uint32_t mask = 0; mask < n_cuts; ++mask) {
        t_set.clear();
        w_set.clear();
        for (std::size_t r = 0; r < R; ++r)
            ((mask >> r) & 1u ? t_set : w_set).push_back(r);
        const auto nt = static_cast<Eigen::Index>(t_set.size());
        const auto nw = static_cast<Eigen::Index>(w_set.size());

        // Conditional covariance of (X_s, X_T) given X_W in input space.
        MatLd sig_a(nt + 1, nt + 1);
        sig_a(0, 0) = k(0, 0);
        for (Eigen::Index i = 0; i < nt; ++i) {
            const auto ti = static_cast<Eigen::Index>(1 + t_set[i]);
            sig_a(0, 1 + i) = k(0, ti);
            sig_a(1 + i, 0) = k(ti, 0);
            for (Eigen::Index j = 0; j < nt; ++j)
                sig_a(1 + i, 1 + j) =
                    k(ti, static_cast<Eigen::Index>(1 + t_set[j]));
        }
        if (nw > 0) {
            MatLd kww(nw, nw);
            MatLd kaw(nt + 1, nw);
            for (Eigen::Index a = 0; a < nw; ++a) {
                const auto wa = static_cast<Eigen::Index>(1 + w_set[a]);
                kaw(0, a) = k(0, wa);
                for (Eigen::Index i = 0; i < nt; ++i)
                    kaw(1 + i, a) =
                        k(static_cast<Eigen::Index>(1 + t_set[i]), wa);
                for (Eigen::Index b = 0; b < nw; ++b)
                    kww(a, b) = k(wa, static_cast<Eigen::Index>(1 + w_set[b]));
            }
            es_w.compute(kww);
            const long double trace = kww.trace();
            const long double tau = kPdetRelLd * trace;
            for (Eigen::Index e = 0; e < nw; ++e) {
                const long double lam = es_w.eigenvalues()[e];
                if (lam < -kIndefiniteRel * std::max(trace, 0.0L))
                    throw NumericalDegeneracyError(
                        "transmit covariance is not PSD",
                        static_cast<double>(lam));
                if (lam <= tau)
                    continue;
                const VecLd w = kaw * es_w.eigenvectors().col(e);
                sig_a.noalias() -= (w * w.transpose()) / lam;
            }
        }

        // Map (X_s, X_T) to the receive side B = (Y_w for w in W, Y_d).
        MatLd m = MatLd::Zero(nw + 1, nt + 1);
        for (Eigen::Index a = 0; a < nw; ++a)
            m(a, 0) = sqrt_gsr[w_set[a]];
        m(nw, 0) = sqrt_gsd;
        for (Eigen::Index i = 0; i < nt; ++i)
            m(nw, 1 + i) = sqrt_grd[t_set[i]];

        MatLd sig_b = m * sig_a * m.transpose();
        sig_b.diagonal().array() += noise;

        const long double value =
            0.5L * (log2_pdet(sig_b) -
                    static_cast<long double>(nw + 1) * log2_noise);
        // Masks ascend, so keeping the incumbent on sub-1e-12 improvements
        // resolves rounding-level ties toward the smallest mask while still
        // reporting the exact minimum value.
        if (value < best - 1e-12L) {
            best = value;
            best_mask = mask;
        } else if (value < best) {
            best = value;
        }
    }
    return MinCut{std::max(0.0, static_cast<double>(best)), Cut{best_mask}};
}

} // namespace relaycap
