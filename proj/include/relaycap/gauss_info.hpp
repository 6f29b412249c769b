#ifndef RELAYCAP_GAUSS_INFO_HPP
#define RELAYCAP_GAUSS_INFO_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relaycap/channel_model.hpp"

namespace relaycap {

// Relative eigenvalue threshold for pseudo-determinants and conditioning:
// eigenvalues below kPdetRelTolerance * trace(block) are treated as zero.
inline constexpr double kPdetRelTolerance = 1e-12;

// Off-diagonal relay correlation used when a caller wants "fully correlated"
// relays without a singular transmit covariance. Small enough that the
// residual relay randomness stays below the pseudo-determinant threshold in
// every conditioning block (the residual eigenvalues scale as eps * P_r,
// i.e. eps/R relative to the block trace), so rate evaluations agree with
// the exact rho = 1 closed forms to well under 1e-6 bits for gains up to 10,
// powers up to 1 W and N >= 1e-6 W.
inline constexpr double kFullCorrelationEpsilon = 1e-15;

// Enumeration guard for the all-cuts oracle.
inline constexpr std::size_t kMaxOracleRelays = 20;

// Thrown when a conditioning block has an eigenvalue too negative to be
// rounding (the matrix is not a covariance). Carries the offending value.
class NumericalDegeneracyError : public std::runtime_error {
public:
    NumericalDegeneracyError(const std::string& what, double eigenvalue)
        : std::runtime_error(what), offending_eigenvalue(eigenvalue) {}
    double offending_eigenvalue;
};

// Thrown when an operation is asked for more than it supports (R > 20 cuts).
class CapabilityError : public std::invalid_argument {
public:
    explicit CapabilityError(const std::string& what)
        : std::invalid_argument(what) {}
};

// Correlation structure of the transmit signals: rho_sr[r] between X_s and
// X_r, rho_rr(r, r') between relay outputs. rho_rr is symmetric with unit
// diagonal; the implied (R+1)x(R+1) correlation matrix must be PSD.
struct CorrelationState {
    std::vector<double> rho_sr;
    Eigen::MatrixXd rho_rr;

    // Throws ValidationError on size mismatch or out-of-range entries, and
    // if the implied correlation matrix has an eigenvalue below -1e-9.
    void validate(std::size_t relay_count) const;

    // Common rho_sr and common relay-relay correlation.
    static CorrelationState uniform(std::size_t relay_count, double rho_sr,
                                    double rho_rr);

    // Fully correlated relays, regularized: off-diagonal relay correlation
    // 1 - kFullCorrelationEpsilon.
    static CorrelationState full_relay(std::size_t relay_count, double rho_sr);
};

// Joint covariance of (X_s, X_1..X_R, Y_1..Y_R, Y_d), entries in watts.
struct JointGaussian {
    Eigen::MatrixXd covariance;
    std::size_t relays = 0;

    std::size_t dim() const { return 2 * relays + 2; }
    std::size_t x_s() const { return 0; }
    std::size_t x_r(std::size_t r) const { return 1 + r; }
    std::size_t y_r(std::size_t r) const { return 1 + relays + r; }
    std::size_t y_d() const { return 2 * relays + 1; }
};

// A network cut: bit r of transmit_mask set means relay r sits on the
// transmit side (the set T). The source is always on the transmit side and
// the destination on the receive side. Ties between cuts are broken toward
// the numerically smallest mask.
struct Cut {
    std::uint32_t transmit_mask = 0;

    bool contains(std::size_t r) const {
        return (transmit_mask >> r) & 1u;
    }
    std::vector<std::size_t> transmit_relays(std::size_t relay_count) const;
};

// Assembles the joint covariance from the signal model
//   Y_r = sqrt(g_sr) X_s + Z_r,   Y_d = sqrt(g_sd) X_s + sum_r sqrt(g_rd) X_r + Z_d
// with independent noises of variance N.
JointGaussian build_joint(const NetworkConfig& cfg,
                          const CorrelationState& corr);

// Var(Y_d) closed form under fully correlated relays and common rho:
//   g_sd P_s + 2 rho sum_r sqrt(g_sd P_s g_rd P_r)
//   + sum_r sum_r' sqrt(g_rd P_r g_r'd P_r') + N.
double var_yd(const NetworkConfig& cfg, double rho);

// Scalar conditional second moment of the broadcast cut through relay r:
//   (g_sd + g_sr) P_s (1 - rho^2) + N.
double cond_cov_broadcast(const NetworkConfig& cfg, std::size_t relay_index,
                          double rho);

// I(A; B | C) in bits for disjoint index sets over the joint's variables,
// via Schur-complement conditional covariances and pseudo-determinants
// (eigenvalues above kPdetRelTolerance * trace). Clamped to >= 0.
double mutual_information(const JointGaussian& joint,
                          const std::vector<std::size_t>& A,
                          const std::vector<std::size_t>& B,
                          const std::vector<std::size_t>& C);

// Value of one cut: I(X_s X_T ; Y_d Y_{T^c} | X_{T^c}).
double aref_cut_value(const NetworkConfig& cfg, const CorrelationState& corr,
                      const Cut& cut);

struct MinCut {
    double bits = 0.0;
    Cut cut;
};

// Exhaustive minimum over all 2^R cuts. R <= kMaxOracleRelays.
MinCut aref_min_cut(const NetworkConfig& cfg, const CorrelationState& corr);

} // namespace relaycap

#endif
