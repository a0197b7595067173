// SPDX-License-Identifier: Apache-2.0
//
// The generalized binomial distribution B(2B, mu, m): the photon-count law of
// the coherent states attached to the m-th spherical Landau level with field
// strength B.  Support is j = 0..2B+2m with
//
//   p_j = m!(2B+m)!/(j!(2B+2m-j)!) mu^{j-m} (1-mu)^{2B+m-j}
//         * [P_m^{(j-m, 2B+m-j)}(1-2mu)]^2,
//
// where the formally negative powers of mu (j < m) and 1-mu (j > 2B+m) cancel
// analytically against zeros of the squared Jacobi factor; the implementation
// always evaluates a representation in which no negative power appears, so the
// endpoints mu = 0, 1 are exact point masses.  m = 0 reduces to Binomial(2B, mu).

#ifndef SPHBIN_GBD_HPP
#define SPHBIN_GBD_HPP

#include <Eigen/Core>
#include <complex>
#include <optional>

namespace sphbin::gbd {

enum class Regime { SubPoissonian, Poissonian, SuperPoissonian, Degenerate };

/// Token form used in machine-readable output: SUB_POISSONIAN, POISSONIAN,
/// SUPER_POISSONIAN, DEGENERATE.
const char* to_string(Regime regime);

/// Distribution triple (B, m, mu); validates B, m >= 0 and mu in [0, 1].
struct GbdParams {
    int B;
    int m;
    double mu;

    GbdParams(int B_, int m_, double mu_);

    /// Number of outcomes d_{B,m} = 2B + 2m + 1.
    int support_size() const { return 2 * B + 2 * m + 1; }
};

/// Full probability vector with cumulative sums; immutable after construction.
struct PmfTable {
    GbdParams params;
    Eigen::VectorXd probs;
    Eigen::VectorXd cumulative;
};

struct MomentSummary {
    double mean;
    double variance;
    std::optional<double> mandel_q;  // empty when the mean vanishes
    Regime regime;
};

/// Critical radii/parameters separating sub- and super-Poissonian statistics
/// (m >= 1).  r_minus <= 1 <= r_plus and mu_pm = r_pm^2 / (1 + r_pm^2).
struct RegimeBoundary {
    double r_minus;
    double r_plus;
    double mu_minus;
    double mu_plus;
};

/// mu = r^2/(1+r^2); maps r = 0 to 0, r = infinity to 1.
double mu_from_radius(double r);

/// Inverse of mu_from_radius; mu = 1 maps to infinity.
double radius_from_mu(double mu);

/// Probability of outcome j.  Throws std::out_of_range outside the support.
double pmf(const GbdParams& params, int j);

PmfTable pmf_table(const GbdParams& params);

/// P(X <= j).
double cdf(const GbdParams& params, int j);

/// Inverse-transform sampling: smallest j with cumulative(j) >= u.  The
/// library owns no randomness source; callers supply uniforms u in [0, 1).
int sample(const PmfTable& table, double u);
int sample(const GbdParams& params, double u);

/// E(X) = m + 2B mu (closed form).
double mean(const GbdParams& params);

/// Var(X) = 2B mu(1-mu) + 2 mu(1-mu) m(2B+m+1) (closed form).
double variance(const GbdParams& params);

/// Mandel parameter Q = Var/E - 1; empty when E = 0 (B = m = 0, or m = 0
/// with mu = 0), where Q is genuinely undefined.
std::optional<double> mandel_q(const GbdParams& params);

MomentSummary moments(const GbdParams& params);

/// Characteristic function by direct summation sum_j e^{ijt} p_j.
std::complex<double> char_fn_direct(const PmfTable& table, double t);
std::complex<double> char_fn_direct(const GbdParams& params, double t);

/// Closed form
///   C_m(t) = e^{imt} ((1-mu) + mu e^{it})^{2B}
///            * P_m^{(0,2B)}(1 - 4 mu(1-mu)(1-cos t)).
std::complex<double> char_fn_closed(const GbdParams& params, double t);

/// Boundary radii for m >= 1, computed from the quadratic
///   T_m(mu) = 2(B + m(2B+m+1)) mu^2 - 2 m(2B+m+1) mu + m
/// whose sign is the sign of -Q; cross-checked against the closed form
/// r_pm^2 = m (1 pm sqrt(1 - 1/(m(2B+m)))).  Throws std::domain_error for
/// m = 0 (no finite boundary exists).
RegimeBoundary regime_boundaries(int B, int m);

/// Photon-statistics regime at |z| = r.  Boundaries are matched with
/// absolute tolerance 1e-12 on r.  For m = 0 the statistics are
/// sub-Poissonian for every r > 0 (Q = -mu); the regime is DEGENERATE
/// wherever the mean vanishes (r = 0, or B = m = 0).
Regime classify(int B, int m, double r);

/// Total-variation distance between Binomial(2B, lambda/2B) and
/// Poisson(lambda), the Poisson tail truncated once its cdf exceeds
/// 1 - 1e-15.  Requires 0 < lambda <= 2B.
double poisson_tv_distance(int B, double lambda);

}  // namespace sphbin::gbd

#endif  // SPHBIN_GBD_HPP
