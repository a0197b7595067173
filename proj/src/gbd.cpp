// SPDX-License-Identifier: Apache-2.0

#include "sphbin/gbd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sphbin/detail.hpp"
#include "sphbin/specfun.hpp"

namespace sphbin::gbd {

using detail::cpow_int;
using detail::sq;
using specfun::jacobi;
using specfun::log_factorial;

namespace {

constexpr double kBoundaryRadiusTol = 1e-12;

void check_support_index(const GbdParams& params, int j)
{
    if (j < 0 || j > 2 * params.B + 2 * params.m)
        throw std::out_of_range("gbd: outcome index j = " + std::to_string(j) +
                                " outside support 0.." +
                                std::to_string(2 * params.B + 2 * params.m));
}

// log(base^e) with 0^0 = 1; exp(-inf + finite) = 0 handles base = 0, e > 0.
double power_log(double base, int exponent)
{
    return exponent == 0 ? 0.0 : exponent * std::log(base);
}

}  // namespace

const char* to_string(Regime regime)
{
    switch (regime) {
        case Regime::SubPoissonian: return "SUB_POISSONIAN";
        case Regime::Poissonian: return "POISSONIAN";
        case Regime::SuperPoissonian: return "SUPER_POISSONIAN";
        case Regime::Degenerate: return "DEGENERATE";
    }
    return "UNKNOWN";
}

GbdParams::GbdParams(int B_, int m_, double mu_) : B(B_), m(m_), mu(mu_)
{
    if (B < 0)
        throw std::domain_error("GbdParams: B must satisfy B >= 0, got " + std::to_string(B));
    if (m < 0)
        throw std::domain_error("GbdParams: m must satisfy m >= 0, got " + std::to_string(m));
    if (!(mu >= 0.0 && mu <= 1.0))
        throw std::domain_error("GbdParams: mu must satisfy 0 <= mu <= 1, got " +
                                std::to_string(mu));
}

double mu_from_radius(double r)
{
    if (std::isnan(r) || r < 0.0)
        throw std::domain_error("mu_from_radius: radius must satisfy r >= 0");
    if (std::isinf(r)) return 1.0;
    if (r < 1.0) return r * r / (1.0 + r * r);
    return 1.0 / (1.0 + 1.0 / (r * r));
}

double radius_from_mu(double mu)
{
    if (!(mu >= 0.0 && mu <= 1.0))
        throw std::domain_error("radius_from_mu: mu must satisfy 0 <= mu <= 1");
    if (mu == 1.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(mu / (1.0 - mu));
}

double pmf(const GbdParams& params, int j)
{
    check_support_index(params, j);
    const int B = params.B, m = params.m;
    const double mu = params.mu, nu = 1.0 - params.mu;
    const double x = 1.0 - 2.0 * mu;

    // The weight (factorial ratio times mu/nu powers) is assembled in log
    // space and exponentiated once, so central-binomial-sized ratios at
    // large B never overflow on their own.
    if (j < m) {
        // P_m^{(j-m, 2B+m-j)} has a zero of order m-j at mu = 0; after the
        // cancellation (Szego 4.22.2) the branch reads
        //   p_j = j!(2B+2m-j)!/((2B+m)! m!) mu^{m-j} (1-mu)^{2B+m-j}
        //         [P_j^{(m-j, 2B+m-j)}(1-2mu)]^2.
        const double log_w = log_factorial(j) + log_factorial(2 * B + 2 * m - j) -
                             log_factorial(2 * B + m) - log_factorial(m) +
                             power_log(mu, m - j) + power_log(nu, 2 * B + m - j);
        return std::exp(log_w) * sq(jacobi(j, double(m - j), double(2 * B + m - j), x));
    }
    if (j <= 2 * B + m) {
        const double log_w = log_factorial(m) + log_factorial(2 * B + m) - log_factorial(j) -
                             log_factorial(2 * B + 2 * m - j) + power_log(mu, j - m) +
                             power_log(nu, 2 * B + m - j);
        return std::exp(log_w) * sq(jacobi(m, double(j - m), double(2 * B + m - j), x));
    }
    // j > 2B+m: the mirrored cancellation in the second Jacobi slot,
    //   p_j = j!(2B+2m-j)!/((2B+m)! m!) mu^{j-m} (1-mu)^{j-2B-m}
    //         [P_{2B+2m-j}^{(j-2B-m, j-m)}(2mu-1)]^2.
    const int q = j - 2 * B - m;
    const double log_w = log_factorial(j) + log_factorial(2 * B + 2 * m - j) -
                         log_factorial(2 * B + m) - log_factorial(m) + power_log(mu, j - m) +
                         power_log(nu, q);
    return std::exp(log_w) * sq(jacobi(2 * B + 2 * m - j, double(q), double(j - m), -x));
}

PmfTable pmf_table(const GbdParams& params)
{
    const int d = params.support_size();
    Eigen::VectorXd probs(d);
    Eigen::VectorXd cumulative(d);
    double running = 0.0;
    for (int j = 0; j < d; ++j) {
        const double p = std::clamp(pmf(params, j), 0.0, 1.0);
        probs[j] = p;
        running += p;
        cumulative[j] = running;
    }
    return PmfTable{params, std::move(probs), std::move(cumulative)};
}

double cdf(const GbdParams& params, int j)
{
    check_support_index(params, j);
    return pmf_table(params).cumulative[j];
}

int sample(const PmfTable& table, double u)
{
    if (!(u >= 0.0 && u < 1.0))
        throw std::domain_error("sample: uniform draw must satisfy 0 <= u < 1");
    const double* begin = table.cumulative.data();
    const double* end = begin + table.cumulative.size();
    const double* it = std::lower_bound(begin, end, u);
    if (it == end) return static_cast<int>(table.cumulative.size()) - 1;
    return static_cast<int>(it - begin);
}

int sample(const GbdParams& params, double u) { return sample(pmf_table(params), u); }

double mean(const GbdParams& params) { return params.m + 2.0 * params.B * params.mu; }

double variance(const GbdParams& params)
{
    const double w = params.mu * (1.0 - params.mu);
    return 2.0 * params.B * w + 2.0 * w * params.m * (2 * params.B + params.m + 1);
}

std::optional<double> mandel_q(const GbdParams& params)
{
    const double e = mean(params);
    if (e == 0.0) return std::nullopt;
    return variance(params) / e - 1.0;
}

MomentSummary moments(const GbdParams& params)
{
    return MomentSummary{mean(params), variance(params), mandel_q(params),
                         classify(params.B, params.m, radius_from_mu(params.mu))};
}

std::complex<double> char_fn_direct(const PmfTable& table, double t)
{
    // e^{ijt} by incremental phase multiplication; drift over a support of a
    // few hundred outcomes stays far below the check tolerances.
    const std::complex<double> step = std::polar(1.0, t);
    std::complex<double> phase(1.0, 0.0);
    std::complex<double> sum(0.0, 0.0);
    for (int j = 0; j < table.probs.size(); ++j) {
        sum += table.probs[j] * phase;
        phase *= step;
    }
    return sum;
}

std::complex<double> char_fn_direct(const GbdParams& params, double t)
{
    return char_fn_direct(pmf_table(params), t);
}

std::complex<double> char_fn_closed(const GbdParams& params, double t)
{
    const double mu = params.mu;
    const std::complex<double> bernoulli = (1.0 - mu) + mu * std::polar(1.0, t);
    const double arg = 1.0 - 4.0 * mu * (1.0 - mu) * (1.0 - std::cos(t));
    return std::polar(1.0, params.m * t) * cpow_int(bernoulli, 2 * params.B) *
           jacobi(params.m, 0.0, double(2 * params.B), arg);
}

RegimeBoundary regime_boundaries(int B, int m)
{
    if (B < 0) throw std::domain_error("regime_boundaries: B must satisfy B >= 0");
    if (m < 1)
        throw std::domain_error(
            "regime_boundaries: m must satisfy m >= 1 (no finite boundary exists for m = 0)");

    // Roots of T_m(mu) = 2(B + mS) mu^2 - 2mS mu + m with S = 2B+m+1, via the
    // cancellation-free quadratic formula.
    const double S = 2.0 * B + m + 1.0;
    const double a = 2.0 * (B + m * S);
    const double half_b = -double(m) * S;
    const double disc = std::max(half_b * half_b - a * m, 0.0);
    const double qroot = -half_b + std::sqrt(disc);
    const double mu_plus = qroot / a;
    const double mu_minus = m / qroot;

    // Closed form for the radii: r_pm^2 = m (1 pm s), s = sqrt(1 - 1/(m(2B+m))),
    // with the minus branch rewritten as 1/((2B+m)(1+s)) to avoid cancellation.
    const double s = std::sqrt(1.0 - 1.0 / (double(m) * (2 * B + m)));
    const double r_plus = std::sqrt(double(m) * (1.0 + s));
    const double r_minus = std::sqrt(1.0 / (double(2 * B + m) * (1.0 + s)));

    // Both routes must describe the same boundary.
    if (std::abs(mu_from_radius(r_minus) - mu_minus) > 1e-10 ||
        std::abs(mu_from_radius(r_plus) - mu_plus) > 1e-10)
        throw std::logic_error("regime_boundaries: quadratic roots disagree with closed form");

    return RegimeBoundary{r_minus, r_plus, mu_minus, mu_plus};
}

Regime classify(int B, int m, double r)
{
    if (B < 0) throw std::domain_error("classify: B must satisfy B >= 0");
    if (m < 0) throw std::domain_error("classify: m must satisfy m >= 0");
    if (std::isnan(r) || r < 0.0) throw std::domain_error("classify: radius must satisfy r >= 0");

    if (m == 0) {
        // Q = -mu < 0 for every mu > 0; the mean vanishes at r = 0 and, when
        // B = 0, everywhere (one-point support).
        if (B == 0 || r == 0.0) return Regime::Degenerate;
        return Regime::SubPoissonian;
    }
    const RegimeBoundary bd = regime_boundaries(B, m);
    if (std::abs(r - bd.r_minus) <= kBoundaryRadiusTol ||
        std::abs(r - bd.r_plus) <= kBoundaryRadiusTol)
        return Regime::Poissonian;
    if (r < bd.r_minus || r > bd.r_plus) return Regime::SubPoissonian;
    return Regime::SuperPoissonian;
}

double poisson_tv_distance(int B, double lambda)
{
    if (B < 0) throw std::domain_error("poisson_tv_distance: B must satisfy B >= 0");
    if (!(lambda > 0.0))
        throw std::domain_error("poisson_tv_distance: lambda must satisfy lambda > 0");
    if (lambda > 2.0 * B)
        throw std::domain_error("poisson_tv_distance: lambda must satisfy lambda <= 2B, got " +
                                std::to_string(lambda) + " with 2B = " + std::to_string(2 * B));

    const int n = 2 * B;
    const PmfTable binom = pmf_table(GbdParams(B, 0, lambda / n));
    const double log_lambda = std::log(lambda);

    double sum = 0.0;
    double poisson_cdf = 0.0;
    for (int j = 0;; ++j) {
        const double pois = std::exp(-lambda + j * log_lambda - log_factorial(j));
        poisson_cdf += pois;
        const double bin = (j <= n) ? binom.probs[j] : 0.0;
        sum += std::abs(bin - pois);
        if (j >= n && poisson_cdf > 1.0 - 1e-15) break;
    }
    return 0.5 * sum;
}

}  // namespace sphbin::gbd
