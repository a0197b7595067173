// SPDX-License-Identifier: Apache-2.0

#include "sphbin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "sphbin/gbd.hpp"
#include "sphbin/specfun.hpp"
#include "sphbin/sphere.hpp"

namespace sphbin::verify {

namespace {

using sphbin::sphere::SpherePoint;
using std::abs;

constexpr double kPi = std::numbers::pi;

// Relative where the reference is O(1) or larger, absolute near zero.
double rel_err(double actual, double expected)
{
    return std::abs(actual - expected) / std::max(1.0, std::abs(expected));
}

// Strictly relative; exact agreement short-circuits the 0/0 case.
double strict_rel_err(double actual, double expected)
{
    const double diff = std::abs(actual - expected);
    if (diff == 0.0) return 0.0;
    return diff / std::max(std::abs(expected), 1e-300);
}

double binomial_coefficient(int n, int k)
{
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c *= double(n - k + i) / double(i);
    return c;
}

// Independent oracle: the standard three-term recurrence for P_n^{(a,b)}.
double jacobi_recurrence(int n, double a, double b, double x)
{
    if (n == 0) return 1.0;
    double y0 = 1.0;
    double y1 = 0.5 * (a - b) + (1.0 + 0.5 * (a + b)) * x;
    for (int k = 2; k <= n; ++k) {
        const double apb = a + b;
        const double denom = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0);
        const double g1 =
            (2.0 * k + apb - 1.0) * ((2.0 * k + apb) * (2.0 * k + apb - 2.0) * x + a * a - b * b);
        const double g0 = -2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + apb);
        const double y2 = (g1 * y1 + g0 * y0) / denom;
        y0 = y1;
        y1 = y2;
    }
    return y1;
}

// Independent oracle for Q_{B,m,j}: the m-th derivative of
// t^{j+m}(1-t)^{2B-j+m} expanded by the Leibniz rule,
//   Q = sum_k C(m,k) (-1)^{m-k} [(j+m)!/(j+m-k)!] [M!/(M-m+k)!] t^{m-k}(1-t)^k
// with M = 2B-j+m; every term stays O(parameter^m), so nothing cancels
// catastrophically.  Valid for j <= 2B+m.
double q_derivative_oracle(int B, int m, int j, double t)
{
    const int M = 2 * B - j + m;
    double sum = 0.0;
    for (int k = 0; k <= m; ++k) {
        double falling_u = 1.0;  // (j+m)!/(j+m-k)!
        for (int i = j + m - k + 1; i <= j + m; ++i) falling_u *= i;
        double falling_v = 1.0;  // M!/(M-(m-k))!
        for (int i = M - (m - k) + 1; i <= M; ++i) falling_v *= i;
        sum += binomial_coefficient(m, k) * ((m - k) % 2 == 0 ? 1.0 : -1.0) * falling_u *
               falling_v * std::pow(t, m - k) * std::pow(1.0 - t, k);
    }
    return sum;
}

std::complex<double> random_annulus_point(std::mt19937& rng, double r_min, double r_max)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = r_min + (r_max - r_min) * unit(rng);
    const double theta = 2.0 * kPi * unit(rng);
    return std::polar(r, theta);
}

struct CheckBuilder {
    std::vector<CheckResult> results;
    std::string suite;
    std::optional<double> tol_override;

    // Precision checks accept the override; semantic bounds (counts, claim
    // constants, discretization-order bands) keep their stated values.
    void add(std::string name, double residual, double default_tol, bool overridable = true)
    {
        const double tol = (overridable && tol_override) ? *tol_override : default_tol;
        results.push_back(CheckResult{suite, std::move(name), residual, tol});
    }
};

}  // namespace

std::vector<CheckResult> specfun_checks(std::optional<double> tol_override)
{
    CheckBuilder cb{{}, "specfun", tol_override};

    double recurrence_res = 0.0;
    double reflection_res = 0.0;
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
            for (int n = 0; n <= 12; ++n)
                for (int i = 0; i <= 20; ++i) {
                    const double x = -1.0 + 0.1 * i;
                    const double ref = jacobi_recurrence(n, a, b, x);
                    const double val = specfun::jacobi(n, double(a), double(b), x);
                    recurrence_res = std::max(recurrence_res, rel_err(val, ref));
                    const double mirrored = (n % 2 == 0 ? 1.0 : -1.0) *
                                            specfun::jacobi(n, double(b), double(a), -x);
                    reflection_res = std::max(reflection_res, rel_err(val, mirrored));
                }
    cb.add("jacobi_recurrence_agreement", recurrence_res, 1e-12);
    cb.add("jacobi_reflection_identity", reflection_res, 1e-12);

    double endpoint_res = 0.0;
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int n = 0; n <= 10; ++n) {
                const double expected = binomial_coefficient(a + n, n);  // (a+1)_n / n!
                endpoint_res = std::max(
                    endpoint_res,
                    strict_rel_err(specfun::jacobi(n, double(a), double(b), 1.0), expected));
            }
    cb.add("jacobi_endpoint_value", endpoint_res, 1e-12);

    double q_jacobi_res = 0.0;
    double q_derivative_res = 0.0;
    const double m_factorials[] = {1.0, 1.0, 2.0, 6.0, 24.0};
    for (int B = 0; B <= 6; ++B)
        for (int m = 0; m <= 4; ++m)
            for (int j = 0; j <= 2 * B + m; ++j)
                for (int i = 1; i <= 9; ++i) {
                    const double t = 0.1 * i;
                    const double q = specfun::q_polynomial(B, m, j, t);
                    const double via_jacobi = m_factorials[m] * specfun::jacobi(
                                                  m, double(j), double(2 * B - j), 1.0 - 2.0 * t);
                    q_jacobi_res = std::max(q_jacobi_res, rel_err(q, via_jacobi));
                    q_derivative_res =
                        std::max(q_derivative_res, rel_err(q, q_derivative_oracle(B, m, j, t)));
                }
    cb.add("q_jacobi_relation", q_jacobi_res, 1e-11);
    cb.add("q_derivative_definition", q_derivative_res, 1e-10);

    return cb.results;
}

std::vector<CheckResult> gbd_checks(int b_max, int m_max, std::optional<double> tol_override)
{
    CheckBuilder cb{{}, "gbd", tol_override};

    double norm_res = 0.0, nonneg_res = 0.0;
    double mean_res = 0.0, var_res = 0.0;
    double symmetry_res = 0.0, binom_res = 0.0;
    double charfn_res = 0.0, axiom_res = 0.0;

    for (int B = 0; B <= b_max; ++B)
        for (int m = 0; m <= m_max; ++m)
            for (int i = 1; i <= 19; ++i) {
                const double mu = 0.05 * i;
                const gbd::GbdParams params(B, m, mu);
                const int d = params.support_size();
                const gbd::PmfTable table = gbd::pmf_table(params);
                const gbd::PmfTable mirror = gbd::pmf_table(gbd::GbdParams(B, m, 1.0 - mu));

                norm_res = std::max(norm_res, std::abs(table.probs.sum() - 1.0));

                double sum_j = 0.0, sum_j2 = 0.0;
                for (int j = 0; j < d; ++j) {
                    const double p = gbd::pmf(params, j);  // unclamped
                    nonneg_res = std::max(nonneg_res, std::max(0.0, -p));
                    sum_j += j * p;
                    sum_j2 += double(j) * j * p;
                    symmetry_res =
                        std::max(symmetry_res, std::abs(p - mirror.probs[d - 1 - j]));
                    if (m == 0) {
                        const double ref = binomial_coefficient(2 * B, j) * std::pow(mu, j) *
                                           std::pow(1.0 - mu, 2 * B - j);
                        binom_res = std::max(binom_res, std::abs(p - ref));
                    }
                }
                mean_res = std::max(mean_res, strict_rel_err(sum_j, gbd::mean(params)));
                var_res = std::max(
                    var_res, strict_rel_err(sum_j2 - sum_j * sum_j, gbd::variance(params)));

                for (int k = 0; k <= 100; ++k) {
                    const double t = -kPi + 2.0 * kPi * (double(k) / 100.0);
                    const std::complex<double> direct = gbd::char_fn_direct(table, t);
                    const std::complex<double> closed = gbd::char_fn_closed(params, t);
                    charfn_res = std::max(charfn_res, std::abs(direct - closed));
                    if (k % 10 == 0) {
                        axiom_res = std::max(axiom_res, std::abs(direct) - 1.0);
                        axiom_res = std::max(
                            axiom_res,
                            std::abs(gbd::char_fn_direct(table, -t) - std::conj(direct)));
                        axiom_res = std::max(
                            axiom_res, std::abs(gbd::char_fn_direct(table, t + 2.0 * kPi) -
                                                direct));
                    }
                }
                axiom_res =
                    std::max(axiom_res, std::abs(gbd::char_fn_direct(table, 0.0) - 1.0));
            }

    cb.add("pmf_normalization", norm_res, 1e-11);
    cb.add("pmf_nonnegativity", nonneg_res, 1e-14);
    cb.add("moment_mean_identity", mean_res, 1e-9);
    cb.add("moment_variance_identity", var_res, 1e-9);
    cb.add("support_reflection_symmetry", symmetry_res, 1e-11);
    cb.add("binomial_reduction_m0", binom_res, 1e-12);
    cb.add("charfn_closed_vs_direct", charfn_res, 1e-10);
    cb.add("charfn_axioms", axiom_res, 1e-12);

    // Sign of the Mandel parameter against the regime classifier; radii with
    // |Q| at rounding level are boundary-grade and accept any verdict.
    std::mt19937 rng(988423);
    std::uniform_real_distribution<double> radius_draw(0.0, 4.0);
    int mismatches = 0;
    double boundary_q_res = 0.0;
    for (int B = 0; B <= b_max; ++B)
        for (int m = 1; m <= m_max; ++m) {
            for (int k = 0; k < 200; ++k) {
                const double r = radius_draw(rng);
                const gbd::Regime regime = gbd::classify(B, m, r);
                const double q =
                    *gbd::mandel_q(gbd::GbdParams(B, m, gbd::mu_from_radius(r)));
                if (std::abs(q) <= 1e-12) continue;
                const gbd::Regime expected =
                    q > 0 ? gbd::Regime::SuperPoissonian : gbd::Regime::SubPoissonian;
                if (regime != expected) ++mismatches;
            }
            const gbd::RegimeBoundary bd = gbd::regime_boundaries(B, m);
            boundary_q_res = std::max(
                boundary_q_res, std::abs(*gbd::mandel_q(gbd::GbdParams(B, m, bd.mu_minus))));
            boundary_q_res = std::max(
                boundary_q_res, std::abs(*gbd::mandel_q(gbd::GbdParams(B, m, bd.mu_plus))));
            if (gbd::classify(B, m, bd.r_minus) != gbd::Regime::Poissonian ||
                gbd::classify(B, m, bd.r_plus) != gbd::Regime::Poissonian)
                ++mismatches;
        }
    // m = 0: sub-Poissonian everywhere away from the degenerate center.
    for (int B = 1; B <= b_max; ++B)
        for (double r : {0.3, 1.0, 2.5, 100.0})
            if (gbd::classify(B, 0, r) != gbd::Regime::SubPoissonian) ++mismatches;
    cb.add("classifier_sign_consistency", double(mismatches), 0.0, /*overridable=*/false);
    cb.add("mandel_zero_at_boundaries", boundary_q_res, 1e-9);

    // Endpoint concentration: exact point masses at mu = 0, 1 and the
    // mu -> 0, 1 limits probed at 1e-10 (the probe bound 1e-6 is part of the
    // claim, reported as slack).
    double exact_endpoint_res = 0.0;
    double probe_slack = 0.0;
    for (int B = 0; B <= b_max; ++B)
        for (int m = 0; m <= m_max; ++m) {
            const int d = 2 * B + 2 * m + 1;
            const auto indicator_dev = [&](double mu, int spike) {
                const gbd::PmfTable t = gbd::pmf_table(gbd::GbdParams(B, m, mu));
                double dev = 0.0;
                for (int j = 0; j < d; ++j)
                    dev = std::max(dev, std::abs(t.probs[j] - (j == spike ? 1.0 : 0.0)));
                return dev;
            };
            exact_endpoint_res = std::max(exact_endpoint_res, indicator_dev(0.0, m));
            exact_endpoint_res = std::max(exact_endpoint_res, indicator_dev(1.0, 2 * B + m));
            probe_slack = std::max(probe_slack, indicator_dev(1e-10, m) - 1e-6);
            probe_slack = std::max(probe_slack, indicator_dev(1.0 - 1e-10, 2 * B + m) - 1e-6);
        }
    cb.add("endpoint_concentration_exact", exact_endpoint_res, 1e-12);
    cb.add("endpoint_concentration_probe", std::max(0.0, probe_slack), 0.0,
           /*overridable=*/false);

    // Poisson limit: Le Cam bound at (B=100, lambda=2) and monotone
    // improvement under doubling; both are claim constants, reported as slack.
    const double tv1 = gbd::poisson_tv_distance(100, 2.0);
    const double tv2 = gbd::poisson_tv_distance(200, 2.0);
    cb.add("poisson_tv_lecam_bound", std::max(0.0, tv1 - 0.02), 0.0, /*overridable=*/false);
    cb.add("poisson_tv_monotone", std::max(0.0, tv2 - tv1), 0.0, /*overridable=*/false);

    return cb.results;
}

std::vector<CheckResult> sphere_checks(int b_max, int m_max, std::optional<double> tol_override)
{
    CheckBuilder cb{{}, "sphere", tol_override};
    std::mt19937 rng(734001);

    double diag_res = 0.0, hermitian_res = 0.0;
    double gram_res = 0.0, orth_res = 0.0, isometry_res = 0.0;
    double reproducing_res = 0.0, bridge_res = 0.0, wavefn_res = 0.0, rho_sym_res = 0.0;

    for (int B = 0; B <= b_max; ++B)
        for (int m = 0; m <= m_max; ++m) {
            const int d = 2 * B + 2 * m + 1;
            const int n_radial = B + m + 2;

            for (int k = 0; k < 10; ++k) {
                const SpherePoint z(random_annulus_point(rng, 0.05, 2.0));
                const SpherePoint w(random_annulus_point(rng, 0.05, 2.0));
                diag_res = std::max(diag_res,
                                    std::abs(sphere::kernel(B, m, z, z) - double(d)));
                hermitian_res =
                    std::max(hermitian_res, std::abs(sphere::kernel(B, m, z, w) -
                                                     std::conj(sphere::kernel(B, m, w, z))));
            }
            diag_res = std::max(
                diag_res, std::abs(sphere::kernel(B, m, SpherePoint::infinity(),
                                                  SpherePoint::infinity()) -
                                   double(d)));
            hermitian_res = std::max(
                hermitian_res,
                std::abs(sphere::kernel(B, m, SpherePoint::infinity(), SpherePoint(0.4)) -
                         std::conj(sphere::kernel(B, m, SpherePoint(0.4),
                                                  SpherePoint::infinity()))));

            gram_res = std::max(gram_res, sphere::gram_identity_residual(B, m, n_radial));
            orth_res = std::max(orth_res, sphere::orthogonality_residual(B, m, n_radial));
            isometry_res =
                std::max(isometry_res, sphere::cst_isometry_residual(B, m, n_radial));

            const sphere::QuadratureGrid grid = sphere::quadrature_grid(B, m, n_radial);
            for (int k = 0; k < 10; ++k) {
                const SpherePoint z(random_annulus_point(rng, 0.1, 1.8));
                for (int j = 0; j < d; ++j) {
                    std::complex<double> integral(0.0, 0.0);
                    for (int i = 0; i < grid.points.size(); ++i) {
                        const SpherePoint w(grid.points[i]);
                        integral += grid.weights[i] * sphere::kernel(B, m, z, w) *
                                    sphere::basis_h(B, m, j, w);
                    }
                    reproducing_res = std::max(
                        reproducing_res, std::abs(integral - sphere::basis_h(B, m, j, z)));
                }
            }

            for (int k = 0; k < 50; ++k) {
                const SpherePoint p = (k == 0) ? SpherePoint::infinity()
                                    : (k == 1) ? SpherePoint(0.0)
                                               : SpherePoint(random_annulus_point(rng, 0.0, 2.5));
                const sphere::CoherentStateCoeffs state = sphere::coherent_coeffs(B, m, p);
                const gbd::GbdParams params(B, m, p.mu());
                for (int j = 0; j < d; ++j)
                    bridge_res = std::max(bridge_res, std::abs(std::norm(state.coeffs[j]) -
                                                               gbd::pmf(params, j)));
            }

            if (B + m <= 8) {
                for (int k = 0; k < 10; ++k) {
                    const SpherePoint z(random_annulus_point(rng, 0.0, 2.0));
                    for (int l = 0; l < 10; ++l) {
                        const std::complex<double> xi = random_annulus_point(rng, 0.0, 1.0);
                        wavefn_res = std::max(
                            wavefn_res,
                            std::abs(sphere::cs_wavefunction_series(B, m, z, xi) -
                                     sphere::cs_wavefunction_closed(B, m, z, xi)));
                    }
                }
            }

            for (int j = 0; j < d; ++j)
                rho_sym_res = std::max(
                    rho_sym_res, strict_rel_err(sphere::norm_rho(B, m, j),
                                                sphere::norm_rho(B, m, 2 * B + 2 * m - j)));
        }

    cb.add("kernel_diagonal", diag_res, 1e-12);
    cb.add("kernel_hermitian_symmetry", hermitian_res, 1e-12);
    cb.add("gram_identity", gram_res, 1e-10);
    cb.add("orthogonality_norms", orth_res, 1e-10);
    cb.add("cst_isometry", isometry_res, 1e-10);
    cb.add("reproducing_property", reproducing_res, 1e-10);
    cb.add("coeff_pmf_bridge", bridge_res, 1e-11);
    cb.add("series_vs_closed_wavefunction", wavefn_res, 1e-11);
    cb.add("norm_symmetry", rho_sym_res, 1e-12);

    // Finite-difference eigen-equation residual at h = 1e-4 and the
    // second-order convergence band.  Each j is probed at radii where the
    // eigenfunction carries appreciable magnitude relative to its peak over
    // the candidate set: near its high-order zeros the relative residual is
    // ill-conditioned (the same reason eigen_residual rejects |h| < 1e-12),
    // and the order band needs truncation visible above roundoff.
    const std::complex<double> fd_points[] = {{0.12, -0.07}, {0.31, 0.23},  {-0.62, 0.44},
                                              {1.27, -0.35}, {0.85, 0.95}, {-1.45, 1.1}};
    double fd_res = 0.0;
    double order_res = 0.0;
    for (int B = 0; B <= std::min(b_max, 4); ++B)
        for (int m = 0; m <= std::min(m_max, 3); ++m) {
            int indices[] = {0, m, 2 * B + m, 2 * B + 2 * m};
            for (int j : indices) {
                double peak = 0.0;
                for (const auto& z : fd_points)
                    peak = std::max(peak, std::abs(sphere::basis_h(B, m, j, SpherePoint(z))));
                for (const auto& z : fd_points) {
                    if (std::abs(sphere::basis_h(B, m, j, SpherePoint(z))) <
                        std::max(0.1 * peak, 1e-6))
                        continue;
                    fd_res = std::max(fd_res, sphere::eigen_residual(B, m, j, z, 1e-4));
                    const double coarse = sphere::eigen_residual(B, m, j, z, 4e-3);
                    const double fine = sphere::eigen_residual(B, m, j, z, 2e-3);
                    if (coarse >= 1e-7)
                        order_res = std::max(order_res, std::abs(coarse / fine - 4.0));
                }
            }
        }
    cb.add("eigen_equation_residual", fd_res, 1e-5, /*overridable=*/false);
    cb.add("eigen_fd_order", order_res, 0.5, /*overridable=*/false);

    return cb.results;
}

}  // namespace sphbin::verify
