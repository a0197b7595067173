// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sphbin/gbd.hpp"
#include "sphbin/specfun.hpp"
#include "sphbin/verify.hpp"

using namespace sphbin;
using gbd::GbdParams;
using gbd::Regime;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

void check_table(const GbdParams& params, const std::vector<double>& expected, double tol)
{
    const gbd::PmfTable table = gbd::pmf_table(params);
    REQUIRE(table.probs.size() == static_cast<int>(expected.size()));
    for (std::size_t j = 0; j < expected.size(); ++j) {
        INFO("j = ", j);
        CHECK(close(table.probs[j], expected[j], tol));
    }
}

}  // namespace

TEST_CASE("parameter validation names the violated bound")
{
    CHECK_THROWS_AS(GbdParams(-1, 0, 0.5), std::domain_error);
    CHECK_THROWS_AS(GbdParams(1, -2, 0.5), std::domain_error);
    CHECK_THROWS_AS(GbdParams(1, 0, 1.5), std::domain_error);
    CHECK_THROWS_AS(GbdParams(1, 0, -0.1), std::domain_error);
    CHECK_THROWS_AS(GbdParams(1, 0, std::nan("")), std::domain_error);
    CHECK(GbdParams(0, 0, 0.0).support_size() == 1);
    CHECK(GbdParams(2, 3, 1.0).support_size() == 11);
}

TEST_CASE("mu_from_radius covers the chart, the equator and infinity")
{
    CHECK(gbd::mu_from_radius(0.0) == 0.0);
    CHECK(gbd::mu_from_radius(1.0) == 0.5);
    CHECK(gbd::mu_from_radius(kInf) == 1.0);
    CHECK(close(gbd::mu_from_radius(2.0), 0.8, 1e-15));
    CHECK(gbd::radius_from_mu(1.0) == kInf);
    CHECK(close(gbd::radius_from_mu(0.5), 1.0, 1e-15));
    CHECK_THROWS_AS(gbd::mu_from_radius(-1.0), std::domain_error);
}

TEST_CASE("pmf: hand-evaluated tables")
{
    CHECK(close(gbd::pmf(GbdParams(1, 1, 0.5), 2), 0.0, 1e-15));
    CHECK(close(gbd::pmf(GbdParams(1, 1, 0.25), 0), 0.421875, 1e-15));
    CHECK(close(gbd::pmf(GbdParams(1, 0, 0.5), 1), 0.5, 1e-15));
    CHECK(close(gbd::pmf(GbdParams(2, 3, 0.0), 3), 1.0, 1e-14));

    check_table(GbdParams(1, 0, 0.5), {0.25, 0.5, 0.25}, 1e-15);
    check_table(GbdParams(1, 1, 0.5), {0.25, 0.25, 0.0, 0.25, 0.25}, 1e-14);
    check_table(GbdParams(1, 1, 0.25), {0.421875, 0.0, 0.28125, 0.25, 0.046875}, 1e-14);
    check_table(GbdParams(1, 1, 1.0), {0.0, 0.0, 0.0, 1.0, 0.0}, 1e-14);

    CHECK_THROWS_AS(gbd::pmf(GbdParams(1, 1, 0.5), 5), std::out_of_range);
    CHECK_THROWS_AS(gbd::pmf(GbdParams(1, 1, 0.5), -1), std::out_of_range);
}

TEST_CASE("endpoint-safe pmf branches match the raw formula at interior mu")
{
    // For j < m and j > 2B+m the implementation uses representations with the
    // negative powers of mu and 1-mu cancelled analytically; away from the
    // endpoints the uncancelled expression is computable and must agree.
    const auto raw = [](int B, int m, int j, double mu) {
        const double ratio =
            std::exp(specfun::log_factorial(m) + specfun::log_factorial(2 * B + m) -
                     specfun::log_factorial(j) - specfun::log_factorial(2 * B + 2 * m - j));
        const double p = specfun::jacobi(m, double(j - m), double(2 * B + m - j), 1.0 - 2.0 * mu);
        return ratio * std::pow(mu, j - m) * std::pow(1.0 - mu, 2 * B + m - j) * p * p;
    };
    for (int B : {0, 1, 3})
        for (int m : {1, 2, 4})
            for (double mu : {0.3, 0.7})
                for (int j = 0; j <= 2 * B + 2 * m; ++j) {
                    const double expected = raw(B, m, j, mu);
                    const double got = gbd::pmf(GbdParams(B, m, mu), j);
                    INFO("B=", B, " m=", m, " j=", j, " mu=", mu);
                    CHECK(std::abs(got - expected) <= 1e-12 * std::max(1.0, expected));
                }
}

TEST_CASE("cdf partial sums")
{
    CHECK(close(gbd::cdf(GbdParams(1, 1, 0.25), 2), 0.703125, 1e-14));
    CHECK(close(gbd::cdf(GbdParams(7, 4, 0.37), 2 * 7 + 2 * 4), 1.0, 1e-12));
    CHECK(close(gbd::cdf(GbdParams(1, 0, 0.5), 0), 0.25, 1e-15));
}

TEST_CASE("sample: inverse transform with tie-break toward smaller j")
{
    const gbd::PmfTable table = gbd::pmf_table(GbdParams(1, 1, 0.25));
    CHECK(gbd::sample(table, 0.5) == 2);
    CHECK(gbd::sample(table, 0.0) == 0);
    CHECK(gbd::sample(table, 0.99) == 4);
    // u exactly at a cumulative step with a zero-mass bin after it
    CHECK(gbd::sample(table, table.cumulative[0]) == 0);
    CHECK_THROWS_AS(gbd::sample(table, 1.0), std::domain_error);
    CHECK_THROWS_AS(gbd::sample(table, -0.1), std::domain_error);
}

TEST_CASE("moments: closed forms against summation oracles")
{
    CHECK(gbd::mean(GbdParams(1, 1, 0.5)) == 2.0);
    CHECK(close(gbd::mean(GbdParams(2, 3, 0.3)), 4.2, 1e-15));
    CHECK(gbd::mean(GbdParams(5, 0, 0.0)) == 0.0);
    CHECK(gbd::variance(GbdParams(1, 1, 0.5)) == 2.5);
    CHECK(close(gbd::variance(GbdParams(1, 1, 0.25)), 1.875, 1e-15));
    CHECK(gbd::variance(GbdParams(9, 4, 1.0)) == 0.0);

    for (const auto& params :
         {GbdParams(1, 1, 0.5), GbdParams(2, 3, 0.3), GbdParams(6, 2, 0.85)}) {
        const gbd::PmfTable table = gbd::pmf_table(params);
        double sum_j = 0.0, sum_j2 = 0.0;
        for (int j = 0; j < table.probs.size(); ++j) {
            sum_j += j * table.probs[j];
            sum_j2 += double(j) * j * table.probs[j];
        }
        CHECK(close(sum_j, gbd::mean(params), 1e-12));
        CHECK(close(sum_j2 - sum_j * sum_j, gbd::variance(params), 1e-11));
    }
}

TEST_CASE("mandel parameter, including the degenerate mean")
{
    CHECK(close(*gbd::mandel_q(GbdParams(1, 1, 0.5)), 0.25, 1e-15));
    CHECK(close(*gbd::mandel_q(GbdParams(3, 0, 0.4)), -0.4, 1e-14));
    CHECK_FALSE(gbd::mandel_q(GbdParams(0, 0, 0.7)).has_value());
    CHECK_FALSE(gbd::mandel_q(GbdParams(4, 0, 0.0)).has_value());

    // m = 0: Q = -mu for every B > 0
    for (double mu : {0.05, 0.35, 0.9})
        CHECK(close(*gbd::mandel_q(GbdParams(6, 0, mu)), -mu, 1e-13));
}

TEST_CASE("characteristic function: direct sum vs closed form")
{
    const GbdParams params(1, 1, 0.5);
    const double pi = std::numbers::pi;

    CHECK(std::abs(gbd::char_fn_direct(params, 0.0) - 1.0) <= 1e-15);
    CHECK(std::abs(gbd::char_fn_closed(params, 0.0) - 1.0) <= 1e-15);
    CHECK(std::abs(gbd::char_fn_direct(params, pi)) <= 1e-12);
    CHECK(std::abs(gbd::char_fn_closed(params, pi)) <= 1e-12);
    CHECK(std::abs(gbd::char_fn_direct(params, pi / 2) - 0.5) <= 1e-12);
    CHECK(std::abs(gbd::char_fn_closed(params, pi / 2) - 0.5) <= 1e-12);

    // m = 0 reduction to the binomial characteristic function
    const std::complex<double> bernoulli = 0.7 + 0.3 * std::polar(1.0, 1.0);
    CHECK(std::abs(gbd::char_fn_closed(GbdParams(1, 0, 0.3), 1.0) - bernoulli * bernoulli) <=
          1e-14);
}

TEST_CASE("regime boundaries: quadratic roots and closed-form radii agree")
{
    const gbd::RegimeBoundary bd = gbd::regime_boundaries(1, 1);
    CHECK(close(bd.r_minus, 0.4283730, 1e-6));
    CHECK(close(bd.r_plus, 1.3477747, 1e-6));
    CHECK(close(bd.mu_minus, 0.1550510, 1e-6));
    CHECK(close(bd.mu_plus, 0.6449490, 1e-6));
    CHECK(close(bd.r_minus * bd.r_plus, std::sqrt(1.0 / 3.0), 1e-12));

    const gbd::RegimeBoundary degenerate = gbd::regime_boundaries(0, 1);
    CHECK(close(degenerate.r_minus, 1.0, 1e-12));
    CHECK(close(degenerate.r_plus, 1.0, 1e-12));
    CHECK(close(degenerate.mu_minus, 0.5, 1e-12));
    CHECK(close(degenerate.mu_plus, 0.5, 1e-12));

    for (int B : {0, 1, 3, 6})
        for (int m : {1, 2, 4}) {
            const gbd::RegimeBoundary b = gbd::regime_boundaries(B, m);
            CHECK(b.r_minus <= 1.0 + 1e-12);
            CHECK(b.r_plus >= 1.0 - 1e-12);
            CHECK(close(*gbd::mandel_q(GbdParams(B, m, b.mu_minus)), 0.0, 1e-9));
            CHECK(close(*gbd::mandel_q(GbdParams(B, m, b.mu_plus)), 0.0, 1e-9));
        }

    CHECK_THROWS_AS(gbd::regime_boundaries(1, 0), std::domain_error);
}

TEST_CASE("classifier matches the sign of Q")
{
    CHECK(gbd::classify(1, 1, 0.2) == Regime::SubPoissonian);
    CHECK(gbd::classify(1, 1, 1.0) == Regime::SuperPoissonian);
    const gbd::RegimeBoundary bd = gbd::regime_boundaries(1, 1);
    CHECK(gbd::classify(1, 1, bd.r_minus) == Regime::Poissonian);
    CHECK(gbd::classify(1, 1, bd.r_plus) == Regime::Poissonian);
    CHECK(gbd::classify(1, 1, kInf) == Regime::SubPoissonian);
    CHECK(gbd::classify(4, 0, 2.0) == Regime::SubPoissonian);
    CHECK(gbd::classify(4, 0, 0.0) == Regime::Degenerate);
    CHECK(gbd::classify(0, 0, 0.7) == Regime::Degenerate);
    CHECK(gbd::classify(0, 1, 1.0) == Regime::Poissonian);
}

TEST_CASE("log-space weights survive field strengths around 10^3")
{
    for (int B : {500, 1000})
        for (int m : {0, 8}) {
            const gbd::PmfTable table = gbd::pmf_table(GbdParams(B, m, 0.37));
            double sum_j = 0.0;
            for (int j = 0; j < table.probs.size(); ++j) sum_j += j * table.probs[j];
            CHECK(std::abs(table.probs.sum() - 1.0) <= 1e-11);
            CHECK(std::abs(sum_j - gbd::mean(table.params)) / gbd::mean(table.params) <= 1e-11);
        }
}

TEST_CASE("poisson limit of the m = 0 family")
{
    const double tv100 = gbd::poisson_tv_distance(100, 2.0);
    const double tv200 = gbd::poisson_tv_distance(200, 2.0);
    CHECK(tv100 <= 0.02);  // Le Cam: n mu^2 = 200 * 0.01^2
    CHECK(tv200 < tv100);

    // Binomial(2, 1) is a point mass at 2, so TV = 1 - e^{-2} 2^2/2!
    CHECK(close(gbd::poisson_tv_distance(1, 2.0), 1.0 - 2.0 * std::exp(-2.0), 1e-12));

    CHECK_THROWS_AS(gbd::poisson_tv_distance(1, 3.0), std::domain_error);
    CHECK_THROWS_AS(gbd::poisson_tv_distance(3, 0.0), std::domain_error);
}

TEST_CASE("gbd invariant suite is green on a reduced grid")
{
    for (const auto& check : verify::gbd_checks(10, 5)) {
        INFO(check.name, " residual ", check.max_residual, " tol ", check.tolerance);
        CHECK(check.passed());
    }
}
