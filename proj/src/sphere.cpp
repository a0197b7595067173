// SPDX-License-Identifier: Apache-2.0

#include "sphbin/sphere.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sphbin/detail.hpp"
#include "sphbin/quadrature.hpp"
#include "sphbin/specfun.hpp"

namespace sphbin::sphere {

using detail::cpow_int;
using specfun::hyp2f1_terminating;
using specfun::jacobi;
using specfun::log_factorial;

namespace {

void check_support_index(int B, int m, int j)
{
    if (B < 0 || m < 0)
        throw std::domain_error("sphere: B and m must be >= 0");
    if (j < 0 || j > 2 * B + 2 * m)
        throw std::out_of_range("sphere: basis index j = " + std::to_string(j) +
                                " outside support 0.." + std::to_string(2 * B + 2 * m));
}

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// 1/sqrt(d * rho(j)) for all j at once; the common scale of coherent-state
// coefficients.
Eigen::VectorXd coeff_scales(int B, int m)
{
    const int d = 2 * B + 2 * m + 1;
    Eigen::VectorXd scale(d);
    for (int j = 0; j < d; ++j) scale[j] = 1.0 / std::sqrt(d * norm_rho(B, m, j));
    return scale;
}

Eigen::VectorXcd coeffs_at(int B, int m, const Eigen::VectorXd& scale, const SpherePoint& p)
{
    const int d = 2 * B + 2 * m + 1;
    Eigen::VectorXcd c(d);
    for (int j = 0; j < d; ++j) c[j] = scale[j] * basis_h(B, m, j, p);
    return c;
}

}  // namespace

std::complex<double> SpherePoint::coord() const
{
    if (inf_) throw std::logic_error("SpherePoint: no finite coordinate at infinity");
    return z_;
}

double SpherePoint::abs2() const
{
    if (inf_) return std::numeric_limits<double>::infinity();
    return std::norm(z_);
}

double SpherePoint::mu() const
{
    if (inf_) return 1.0;
    const double r2 = std::norm(z_);
    if (r2 < 1.0) return r2 / (1.0 + r2);
    return 1.0 / (1.0 + 1.0 / r2);
}

double SpherePoint::radius() const
{
    if (inf_) return std::numeric_limits<double>::infinity();
    return std::abs(z_);
}

std::complex<double> basis_h(int B, int m, int j, const SpherePoint& p)
{
    check_support_index(B, m, j);
    if (p.is_infinity()) {
        // Along the real axis z^{2B}(1+|z|^2)^{-B} -> 1; only the top basis
        // element survives.
        if (j != 2 * B + m) return {0.0, 0.0};
        return {parity(m) * std::exp(log_factorial(m)), 0.0};
    }

    const std::complex<double> z = p.coord();
    const double r2 = std::norm(z);
    const double one_plus = 1.0 + r2;
    const double x = (1.0 - r2) / one_plus;

    if (j < m) {
        // Cancelled form: (-1)^{m-j} j!(2B+2m-j)!/(2B+m)!
        //   * conj(z)^{m-j} (1+|z|^2)^{-B-(m-j)} P_j^{(m-j, 2B+m-j)}(x).
        const double coeff = std::exp(log_factorial(j) + log_factorial(2 * B + 2 * m - j) -
                                      log_factorial(2 * B + m));
        return parity(m - j) * coeff * cpow_int(std::conj(z), m - j) *
               std::pow(one_plus, -(B + m - j)) *
               jacobi(j, double(m - j), double(2 * B + m - j), x);
    }
    if (j <= 2 * B + m) {
        return std::exp(log_factorial(m)) * std::pow(one_plus, -B) * cpow_int(z, j - m) *
               jacobi(m, double(j - m), double(2 * B + m - j), x);
    }
    // j > 2B+m: the mirrored cancellation,
    //   (-1)^{m+q} j!(2B+2m-j)!/(2B+m)! z^{j-m} (1+|z|^2)^{-B-q}
    //   * P_{2B+2m-j}^{(q, j-m)}(-x),  q = j-2B-m.
    const int q = j - 2 * B - m;
    const double coeff =
        std::exp(log_factorial(j) + log_factorial(2 * B + 2 * m - j) - log_factorial(2 * B + m));
    return parity(m + q) * coeff * cpow_int(z, j - m) * std::pow(one_plus, -(B + q)) *
           jacobi(2 * B + 2 * m - j, double(q), double(j - m), -x);
}

double norm_rho(int B, int m, int j)
{
    check_support_index(B, m, j);
    const int d = 2 * B + 2 * m + 1;
    // summing the two j-dependent terms in a fixed order keeps the symmetry
    // rho(j) = rho(2B+2m-j) bitwise
    const int lo = std::min(j, 2 * B + 2 * m - j);
    const int hi = 2 * B + 2 * m - lo;
    return std::exp(log_factorial(m) + log_factorial(lo) + log_factorial(hi) -
                    log_factorial(2 * B + m)) /
           d;
}

std::complex<double> kernel(int B, int m, const SpherePoint& z, const SpherePoint& w)
{
    if (B < 0 || m < 0) throw std::domain_error("kernel: B and m must be >= 0");
    const double d = 2 * B + 2 * m + 1;

    if (z.is_infinity() && w.is_infinity()) return {d, 0.0};
    if (z.is_infinity()) {
        const std::complex<double> wc = w.coord();
        const double pw = 1.0 + std::norm(wc);
        return d * cpow_int(std::conj(wc), 2 * B) * std::pow(pw, -B) *
               hyp2f1_terminating(m, double(m + 2 * B + 1), 1.0, 1.0 / pw);
    }
    if (w.is_infinity()) return std::conj(kernel(B, m, w, z));

    const std::complex<double> zc = z.coord(), wc = w.coord();
    const double pz = 1.0 + std::norm(zc), pw = 1.0 + std::norm(wc);
    const double zeta = std::norm(zc - wc) / (pz * pw);
    return d * cpow_int(1.0 + zc * std::conj(wc), 2 * B) * std::pow(pz * pw, -B) *
           hyp2f1_terminating(m, double(m + 2 * B + 1), 1.0, zeta);
}

CoherentStateCoeffs coherent_coeffs(int B, int m, const SpherePoint& p)
{
    if (B < 0 || m < 0) throw std::domain_error("coherent_coeffs: B and m must be >= 0");
    return CoherentStateCoeffs{EigenspaceSpec{B, m}, p, coeffs_at(B, m, coeff_scales(B, m), p)};
}

std::complex<double> cs_wavefunction_series(int B, int m, const SpherePoint& p,
                                            std::complex<double> xi)
{
    const CoherentStateCoeffs state = coherent_coeffs(B, m, p);
    const int d = state.spec.dim();
    std::complex<double> sum(0.0, 0.0);
    std::complex<double> xi_pow(1.0, 0.0);
    for (int j = 0; j < d; ++j) {
        const double phi = std::exp(0.5 * (log_factorial(2 * B + 2 * m) - log_factorial(j) -
                                           log_factorial(2 * B + 2 * m - j)));
        sum += state.coeffs[j] * phi * xi_pow;
        xi_pow *= xi;
    }
    return sum;
}

std::complex<double> cs_wavefunction_closed(int B, int m, const SpherePoint& p,
                                            std::complex<double> xi)
{
    if (B < 0 || m < 0) throw std::domain_error("cs_wavefunction_closed: B and m must be >= 0");
    const double pref = std::exp(
        0.5 * (log_factorial(2 * B + 2 * m) - log_factorial(2 * B + m) - log_factorial(m)));
    if (p.is_infinity()) {
        // Limit along the real axis: (-1)^m phi_{2B+m}(xi).
        return pref * cpow_int(xi, 2 * B) * cpow_int(-xi, m);
    }
    const std::complex<double> z = p.coord();
    const double one_plus = 1.0 + std::norm(z);
    const std::complex<double> a = 1.0 + xi * z;
    return pref * cpow_int(a, 2 * B) * std::pow(one_plus, -B) *
           cpow_int((xi - std::conj(z)) * a, m) * std::pow(one_plus, -m);
}

std::complex<double> cst_transform(int B, int m, const Eigen::VectorXcd& f, const SpherePoint& x)
{
    const CoherentStateCoeffs state = coherent_coeffs(B, m, x);
    if (f.size() != state.spec.dim())
        throw std::domain_error("cst_transform: coefficient vector has wrong dimension");
    const double omega_sqrt = std::sqrt(double(state.spec.dim()));  // K(x,x) = d
    return omega_sqrt * state.coeffs.dot(f);                        // dot conjugates the left side
}

QuadratureGrid quadrature_grid(int B, int m, int n_radial)
{
    if (B < 0 || m < 0) throw std::domain_error("quadrature_grid: B and m must be >= 0");
    if (n_radial < B + m + 2)
        throw std::domain_error("quadrature_grid: n_radial must satisfy n_radial >= B+m+2 = " +
                                std::to_string(B + m + 2) + " for exactness, got " +
                                std::to_string(n_radial));

    const quadrature::GaussLegendreRule rule = quadrature::gauss_legendre_01(n_radial);
    const int n_theta = 2 * (2 * B + 2 * m) + 1;

    QuadratureGrid grid;
    grid.points.resize(n_radial * n_theta);
    grid.weights.resize(n_radial * n_theta);
    int idx = 0;
    for (int i = 0; i < n_radial; ++i) {
        const double t = rule.nodes[i];
        const double r = std::sqrt(t / (1.0 - t));
        const double w = rule.weights[i] / n_theta;
        for (int k = 0; k < n_theta; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / n_theta;
            grid.points[idx] = std::polar(r, theta);
            grid.weights[idx] = w;
            ++idx;
        }
    }
    return grid;
}

double gram_identity_residual(int B, int m, int n_radial)
{
    const QuadratureGrid grid = quadrature_grid(B, m, n_radial);
    const Eigen::VectorXd scale = coeff_scales(B, m);
    const int d = 2 * B + 2 * m + 1;

    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < grid.points.size(); ++i) {
        const Eigen::VectorXcd c = coeffs_at(B, m, scale, SpherePoint(grid.points[i]));
        gram.noalias() += grid.weights[i] * (c * c.adjoint());
    }
    gram *= double(d);
    return (gram - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

double orthogonality_residual(int B, int m, int n_radial)
{
    const QuadratureGrid grid = quadrature_grid(B, m, n_radial);
    const int d = 2 * B + 2 * m + 1;

    Eigen::MatrixXcd overlaps = Eigen::MatrixXcd::Zero(d, d);
    Eigen::VectorXcd h(d);
    for (int i = 0; i < grid.points.size(); ++i) {
        const SpherePoint p(grid.points[i]);
        for (int j = 0; j < d; ++j) h[j] = basis_h(B, m, j, p);
        overlaps.noalias() += grid.weights[i] * (h * h.adjoint());
    }

    double residual = 0.0;
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            const double expected = (j == k) ? norm_rho(B, m, j) : 0.0;
            const double norm_scale = std::sqrt(norm_rho(B, m, j) * norm_rho(B, m, k));
            residual = std::max(residual, std::abs(overlaps(j, k) - expected) / norm_scale);
        }
    }
    return residual;
}

double cst_isometry_residual(int B, int m, int n_radial)
{
    const QuadratureGrid grid = quadrature_grid(B, m, n_radial);
    const Eigen::VectorXd scale = coeff_scales(B, m);
    const int d = 2 * B + 2 * m + 1;

    // |W[phi_j](z)|^2 = d |c_j(z)|^2, integrated over the grid.
    Eigen::VectorXd norms = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < grid.points.size(); ++i) {
        const Eigen::VectorXcd c = coeffs_at(B, m, scale, SpherePoint(grid.points[i]));
        norms += (grid.weights[i] * d) * c.cwiseAbs2();
    }
    return (norms - Eigen::VectorXd::Ones(d)).cwiseAbs().maxCoeff();
}

double eigen_residual(int B, int m, int j, std::complex<double> z, double h_step)
{
    check_support_index(B, m, j);
    if (!(h_step > 0.0)) throw std::domain_error("eigen_residual: h_step must be > 0");

    const std::complex<double> f0 = basis_h(B, m, j, SpherePoint(z));
    if (std::abs(f0) < 1e-12)
        throw std::domain_error(
            "eigen_residual: |h_j(z)| below 1e-12; residual ill-conditioned at eigenfunction "
            "zeros");

    const auto f = [&](double dx, double dy) {
        return basis_h(B, m, j, SpherePoint(z + std::complex<double>(dx, dy)));
    };
    const std::complex<double> fxp = f(h_step, 0.0), fxm = f(-h_step, 0.0);
    const std::complex<double> fyp = f(0.0, h_step), fym = f(0.0, -h_step);

    const std::complex<double> fx = (fxp - fxm) / (2.0 * h_step);
    const std::complex<double> fy = (fyp - fym) / (2.0 * h_step);
    const std::complex<double> lap = (fxp + fxm + fyp + fym - 4.0 * f0) / (h_step * h_step);

    // -Bz(1+|z|^2) d/dz + B conj(z)(1+|z|^2) d/dconj(z) assembled from the
    // Wirtinger derivatives reduces to -iBP (y f_x - x f_y).
    const double r2 = std::norm(z);
    const double P = 1.0 + r2;
    const std::complex<double> i_unit(0.0, 1.0);
    const std::complex<double> Hf = -0.25 * P * P * lap -
                                    i_unit * (B * P) * (z.imag() * fx - z.real() * fy) +
                                    double(B) * B * r2 * f0;

    const double eps = EigenspaceSpec{B, m}.eigenvalue();
    return std::abs(Hf - eps * f0) / std::max(std::abs(f0), 1e-300);
}

}  // namespace sphbin::sphere
