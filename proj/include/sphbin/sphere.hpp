// SPDX-License-Identifier: Apache-2.0
//
// Geometry of the spherical Landau levels in the stereographic chart
// z = x + iy: the orthogonal eigenbasis h_j^{B,m}, its norms, the reproducing
// kernel of the eigenspace, the coherent states labelled by sphere points,
// and numerical residuals (Gram identity, orthogonality, coherent-state
// transform isometry, finite-difference eigen-equation) that turn the
// analytic identities into machine-precision checks.
//
// All integrals are over the normalized measure (1+|z|^2)^{-2} dx dy / pi,
// whose total mass is 1.  Under t = |z|^2/(1+|z|^2) every Gram integrand is a
// polynomial in t of degree <= 2B+2m and a trigonometric polynomial of degree
// <= 2(2B+2m) in the angle, so the product Gauss-Legendre x trapezoid grid
// integrates them exactly.

#ifndef SPHBIN_SPHERE_HPP
#define SPHBIN_SPHERE_HPP

#include <Eigen/Core>
#include <complex>

namespace sphbin::sphere {

/// A point of the Riemann sphere: a stereographic coordinate z or the
/// distinguished point at infinity.
class SpherePoint {
public:
    SpherePoint() = default;
    SpherePoint(std::complex<double> z) : z_(z) {}

    static SpherePoint infinity()
    {
        SpherePoint p;
        p.inf_ = true;
        return p;
    }

    bool is_infinity() const { return inf_; }

    /// Finite coordinate; throws std::logic_error at infinity.
    std::complex<double> coord() const;

    /// |z|^2 (infinite at the point at infinity).
    double abs2() const;

    /// mu_z = |z|^2 / (1 + |z|^2) in [0, 1]; 1 at infinity.
    double mu() const;

    double radius() const;

private:
    std::complex<double> z_{0.0, 0.0};
    bool inf_ = false;
};

/// Eigenspace bookkeeping: dimension d_{B,m} = 2B+2m+1 and Landau level
/// eps_m^B = (2m+1)B + m(m+1).
struct EigenspaceSpec {
    int B;
    int m;
    int dim() const { return 2 * B + 2 * m + 1; }
    double eigenvalue() const { return (2.0 * m + 1.0) * B + double(m) * (m + 1); }
};

/// Coherent-state expansion coefficients c_j over the orthonormal monomial
/// basis; normalized so sum |c_j|^2 = 1, with |c_j|^2 equal to the
/// generalized binomial pmf at mu_z.
struct CoherentStateCoeffs {
    EigenspaceSpec spec;
    SpherePoint label;
    Eigen::VectorXcd coeffs;
};

/// Product quadrature grid for the normalized sphere measure; weights sum
/// to 1.  Nodes are all finite.
struct QuadratureGrid {
    Eigen::VectorXcd points;
    Eigen::VectorXd weights;
};

/// Basis eigenfunction
///   h_j^{B,m}(z) = m! (1+|z|^2)^{-B} z^{j-m} P_m^{(j-m, 2B+m-j)}(x),
///   x = (1-|z|^2)/(1+|z|^2),   j = 0..2B+2m.
/// Negative powers of z (j < m) are cancelled analytically against the zero
/// of the Jacobi factor; at infinity the analytic limit along the real axis
/// is returned (nonzero only for j = 2B+m).
std::complex<double> basis_h(int B, int m, int j, const SpherePoint& p);

/// Norm square rho_{B,m}(j) = m! j! (2B+2m-j)! / (d_{B,m} (2B+m)!).
double norm_rho(int B, int m, int j);

/// Reproducing kernel of the eigenspace,
///   K(z,w) = d (1+z conj(w))^{2B} (1+|z|^2)^{-B} (1+|w|^2)^{-B}
///            * 2F1(-m, m+2B+1; 1; |z-w|^2/((1+|z|^2)(1+|w|^2))).
/// Points at infinity are handled by the limit along the real axis.
std::complex<double> kernel(int B, int m, const SpherePoint& z, const SpherePoint& w);

/// Coefficients c_j = K(z,z)^{-1/2} h_j(z) / sqrt(rho(j)) of the coherent
/// state labelled by p.
CoherentStateCoeffs coherent_coeffs(int B, int m, const SpherePoint& p);

/// Coherent-state wavefunction as the basis series sum_j c_j phi_j(xi) with
/// phi_j(xi) = sqrt((2B+2m)! / (j! (2B+2m-j)!)) xi^j.
std::complex<double> cs_wavefunction_series(int B, int m, const SpherePoint& p,
                                            std::complex<double> xi);

/// The same wavefunction in closed form,
///   sqrt((2B+2m)!/((2B+m)! m!)) ((1+xi z)^2/(1+|z|^2))^B
///   * ((xi - conj(z))(1+xi z)/(1+|z|^2))^m.
std::complex<double> cs_wavefunction_closed(int B, int m, const SpherePoint& p,
                                            std::complex<double> xi);

/// Coherent-state transform W[f](x) = sqrt(K(x,x)) <Phi_x, f> of a function
/// given by its coefficients over the monomial basis.
std::complex<double> cst_transform(int B, int m, const Eigen::VectorXcd& f, const SpherePoint& x);

/// Exact-degree product grid; requires n_radial >= B+m+2.
QuadratureGrid quadrature_grid(int B, int m, int n_radial);

/// max_{j,k} |d Int c_j conj(c_k) dmeasure - delta_{jk}| (resolution of the
/// identity in coefficient form).
double gram_identity_residual(int B, int m, int n_radial);

/// Orthogonality of the h_j and agreement of their norms with rho, measured
/// in norm-scaled form: max_{j,k} |Int h_j conj(h_k) - delta_{jk} rho(j)| /
/// sqrt(rho(j) rho(k)).
double orthogonality_residual(int B, int m, int n_radial);

/// max_j |Int |W[phi_j]|^2 dmeasure - 1| (isometry of the transform).
double cst_isometry_residual(int B, int m, int n_radial);

/// Applies the monopole Hamiltonian
///   H_B = -(1+|z|^2)^2 d^2/dz dconj(z) - Bz(1+|z|^2) d/dz
///         + B conj(z)(1+|z|^2) d/dconj(z) + B^2 |z|^2
/// to h_j by second-order central differences with step h_step and returns
/// |H_B h_j(z) - eps_m^B h_j(z)| / |h_j(z)|.  Throws std::domain_error when
/// |h_j(z)| < 1e-12 (the residual is ill-conditioned at eigenfunction zeros).
double eigen_residual(int B, int m, int j, std::complex<double> z, double h_step);

}  // namespace sphbin::sphere

#endif  // SPHBIN_SPHERE_HPP
