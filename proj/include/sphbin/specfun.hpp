// SPDX-License-Identifier: Apache-2.0
//
// Jacobi polynomials, terminating Gauss hypergeometric sums, log-factorials
// and the Landau-level basis polynomials Q_{B,m,j}.
//
// The parameter ranges served here are the ones generated by the spherical
// Landau eigenbasis: P_n^{(a,b)} with integer a + b = 2B >= 0, so at most one
// of a, b can be a negative integer.  A negative-integer first parameter is
// routed through the reflection identity
//
//     P_n^{(a,b)}(x) = (-1)^n P_n^{(b,a)}(-x)
//
// so that the terminating series is always summed in a slot whose parameter
// exceeds -1.  The usual (a+1)_n / n! prefactor formula is 0/0-degenerate at
// negative integer a and is never used there.

#ifndef SPHBIN_SPECFUN_HPP
#define SPHBIN_SPECFUN_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace sphbin::specfun {

namespace detail {

// Alternating terminating series can lose many digits to cancellation at
// the top of the (degree, parameter) ranges; sums run in extended precision
// and escalate to the widest available float when the measured condition
// number says extended precision is not enough.
template <typename Real>
using Accumulator =
    std::conditional_t<std::is_same_v<Real, double> || std::is_same_v<Real, float>, long double,
                       Real>;

#if defined(__SIZEOF_FLOAT128__)
using WidestFloat = __float128;
#else
using WidestFloat = long double;
#endif

template <typename Real>
bool is_negative_integer(Real a)
{
    return a <= Real(-1) && a == std::floor(a);
}

// One pass of the terminating sum; condition_number reports
// sum_k |T_k| / |sum|, the cancellation-driven amplification of rounding.
template <typename Acc, typename Real>
Acc hyp2f1_sum(int m, Real b, Real c, Real t, double& condition_number)
{
    Acc sum(1);
    Acc sum_abs(1);
    Acc term(1);
    for (int k = 0; k < m; ++k) {
        const Acc ck = Acc(c) + Acc(k);
        if (ck == Acc(0))
            throw std::domain_error(
                "hyp2f1_terminating: Pochhammer (c)_k vanishes at k = " + std::to_string(k + 1));
        term *= Acc(k - m) * (Acc(b) + Acc(k)) / (ck * Acc(k + 1)) * Acc(t);
        sum += term;
        sum_abs += term < Acc(0) ? -term : term;
    }
    const double mag = std::abs(static_cast<double>(sum));
    condition_number = static_cast<double>(sum_abs) / (mag > 0.0 ? mag : 1e-300);
    return sum;
}

}  // namespace detail

/// ln(n!).  Exact zero for n < 2, lgamma(n+1) otherwise.
inline double log_factorial(long long n)
{
    if (n < 0)
        throw std::domain_error("log_factorial: n must be >= 0, got " + std::to_string(n));
    if (n < 2) return 0.0;
    return std::lgamma(static_cast<double>(n) + 1.0);
}

/// Terminating Gauss sum  sum_{k=0}^{m} (-m)_k (b)_k / ((c)_k k!) t^k,
/// accumulated forward by term ratios: O(m) work, no Pochhammer tables.
/// Throws std::domain_error when (c)_k vanishes before the series ends.
template <typename Real>
Real hyp2f1_terminating(int m, Real b, Real c, Real t)
{
    if (m < 0)
        throw std::domain_error("hyp2f1_terminating: termination order must be >= 0, got " +
                                std::to_string(m));
    double condition_number = 1.0;
    const auto sum =
        detail::hyp2f1_sum<detail::Accumulator<Real>>(m, b, c, t, condition_number);
    if (condition_number <= 1e3 || std::is_same_v<detail::Accumulator<Real>, detail::WidestFloat>)
        return static_cast<Real>(sum);
    return static_cast<Real>(detail::hyp2f1_sum<detail::WidestFloat>(m, b, c, t,
                                                                     condition_number));
}

/// P_n^{(a,b)}(x) through the terminating representation
///
///     P_n^{(a,b)}(x) = (a+1)_n / n! * 2F1(-n, n+a+b+1; a+1; (1-x)/2),
///
/// reflecting first when a is a negative integer (see file header).  When
/// neither parameter is a negative integer, x < 0 is also reflected so the
/// series argument stays in [0, 1/2], where the alternating sum is best
/// conditioned.  Throws std::domain_error if both a and b are negative
/// integers; that combination cannot arise from a + b = 2B >= 0.
template <typename Real>
Real jacobi(int n, Real a, Real b, Real x)
{
    if (n < 0)
        throw std::domain_error("jacobi: degree must be >= 0, got " + std::to_string(n));
    if (n == 0) return Real(1);
    const bool a_negative = detail::is_negative_integer(a);
    if (a_negative && detail::is_negative_integer(b))
        throw std::domain_error("jacobi: both parameters are negative integers <= -1");
    if (a_negative || (x < Real(0) && !detail::is_negative_integer(b))) {
        const Real reflected = jacobi(n, b, a, -x);
        return (n % 2 == 0) ? reflected : -reflected;
    }
    using Acc = detail::Accumulator<Real>;
    Acc prefactor(1);
    for (int k = 1; k <= n; ++k) prefactor *= (Acc(a) + Acc(k)) / Acc(k);
    return static_cast<Real>(
        prefactor * Acc(hyp2f1_terminating(n, Real(n) + a + b + Real(1), a + Real(1),
                                           (Real(1) - x) / Real(2))));
}

/// Q_{B,m,j}(t) = ((m+j)!/j!) * 2F1(-m, 2B+m+1; j+1; t), the polynomial part
/// of the Landau-level basis in its derivative-generated form.  Related to
/// the Jacobi form by Q_{B,m,j}(t) = m! P_m^{(j, 2B-j)}(1-2t).
template <typename Real>
Real q_polynomial(int B, int m, int j, Real t)
{
    if (B < 0 || m < 0 || j < 0)
        throw std::domain_error("q_polynomial: B, m, j must all be >= 0");
    Real prefactor(1);
    for (int k = 1; k <= m; ++k) prefactor *= Real(j + k);
    return prefactor * hyp2f1_terminating(m, Real(2 * B + m + 1), Real(j + 1), t);
}

}  // namespace sphbin::specfun

#endif  // SPHBIN_SPECFUN_HPP
