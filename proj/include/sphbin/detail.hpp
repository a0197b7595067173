// SPDX-License-Identifier: Apache-2.0

#ifndef SPHBIN_DETAIL_HPP
#define SPHBIN_DETAIL_HPP

#include <complex>

namespace sphbin::detail {

// base^n for integer n >= 0 by squaring.  std::pow(complex, double) goes
// through exp(log z) and loses exactness on the negative real axis; integer
// powers have no branch to worry about.
inline std::complex<double> cpow_int(std::complex<double> base, int n)
{
    std::complex<double> result(1.0, 0.0);
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

inline double sq(double x) { return x * x; }

}  // namespace sphbin::detail

#endif  // SPHBIN_DETAIL_HPP
