// SPDX-License-Identifier: Apache-2.0

#ifndef SPHBIN_QUADRATURE_HPP
#define SPHBIN_QUADRATURE_HPP

#include <Eigen/Core>

namespace sphbin::quadrature {

struct GaussLegendreRule {
    Eigen::VectorXd nodes;    // in (0, 1), ascending
    Eigen::VectorXd weights;  // sum to 1
};

/// n-point Gauss-Legendre rule on [0, 1]; exact for polynomials of degree
/// <= 2n-1.  Nodes by Newton iteration on the Legendre recurrence.
GaussLegendreRule gauss_legendre_01(int n);

}  // namespace sphbin::quadrature

#endif  // SPHBIN_QUADRATURE_HPP
