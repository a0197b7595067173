// SPDX-License-Identifier: Apache-2.0

#include "sphbin/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sphbin::quadrature {

GaussLegendreRule gauss_legendre_01(int n)
{
    if (n < 1) throw std::domain_error("gauss_legendre_01: need at least one node");

    Eigen::VectorXd nodes(n), weights(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n(x) = 0.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1,1] -> [0,1]: symmetric pair (x, -x) lands at (1-x)/2, (1+x)/2.
        nodes[i] = 0.5 * (1.0 - x);
        weights[i] = 0.5 * w;
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[n - 1 - i] = 0.5 * w;
    }
    return GaussLegendreRule{std::move(nodes), std::move(weights)};
}

}  // namespace sphbin::quadrature
