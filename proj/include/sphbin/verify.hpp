// SPDX-License-Identifier: Apache-2.0
//
// Grid-based invariant suites for the library modules.  Each check reports
// the worst residual it observed together with the tolerance it was judged
// against; the CLI `verify` subcommand and the acceptance tests both drive
// these.

#ifndef SPHBIN_VERIFY_HPP
#define SPHBIN_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

namespace sphbin::verify {

struct CheckResult {
    std::string suite;
    std::string name;
    double max_residual;
    double tolerance;

    bool passed() const { return max_residual <= tolerance; }
};

/// Special-function identities: recurrence/series agreement, reflection,
/// endpoint values, the Q-polynomial relations and its derivative-generated
/// definition.  `tol_override`, when set, replaces the default tolerance of
/// every precision check (it never touches semantic bounds such as
/// convergence-order bands).
std::vector<CheckResult> specfun_checks(std::optional<double> tol_override = {});

/// Distribution invariants over B = 0..b_max, m = 0..m_max,
/// mu in {0.05, ..., 0.95}.
std::vector<CheckResult> gbd_checks(int b_max, int m_max,
                                    std::optional<double> tol_override = {});

/// Geometry invariants over B = 0..b_max, m = 0..m_max (finite-difference
/// eigen-equation checks are capped at B <= 4, m <= 3 where the step-size
/// tolerances are calibrated).
std::vector<CheckResult> sphere_checks(int b_max, int m_max,
                                       std::optional<double> tol_override = {});

}  // namespace sphbin::verify

#endif  // SPHBIN_VERIFY_HPP
