#pragma once

#include <vector>

#include "erw/branching.hpp"
#include "erw/environment.hpp"

// Truncated stationary distribution of the backward branching process and
// the speed it implies through V = 1 / (1 + 2 E_pi[Z_0]).
//
// The chain's stationary tail decays like k^(-delta), so the truncated
// estimates converge polynomially, not geometrically: the fixed point of
// the renormalized N x N block differs from the infinite chain by
// O(N^(1-delta)) in pi_hat(0) and by O(N^(2-delta)) in the mean.  The
// genabc_residual field makes that error observable; see check_genabc.

namespace erw {

struct StationarySolution {
    int truncation = 0;              // N
    std::vector<double> pi_hat;      // stationary vector of the truncated chain
    double tail_mass_bound = 0.0;    // pi_hat-weighted retained-mass deficit
    double mean_estimate = 0.0;      // sum k * pi_hat(k)
    double genabc_residual = 0.0;    // residual of the stationary mean identity
    double speed_estimate = 0.0;     // 1 / (1 + 2 * mean_estimate)
};

// Builds the leading N x N block of the kernel, renormalizes each row by its
// retained mass, and solves pi = pi P by power iteration (successive
// iterates within tol in total variation), falling back to a direct
// null-space solve when iteration stalls.  Throws DomainError when
// delta <= 1 (no stationary distribution exists) or N < M+2, and
// NonConvergence if neither route produces a verified fixed point.
//
// For delta in (1,2] the solve itself converges fine but mean_estimate has
// no limit as N grows (the stationary mean is infinite there); callers see
// that as a diagnostic trend, not an error.
StationarySolution solve_stationary(const TransitionKernel& kernel, int n, double tol);

// Residual of the identity  sum_{k<=M-2} pi(k) (E_k[Z_1] - k - 1 + delta)
// = delta - 1,  which the exact stationary distribution satisfies; with the
// truncated pi_hat the returned value measures truncation quality.
double check_genabc(const CookieEnvironment& env, const StationarySolution& sol);

// M=3 specialization |a pi_hat(0) + b pi_hat(1) - c| with the coefficients
// from speed_bounds; coincides with check_genabc there.
double check_abc(const CookieEnvironment& env, const StationarySolution& sol);

}  // namespace erw
