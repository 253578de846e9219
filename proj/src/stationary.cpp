#include "erw/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "erw/errors.hpp"
#include "erw/speed_bounds.hpp"

namespace erw {
namespace {

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    for (double& x : v) x /= s;
}

}  // namespace

StationarySolution solve_stationary(const TransitionKernel& kernel, int n, double tol) {
    const CookieEnvironment& env = kernel.env();
    const int M = env.cookie_count();
    const double d = delta(env);
    if (!(d > 1.0)) {
        throw DomainError("stationary distribution requires delta > 1, got delta=" +
                          std::to_string(d));
    }
    if (n < M + 2) {
        throw DomainError("truncation must be at least M+2=" + std::to_string(M + 2));
    }

    const std::size_t N = static_cast<std::size_t>(n);
    std::vector<double> P(N * N);
    std::vector<double> deficit(N);
    for (std::size_t i = 0; i < N; ++i) {
        std::vector<double> r = kernel.row(static_cast<int>(i), n);
        double sum = 0.0;
        for (double v : r) sum += v;
        deficit[i] = 1.0 - sum;
        for (std::size_t j = 0; j < N; ++j) P[i * N + j] = r[j] / sum;
    }

    // Power iteration from the mass-at-zero start; the chain drifts toward
    // small states, so this converges in O(N) sweeps for delta > 1.
    std::vector<double> pi(N, 0.0), next(N);
    pi[0] = 1.0;
    const int budget = 200 + 12 * n;
    bool converged = false;
    for (int it = 0; it < budget; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < N; ++i) {
            const double w = pi[i];
            if (w == 0.0) continue;
            const double* row = &P[i * N];
            for (std::size_t j = 0; j < N; ++j) next[j] += w * row[j];
        }
        normalize(next);
        const double diff = total_variation(next, pi);
        pi.swap(next);
        if (diff < tol) {
            converged = true;
            break;
        }
    }

    if (!converged) {
        // Direct route: pi (P - I) = 0 with the first equation replaced by
        // the normalization sum(pi) = 1.
        Eigen::MatrixXd A(n, n);
        for (int row = 0; row < n; ++row) {
            for (int col = 0; col < n; ++col) {
                A(row, col) = P[static_cast<std::size_t>(col) * N + row];
            }
            A(row, row) -= 1.0;
        }
        for (int col = 0; col < n; ++col) A(0, col) = 1.0;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
        rhs(0) = 1.0;
        Eigen::VectorXd x = A.partialPivLu().solve(rhs);
        for (std::size_t i = 0; i < N; ++i) pi[i] = std::max(x(static_cast<int>(i)), 0.0);
        normalize(pi);
    }

    // Verify the fixed point regardless of which route produced it.
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        const double w = pi[i];
        if (w == 0.0) continue;
        const double* row = &P[i * N];
        for (std::size_t j = 0; j < N; ++j) next[j] += w * row[j];
    }
    normalize(next);
    const double residual = total_variation(next, pi);
    if (residual > std::max(100.0 * tol, 1e-10)) {
        throw NonConvergence("stationary solve residual " + std::to_string(residual) +
                             " exceeds tolerance after direct solve");
    }

    StationarySolution sol;
    sol.truncation = n;
    sol.pi_hat = std::move(pi);
    double mass_deficit = 0.0, mean = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        mass_deficit += sol.pi_hat[k] * deficit[k];
        mean += static_cast<double>(k) * sol.pi_hat[k];
    }
    sol.tail_mass_bound = mass_deficit;
    sol.mean_estimate = mean;
    sol.speed_estimate = 1.0 / (1.0 + 2.0 * mean);
    sol.genabc_residual = check_genabc(env, sol);
    return sol;
}

double check_genabc(const CookieEnvironment& env, const StationarySolution& sol) {
    const double d = delta(env);
    const int M = env.cookie_count();
    TransitionKernel kernel(env);
    double lhs = 0.0;
    for (int k = 0; k <= M - 2 && k < sol.truncation; ++k) {
        lhs += sol.pi_hat[static_cast<std::size_t>(k)] *
               (kernel.mean_next(k) - k - 1 + d);
    }
    return std::abs(lhs - (d - 1.0));
}

double check_abc(const CookieEnvironment& env, const StationarySolution& sol) {
    const AbcCoefficients co = abc_coefficients(env);
    return std::abs(co.a * sol.pi_hat[0] + co.b * sol.pi_hat[1] - co.c);
}

}  // namespace erw
