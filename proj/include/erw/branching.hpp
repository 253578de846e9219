#pragma once

#include <cstdint>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "erw/environment.hpp"

// Backward branching process of the excited random walk.  Flip coins whose
// first M head-probabilities are p_1..p_M and which are fair afterwards;
// F_m is the number of tails seen before the m-th head.  The process
// Z_{n+1} | Z_n = i  ~  F_{i+1} is a Markov chain on the nonnegative
// integers whose stationary mean determines the walk's speed.

namespace erw {

class TransitionKernel {
public:
    // perturbation is a test hook for end-to-end verification: a nonzero
    // value biases transition_prob/row by (1 +/- perturbation) on the
    // (i+j) even/odd checkerboard, deliberately breaking stochasticity so
    // downstream consistency checks must notice.  Moments and tail masses
    // stay exact; only the sampled matrix surface is corrupted.
    explicit TransitionKernel(CookieEnvironment env, double perturbation = 0.0);

    const CookieEnvironment& env() const { return env_; }

    // p(i,j) = P(F_{i+1} = j): probability of j tails before the (i+1)-st
    // head.  Exact dynamic programming over the biased flips, closed with a
    // negative-binomial term for the fair tail.  Memoized.
    double transition_prob(int i, int j) const;

    // First n entries of row i, computed in bulk without touching the memo.
    std::vector<double> row(int i, int n) const;

    // P(F_{i+1} > j_max), the analytic mass beyond a row prefix.
    double tail_mass(int i, int j_max) const;

    // E_k[Z_1].  For k >= M-1 this is exactly k+1-delta; below that the
    // finite branches and the negative-binomial tail are summed in closed
    // form, so no truncation error enters.
    double mean_next(int k) const;

    // E_k[s^{Z_1}] for s in [0,1], again with the tail in closed form.
    double pgf_next(int k, double s) const;

private:
    double compute(int i, int j) const;

    CookieEnvironment env_;
    double perturb_;
    mutable std::unordered_map<std::uint64_t, double> memo_;
    mutable std::shared_mutex memo_mu_;
};

// Equal-cookie (p,p,p) closed form for p(i,j): the displayed 3x3 corner
// matrix for i,j <= 2 and a binomial expression beyond.  Serves as an
// independent oracle for TransitionKernel::transition_prob.
double symmetric_closed_form(double p, int i, int j);

struct ChainPath {
    std::vector<std::int64_t> states;  // Z_0 .. Z_steps
    std::uint64_t seed;
};

// Samples the chain by direct coin flipping (count tails until the
// (Z_n + 1)-st head), independent of the kernel's arithmetic, so long-run
// averages cross-check the stationary solve.
ChainPath simulate_chain(const TransitionKernel& kernel, std::int64_t z0,
                         std::uint64_t steps, std::uint64_t seed);

}  // namespace erw
