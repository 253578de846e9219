#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "erw/environment.hpp"

// Direct Monte Carlo simulation of the excited random walk: X_0 = 0 and
// X_{n+1} = X_n +/- 1, stepping right with probability p_j on the j-th
// visit to the current site (1/2 once the cookies are gone).  Speed is
// estimated as X_n/n across replicates, or through hitting times via
// lim X_n/n = 1 / lim T_n/n.

namespace erw {

struct WalkResult {
    std::int64_t final_position = 0;
    std::uint64_t steps = 0;
    std::int64_t min_position = 0;
    std::int64_t max_position = 0;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t replicates = 0;
    std::uint64_t steps_per_replicate = 0;
    std::uint64_t seed = 0;
};

// p_j for visit_count = j <= M, 1/2 beyond.  The count includes the visit
// that triggers the step: the walker eats a cookie on arrival, so the very
// first step from the origin already uses p_1.
double step_probability(const CookieEnvironment& env, std::uint64_t visit_count);

// Bit-reproducible given (env, steps, seed): one uniform per step compared
// against step_probability.  Memory grows with the span of visited sites.
WalkResult simulate_walk(const CookieEnvironment& env, std::uint64_t steps,
                         std::uint64_t seed);

// Mean and sample standard error of final_position/steps over replicates;
// replicate r runs on the stream sub_seed(seed, r).  Replicates may run on
// `threads` threads (0 = hardware concurrency); the reduction order is
// fixed, so results do not depend on scheduling.  When `results` is given
// it receives the per-replicate WalkResults in replicate order.
MonteCarloEstimate estimate_speed(const CookieEnvironment& env, std::uint64_t steps,
                                  std::uint64_t replicates, std::uint64_t seed,
                                  unsigned threads = 0,
                                  std::vector<WalkResult>* results = nullptr);

// First n with X_n = target, or nullopt if not reached within step_cap
// (expected for recurrent and zero-speed environments).
std::optional<std::uint64_t> hitting_time(const CookieEnvironment& env,
                                          std::int64_t target, std::uint64_t seed,
                                          std::uint64_t step_cap);

}  // namespace erw
