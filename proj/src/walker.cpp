#include "erw/walker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "erw/rng.hpp"

namespace erw {
namespace {

// Visit counts over a contiguous window of sites, recentered never,
// extended geometrically whenever the walk leaves the current span.
class CountWindow {
public:
    CountWindow() : counts_(129, 0), lo_(-64) {}

    std::uint64_t bump(std::int64_t x) {
        if (x < lo_ || x >= lo_ + static_cast<std::int64_t>(counts_.size())) grow(x);
        return ++counts_[static_cast<std::size_t>(x - lo_)];
    }

private:
    void grow(std::int64_t x) {
        const std::int64_t size = static_cast<std::int64_t>(counts_.size());
        if (x < lo_) {
            const std::int64_t add = std::max(size, lo_ - x);
            counts_.insert(counts_.begin(), static_cast<std::size_t>(add), 0);
            lo_ -= add;
        } else {
            const std::int64_t need = x - (lo_ + size) + 1;
            counts_.insert(counts_.end(),
                           static_cast<std::size_t>(std::max(size, need)), 0);
        }
    }

    std::vector<std::uint64_t> counts_;
    std::int64_t lo_;
};

}  // namespace

double step_probability(const CookieEnvironment& env, std::uint64_t visit_count) {
    if (visit_count == 0) {
        throw std::invalid_argument("visit_count starts at 1 (the current visit counts)");
    }
    const auto& p = env.strengths();
    return visit_count <= p.size() ? p[visit_count - 1] : 0.5;
}

WalkResult simulate_walk(const CookieEnvironment& env, std::uint64_t steps,
                         std::uint64_t seed) {
    if (steps == 0) throw std::invalid_argument("simulate_walk needs steps >= 1");
    const auto& p = env.strengths();
    const std::uint64_t M = p.size();
    Xoshiro256pp rng(seed);
    CountWindow visits;
    std::int64_t x = 0, mn = 0, mx = 0;
    for (std::uint64_t n = 0; n < steps; ++n) {
        const std::uint64_t c = visits.bump(x);
        const double pr = c <= M ? p[c - 1] : 0.5;
        x += rng.uniform() < pr ? 1 : -1;
        if (x < mn) mn = x;
        if (x > mx) mx = x;
    }
    return WalkResult{x, steps, mn, mx};
}

MonteCarloEstimate estimate_speed(const CookieEnvironment& env, std::uint64_t steps,
                                  std::uint64_t replicates, std::uint64_t seed,
                                  unsigned threads, std::vector<WalkResult>* results) {
    if (replicates < 2) throw std::invalid_argument("estimate_speed needs replicates >= 2");
    std::vector<double> speeds(replicates);
    if (results != nullptr) results->assign(replicates, WalkResult{});
    auto worker_span = [&](std::atomic<std::uint64_t>& cursor) {
        for (std::uint64_t r = cursor.fetch_add(1); r < replicates;
             r = cursor.fetch_add(1)) {
            const WalkResult w = simulate_walk(env, steps, sub_seed(seed, r));
            speeds[r] = static_cast<double>(w.final_position) /
                        static_cast<double>(steps);
            if (results != nullptr) (*results)[r] = w;
        }
    };
    unsigned n_threads = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
    n_threads = static_cast<unsigned>(
        std::min<std::uint64_t>(n_threads, replicates));
    if (n_threads <= 1) {
        std::atomic<std::uint64_t> cursor{0};
        worker_span(cursor);
    } else {
        std::atomic<std::uint64_t> cursor{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] { worker_span(cursor); });
        }
        for (auto& th : pool) th.join();
    }
    // fixed-order reduction: replicate index order, independent of scheduling
    double mean = 0.0;
    for (double v : speeds) mean += v;
    mean /= static_cast<double>(replicates);
    double ss = 0.0;
    for (double v : speeds) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(replicates - 1));
    MonteCarloEstimate est;
    est.mean = mean;
    est.std_error = sd / std::sqrt(static_cast<double>(replicates));
    est.replicates = replicates;
    est.steps_per_replicate = steps;
    est.seed = seed;
    return est;
}

std::optional<std::uint64_t> hitting_time(const CookieEnvironment& env,
                                          std::int64_t target, std::uint64_t seed,
                                          std::uint64_t step_cap) {
    if (target < 1) throw std::invalid_argument("hitting_time needs target >= 1");
    const auto& p = env.strengths();
    const std::uint64_t M = p.size();
    Xoshiro256pp rng(seed);
    CountWindow visits;
    std::int64_t x = 0;
    for (std::uint64_t n = 1; n <= step_cap; ++n) {
        const std::uint64_t c = visits.bump(x);
        const double pr = c <= M ? p[c - 1] : 0.5;
        x += rng.uniform() < pr ? 1 : -1;
        if (x == target) return n;
    }
    return std::nullopt;
}

}  // namespace erw
