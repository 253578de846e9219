#include "erw/branching.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

#include "erw/rng.hpp"

namespace erw {
namespace {

// ------------------------------------------------------------------
// binomial coefficients
//
// Exact 64-bit integers cover n <= 66 (C(66,33) still fits); larger
// arguments fall back to long-double log-factorials, whose ~1e-18
// relative error is far below the 1e-12 identities tested downstream.
// ------------------------------------------------------------------

constexpr int kExactBinomialMax = 66;

const std::uint64_t* pascal_row(int n) {
    static const auto table = [] {
        auto t = new std::array<std::array<std::uint64_t, kExactBinomialMax + 1>,
                                kExactBinomialMax + 1>();
        for (int n = 0; n <= kExactBinomialMax; ++n) {
            (*t)[n][0] = 1;
            for (int k = 1; k <= n; ++k) {
                (*t)[n][k] = (*t)[n - 1][k - 1] + (k <= n - 1 ? (*t)[n - 1][k] : 0);
            }
        }
        return t;
    }();
    return (*table)[n].data();
}

long double log_factorial(int n) {
    // grown on demand; thread_local so concurrent kernel users never race
    thread_local std::vector<long double> lf{0.0L, 0.0L};
    while (static_cast<int>(lf.size()) <= n) {
        lf.push_back(lf.back() + std::log(static_cast<long double>(lf.size())));
    }
    return lf[n];
}

constexpr long double kLn2 = 0.6931471805599453094172321214581766L;

// C(n,k) * 2^{-shift}, with C(n,k) = 0 outside 0 <= k <= n.
double binom_shifted(int n, int k, int shift) {
    if (k < 0 || k > n) return 0.0;
    if (n <= kExactBinomialMax) {
        return std::ldexp(static_cast<double>(pascal_row(n)[k]), -shift);
    }
    const long double lg =
        log_factorial(n) - log_factorial(k) - log_factorial(n - k) - shift * kLn2;
    return static_cast<double>(std::exp(lg));
}

// Distribution of the head count over the first `flips` biased coins,
// with bins capped at `cap`: paths reaching cap+1 heads are dropped.
// That is exactly right for kernel entries (a path with more than i heads
// among the early flips belongs to a different (i,j) event) and harmless
// when cap >= flips.
std::vector<double> capped_head_dp(const std::vector<double>& p, int flips, int cap) {
    std::vector<double> d(static_cast<std::size_t>(std::max(cap, 0)) + 1, 0.0);
    d[0] = 1.0;
    for (int t = 1; t <= flips; ++t) {
        const double pt = p[t - 1];
        const int hmax = std::min(cap, t);
        for (int h = hmax; h >= 1; --h) d[h] = d[h - 1] * pt + d[h] * (1.0 - pt);
        d[0] *= 1.0 - pt;
    }
    return d;
}

// P(Binomial(n, 1/2) <= k)
double fair_binomial_cdf(int n, int k) {
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    double sum = 0.0;
    for (int s = 0; s <= k; ++s) sum += binom_shifted(n, s, n);
    return sum;
}

}  // namespace

TransitionKernel::TransitionKernel(CookieEnvironment env, double perturbation)
    : env_(std::move(env)), perturb_(perturbation) {}

// The (i+1)-st head lands on flip T = i+j+1.  If T is within the biased
// prefix the whole event is one DP pass; otherwise condition on the number
// of biased heads h (at most min(M,i)): the remaining i+1-h heads come from
// fair coins, and "j tails in total" prices as a negative binomial.
double TransitionKernel::compute(int i, int j) const {
    const auto& p = env_.strengths();
    const int M = env_.cookie_count();
    const int T = i + j + 1;
    if (T <= M) {
        const auto d = capped_head_dp(p, T - 1, i);
        return d[i] * p[T - 1];
    }
    const int cap = std::min(M, i);
    const auto W = capped_head_dp(p, M, cap);
    const int n = i + j - M;     // fair flips before the final head
    const int shift = n + 1;     // each fair flip plus the final fair head
    double total = 0.0;
    for (int h = std::max(0, M - j); h <= cap; ++h) {
        total += W[h] * binom_shifted(n, i - h, shift);
    }
    return total;
}

double TransitionKernel::transition_prob(int i, int j) const {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
        static_cast<std::uint32_t>(j);
    {
        std::shared_lock lock(memo_mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    double value = compute(i, j);
    if (perturb_ != 0.0) {
        value *= ((i + j) % 2 == 0) ? 1.0 + perturb_ : 1.0 - perturb_;
    }
    std::unique_lock lock(memo_mu_);
    memo_.emplace(key, value);
    return value;
}

std::vector<double> TransitionKernel::row(int i, int n) const {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double value = compute(i, j);
        if (perturb_ != 0.0) {
            value *= ((i + j) % 2 == 0) ? 1.0 + perturb_ : 1.0 - perturb_;
        }
        out[static_cast<std::size_t>(j)] = value;
    }
    return out;
}

double TransitionKernel::tail_mass(int i, int j_max) const {
    const auto& p = env_.strengths();
    const int M = env_.cookie_count();
    if (i + j_max + 1 <= M) {
        // event: at most i heads in the first i+j_max+1 biased flips
        const auto d = capped_head_dp(p, i + j_max + 1, i);
        double sum = 0.0;
        for (int h = 0; h <= i; ++h) sum += d[h];
        return sum;
    }
    const int cap = std::min(M, i);
    const auto W = capped_head_dp(p, M, cap);
    const int n = i + j_max + 1 - M;  // fair flips available
    double total = 0.0;
    for (int h = 0; h <= cap; ++h) {
        total += W[h] * fair_binomial_cdf(n, i - h);
    }
    return total;
}

double TransitionKernel::mean_next(int k) const {
    const int M = env_.cookie_count();
    const double d = delta(env_);
    if (k >= M - 1) return k + 1 - d;
    // finite branches where the (k+1)-st head falls inside the biased prefix
    double mean = 0.0;
    for (int j = 1; j <= M - k - 1; ++j) mean += j * compute(k, j);
    // otherwise h <= k biased heads occurred; the fair phase needs k+1-h
    // heads and contributes M-h + (k+1-h) tails in expectation
    const auto W = capped_head_dp(env_.strengths(), M, k);
    for (int h = 0; h <= k; ++h) mean += W[h] * (M + k + 1 - 2 * h);
    return mean;
}

double TransitionKernel::pgf_next(int k, double s) const {
    const int M = env_.cookie_count();
    const int cap = std::min(M, k);
    double value = 0.0;
    for (int j = 0; j <= M - k - 1; ++j) value += std::pow(s, j) * compute(k, j);
    // fair-phase factor: tails before each fair head are geometric, so a
    // block of r fair heads contributes (1/(2-s))^r
    const auto W = capped_head_dp(env_.strengths(), M, cap);
    for (int h = 0; h <= cap; ++h) {
        value += W[h] * std::pow(s, M - h) *
                 std::pow(1.0 / (2.0 - s), k + 1 - h);
    }
    return value;
}

double symmetric_closed_form(double p, int i, int j) {
    const double q = 1.0 - p;
    if (i <= 2 && j <= 2) {
        const double corner[3][3] = {
            {p, p * q, p * q * q},
            {p * p, 2.0 * p * p * q, 1.5 * p * q * q},
            {p * p * p, 1.5 * p * p * q, 0.75 * (p * q * q + p * p * q)},
        };
        return corner[i][j];
    }
    const int n = i + j - 3;
    const int shift = i + j - 2;
    return binom_shifted(n, i - 3, shift) * p * p * p +
           binom_shifted(n, j - 3, shift) * q * q * q +
           3.0 * binom_shifted(n, i - 2, shift) * p * p * q +
           3.0 * binom_shifted(n, j - 2, shift) * p * q * q;
}

ChainPath simulate_chain(const TransitionKernel& kernel, std::int64_t z0,
                         std::uint64_t steps, std::uint64_t seed) {
    const auto& p = kernel.env().strengths();
    const std::int64_t M = kernel.env().cookie_count();
    Xoshiro256pp rng(seed);
    ChainPath path;
    path.seed = seed;
    path.states.reserve(steps + 1);
    path.states.push_back(z0);
    std::int64_t z = z0;
    for (std::uint64_t n = 0; n < steps; ++n) {
        std::int64_t heads_left = z + 1;
        std::int64_t tails = 0;
        std::int64_t flip = 0;
        while (heads_left > 0) {
            ++flip;
            const double pr = flip <= M ? p[flip - 1] : 0.5;
            if (rng.uniform() < pr) {
                --heads_left;
            } else {
                ++tails;
            }
        }
        z = tails;
        path.states.push_back(z);
    }
    return path;
}

}  // namespace erw
