#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "erw/environment.hpp"

// Closed-form speed bounds for the three-cookie walk.  The stationary
// distribution of the backward branching process satisfies the linear
// relation a pi(0) + b pi(1) = c, which brackets pi(0); the speed is the
// increasing function V = f1 / (f2 + f3 pi(0)) of pi(0), so the bracket
// maps to a speed interval [v_lower, v_upper].  The gap search locates the
// parameters where that interval is widest.

namespace erw {

struct AbcCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

struct SpeedBounds {
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    double pi0_lower = 0.0;
    double pi0_upper = 0.0;
    double v_lower = 0.0;
    double v_upper = 0.0;
};

enum class Region { Symmetric, General };

struct GapSearchResult {
    std::vector<double> argmax;  // one entry for Symmetric, three for General
    double max_gap = 0.0;
    std::uint64_t evaluations = 0;
    double grid_resolution = 0.0;
};

// a = p1 (d2 + d3) + p2 d3 (1 - p1),  b = d3 p1 p2,  c = delta - 1
// with d_j = 2 p_j - 1.  Requires M = 3.
AbcCoefficients abc_coefficients(const CookieEnvironment& env);

// f1 = 2(p1+p2+p3) - 5
// f2 = 9 + 8(p1 p2 + p1 p3 + p2 p3) - 10(p1+p2+p3)
// f3 = 2 (2 p3 - 1)(p1 + p2 - 3 p1 p2).  Requires M = 3.
std::array<double, 3> f_coefficients(const CookieEnvironment& env);

// Bracket for pi(0), valid for delta > 2:
//   lower = c p1 p2 / (b (1-p1) + a p1 p2)
//   upper = c / (b p(0,1) / (1 - p(1,1)) + a)
// with the kernel entries p(0,1) = (1-p1) p2 and
// p(1,1) = (1-p1) p2 p3 + p1 (1-p2) p3.
std::pair<double, double> pi0_bracket(const CookieEnvironment& env);

// Speed interval from the bracket: g(x) = f1/(f2 + f3 x) is increasing on
// [0,1] when delta > 2 (f1 > 0, f3 < 0, f2 + f3 > 0), so the pi(0) lower
// bound gives v_lower and the upper bound gives v_upper.
SpeedBounds speed_interval(const CookieEnvironment& env);

// Equal-cookie interval as two explicit rational functions of p alone,
// valid on (5/6, 1]; agrees with speed_interval((p,p,p)) to rounding.
std::pair<double, double> symmetric_interval(double p);

// Maximizes gap = v_upper - v_lower over the region {delta >= 2 + 1e-9}:
// coarse grid scan (step grid_step) then derivative-free local refinement
// down to refine_tol.  Deterministic; ties go to the lexicographically
// smallest point.  The restricted overload clamps every coordinate to
// [lo, hi].  Throws EmptyRegion when no feasible grid point exists.
GapSearchResult maximize_gap(Region region, double grid_step, double refine_tol);
GapSearchResult maximize_gap(Region region, double grid_step, double refine_tol,
                             double lo, double hi);

}  // namespace erw
