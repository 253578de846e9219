#include "erw/speed_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "erw/errors.hpp"

namespace erw {
namespace {

constexpr double kDeltaEdge = 1e-9;  // stay this far above the delta=2 boundary

void require_three_cookies(const CookieEnvironment& env, const char* what) {
    if (env.cookie_count() != 3) {
        throw DomainError(std::string(what) + " requires an M=3 environment, got M=" +
                          std::to_string(env.cookie_count()));
    }
}

void require_positive_drift(const CookieEnvironment& env, const char* what) {
    const double d = delta(env);
    if (!(d > 2.0)) {
        throw DomainError(std::string(what) + " requires delta > 2, got delta=" +
                          std::to_string(d));
    }
}

double gap_at(const CookieEnvironment& env) {
    const SpeedBounds b = speed_interval(env);
    return b.v_upper - b.v_lower;
}

bool feasible(double p1, double p2, double p3) {
    return 2.0 * (p1 + p2 + p3) - 3.0 >= 2.0 + kDeltaEdge;
}

// Grid coordinates lo, lo+step, ..., capped so hi itself is always included.
std::vector<double> grid_axis(double lo, double hi, double step) {
    std::vector<double> axis;
    for (double x = lo; x < hi; x += step) axis.push_back(x);
    axis.push_back(hi);
    return axis;
}

GapSearchResult maximize_symmetric(double grid_step, double refine_tol,
                                   double lo, double hi) {
    const double pmin = std::max(lo, (5.0 + kDeltaEdge) / 6.0);
    const double pmax = std::min(hi, 1.0);
    if (pmin > pmax) throw EmptyRegion("symmetric region has no delta > 2 point");

    GapSearchResult result;
    result.grid_resolution = grid_step;
    double best_p = 0.0, best_gap = -1.0;
    auto eval = [&](double p) {
        const auto iv = symmetric_interval(p);
        ++result.evaluations;
        const double g = iv.second - iv.first;
        if (g > best_gap) {
            best_gap = g;
            best_p = p;
        }
        return g;
    };
    for (double p : grid_axis(pmin, pmax, grid_step)) eval(p);

    // golden-section refinement around the grid argmax
    const double invphi = 0.6180339887498949;
    double a = std::max(pmin, best_p - grid_step);
    double b = std::min(pmax, best_p + grid_step);
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double g1 = eval(x1), g2 = eval(x2);
    while (b - a > refine_tol) {
        if (g1 < g2) {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + invphi * (b - a);
            g2 = eval(x2);
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - invphi * (b - a);
            g1 = eval(x1);
        }
    }
    result.argmax = {best_p};
    result.max_gap = best_gap;
    return result;
}

GapSearchResult maximize_general(double grid_step, double refine_tol,
                                 double lo, double hi) {
    GapSearchResult result;
    result.grid_resolution = grid_step;
    const std::vector<double> axis = grid_axis(std::max(lo, 0.0), std::min(hi, 1.0),
                                               grid_step);
    double best[3] = {0.0, 0.0, 0.0};
    double best_gap = -1.0;
    auto consider = [&](double p1, double p2, double p3) {
        if (!feasible(p1, p2, p3)) return;
        const double g = gap_at(CookieEnvironment({p1, p2, p3}));
        ++result.evaluations;
        if (g > best_gap) {
            best_gap = g;
            best[0] = p1;
            best[1] = p2;
            best[2] = p3;
        }
    };
    // ascending lexicographic order + strict improvement = lexicographically
    // smallest argmax on ties
    for (double p1 : axis)
        for (double p2 : axis)
            for (double p3 : axis) consider(p1, p2, p3);
    if (best_gap < 0.0) throw EmptyRegion("general region has no delta > 2 point");

    // coordinate pattern search with halving steps
    const double cmin = std::max(lo, 0.0), cmax = std::min(hi, 1.0);
    for (double step = grid_step; step >= refine_tol; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int coord = 0; coord < 3; ++coord) {
                for (double sign : {1.0, -1.0}) {
                    double cand[3] = {best[0], best[1], best[2]};
                    cand[coord] =
                        std::clamp(cand[coord] + sign * step, cmin, cmax);
                    if (!feasible(cand[0], cand[1], cand[2])) continue;
                    const double g =
                        gap_at(CookieEnvironment({cand[0], cand[1], cand[2]}));
                    ++result.evaluations;
                    if (g > best_gap) {
                        best_gap = g;
                        best[0] = cand[0];
                        best[1] = cand[1];
                        best[2] = cand[2];
                        improved = true;
                    }
                }
            }
        }
    }
    result.argmax = {best[0], best[1], best[2]};
    result.max_gap = best_gap;
    return result;
}

}  // namespace

AbcCoefficients abc_coefficients(const CookieEnvironment& env) {
    require_three_cookies(env, "abc_coefficients");
    const auto& p = env.strengths();
    const double d2 = 2.0 * p[1] - 1.0, d3 = 2.0 * p[2] - 1.0;
    AbcCoefficients co;
    co.a = p[0] * (d2 + d3) + p[1] * d3 * (1.0 - p[0]);
    co.b = d3 * p[0] * p[1];
    co.c = delta(env) - 1.0;
    return co;
}

std::array<double, 3> f_coefficients(const CookieEnvironment& env) {
    require_three_cookies(env, "f_coefficients");
    const auto& p = env.strengths();
    const double s1 = p[0] + p[1] + p[2];
    const double s2 = p[0] * p[1] + p[0] * p[2] + p[1] * p[2];
    return {2.0 * s1 - 5.0,
            9.0 + 8.0 * s2 - 10.0 * s1,
            2.0 * (2.0 * p[2] - 1.0) * (p[0] + p[1] - 3.0 * p[0] * p[1])};
}

std::pair<double, double> pi0_bracket(const CookieEnvironment& env) {
    require_three_cookies(env, "pi0_bracket");
    require_positive_drift(env, "pi0_bracket");
    const auto& p = env.strengths();
    const AbcCoefficients co = abc_coefficients(env);
    const double lower =
        co.c * p[0] * p[1] / (co.b * (1.0 - p[0]) + co.a * p[0] * p[1]);
    const double p01 = (1.0 - p[0]) * p[1];
    const double p11 = (1.0 - p[0]) * p[1] * p[2] + p[0] * (1.0 - p[1]) * p[2];
    const double upper = co.c / (co.b * p01 / (1.0 - p11) + co.a);
    return {lower, upper};
}

SpeedBounds speed_interval(const CookieEnvironment& env) {
    require_three_cookies(env, "speed_interval");
    require_positive_drift(env, "speed_interval");
    const auto f = f_coefficients(env);
    const auto [lo, hi] = pi0_bracket(env);
    SpeedBounds b;
    b.f1 = f[0];
    b.f2 = f[1];
    b.f3 = f[2];
    b.pi0_lower = lo;
    b.pi0_upper = hi;
    b.v_lower = f[0] / (f[1] + f[2] * lo);
    b.v_upper = f[0] / (f[1] + f[2] * hi);
    return b;
}

std::pair<double, double> symmetric_interval(double p) {
    if (!(p > 5.0 / 6.0 && p <= 1.0)) {
        throw DomainError("symmetric_interval requires p in (5/6, 1], got p=" +
                          std::to_string(p));
    }
    const double p2 = p * p, p3 = p2 * p, p4 = p3 * p, p5 = p4 * p, p6 = p5 * p;
    const double lower = (6.0 * p - 5.0) * (p2 - 2.0 * p - 1.0) /
                         (24.0 * p4 - 42.0 * p3 - 3.0 * p2 + 28.0 * p - 9.0);
    const double upper =
        (6.0 * p - 5.0) * (2.0 * p4 - 7.0 * p3 + 5.0 * p2 + p - 3.0) /
        (48.0 * p6 - 156.0 * p5 + 180.0 * p4 - 61.0 * p3 - 53.0 * p2 +
         51.0 * p - 11.0);
    return {lower, upper};
}

GapSearchResult maximize_gap(Region region, double grid_step, double refine_tol) {
    return maximize_gap(region, grid_step, refine_tol, 0.0, 1.0);
}

GapSearchResult maximize_gap(Region region, double grid_step, double refine_tol,
                             double lo, double hi) {
    if (!(grid_step > 0.0) || !(refine_tol > 0.0)) {
        throw DomainError("maximize_gap needs positive grid_step and refine_tol");
    }
    return region == Region::Symmetric
               ? maximize_symmetric(grid_step, refine_tol, lo, hi)
               : maximize_general(grid_step, refine_tol, lo, hi);
}

}  // namespace erw
