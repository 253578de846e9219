#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "erw/environment.hpp"
#include "erw/errors.hpp"
#include "erw/rng.hpp"
#include "erw/speed_bounds.hpp"

using erw::CookieEnvironment;

namespace {

// uniform draw over the delta > 2 corner of the cube by rejection
std::vector<double> draw_ballistic(erw::Xoshiro256pp& rng) {
    for (;;) {
        std::vector<double> p{rng.uniform(), rng.uniform(), rng.uniform()};
        if (2.0 * (p[0] + p[1] + p[2]) - 3.0 > 2.0 + 1e-9) return p;
    }
}

}  // namespace

TEST_CASE("linear relation coefficients at hand-checked points") {
    const auto co1 = erw::abc_coefficients(CookieEnvironment({1.0, 1.0, 1.0}));
    CHECK(co1.a == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(co1.b == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(co1.c == doctest::Approx(2.0).epsilon(1e-15));

    const auto co9 = erw::abc_coefficients(CookieEnvironment({0.9, 0.9, 0.9}));
    CHECK(co9.a == doctest::Approx(1.512).epsilon(1e-14));
    CHECK(co9.b == doctest::Approx(0.648).epsilon(1e-14));
    CHECK(co9.c == doctest::Approx(1.4).epsilon(1e-14));

    const auto co5 = erw::abc_coefficients(CookieEnvironment({0.5, 0.5, 0.5}));
    CHECK(co5.a == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(co5.b == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(co5.c == doctest::Approx(-1.0).epsilon(1e-15));

    CHECK_THROWS_AS(erw::abc_coefficients(CookieEnvironment({0.9, 0.9})),
                    erw::DomainError);
}

TEST_CASE("speed numerator and denominator coefficients") {
    const auto f1 = erw::f_coefficients(CookieEnvironment({1.0, 1.0, 1.0}));
    CHECK(f1[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f1[1] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(f1[2] == doctest::Approx(-2.0).epsilon(1e-15));

    const auto f9 = erw::f_coefficients(CookieEnvironment({0.9, 0.9, 0.9}));
    CHECK(f9[0] == doctest::Approx(0.4).epsilon(1e-13));
    CHECK(f9[1] == doctest::Approx(1.44).epsilon(1e-13));
    CHECK(f9[2] == doctest::Approx(-1.008).epsilon(1e-13));

    const double b = 5.0 / 6.0;
    CHECK(erw::f_coefficients(CookieEnvironment({b, b, b}))[0] ==
          doctest::Approx(0.0).epsilon(1e-14));

    CHECK_THROWS_AS(erw::f_coefficients(CookieEnvironment({0.9})), erw::DomainError);
}

TEST_CASE("bracket endpoints at the reference point and the corner") {
    const auto [lo9, hi9] = erw::pi0_bracket(CookieEnvironment({0.9, 0.9, 0.9}));
    CHECK(lo9 == doctest::Approx(0.87939698492462326).epsilon(1e-14));
    CHECK(hi9 == doctest::Approx(0.88518277077599128).epsilon(1e-14));

    const auto [lo1, hi1] = erw::pi0_bracket(CookieEnvironment({1.0, 1.0, 1.0}));
    CHECK(lo1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hi1 == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(erw::pi0_bracket(CookieEnvironment({0.8, 0.8, 0.8})),
                    erw::DomainError);
}

TEST_CASE("speed interval at the reference point is an exact rational") {
    const erw::SpeedBounds b = erw::speed_interval(CookieEnvironment({0.9, 0.9, 0.9}));
    // at p = 9/10 the two endpoints reduce to 995/1377 and 46020/63017
    CHECK(b.v_lower == doctest::Approx(995.0 / 1377.0).epsilon(1e-14));
    CHECK(b.v_upper == doctest::Approx(46020.0 / 63017.0).epsilon(1e-14));
    CHECK(b.v_lower < b.v_upper);

    const erw::SpeedBounds one = erw::speed_interval(CookieEnvironment({1.0, 1.0, 1.0}));
    CHECK(one.v_lower == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.v_upper == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(erw::speed_interval(CookieEnvironment({0.8, 0.8, 0.8})),
                    erw::DomainError);
}

TEST_CASE("equal-cookie rationals match the general interval") {
    for (int t = 0; t <= 100; ++t) {
        const double p = 5.0 / 6.0 + 1e-6 + (1.0 - 5.0 / 6.0 - 1e-6) * t / 100.0;
        const auto [lo, hi] = erw::symmetric_interval(p);
        const erw::SpeedBounds b = erw::speed_interval(CookieEnvironment({p, p, p}));
        CHECK(std::abs(lo - b.v_lower) < 1e-12);
        CHECK(std::abs(hi - b.v_upper) < 1e-12);
    }
    CHECK_THROWS_AS(erw::symmetric_interval(5.0 / 6.0), erw::DomainError);
    CHECK_THROWS_AS(erw::symmetric_interval(0.2), erw::DomainError);
    CHECK_THROWS_AS(erw::symmetric_interval(1.0 + 1e-9), erw::DomainError);
}

TEST_CASE("interval collapses toward zero at the ballistic boundary") {
    const auto [lo, hi] = erw::symmetric_interval(5.0 / 6.0 + 1e-9);
    CHECK(lo > 0.0);
    CHECK(hi < 1e-7);
    CHECK(lo <= hi);
    const auto [lo1, hi1] = erw::symmetric_interval(1.0);
    CHECK(lo1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hi1 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sign pattern keeps the speed map increasing over the ballistic region") {
    erw::Xoshiro256pp rng(2024);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::vector<double> p = draw_ballistic(rng);
        const CookieEnvironment env(p);
        const auto f = erw::f_coefficients(env);
        CHECK(f[0] > 0.0);
        CHECK(f[2] < 0.0);
        CHECK(f[1] + f[2] > 0.0);
        CHECK(f[0] * f[2] < 0.0);
        // g(x) = f1/(f2+f3 x) increasing on [0,1]
        const double g0 = f[0] / f[1];
        const double g1 = f[0] / (f[1] + f[2]);
        CHECK(g0 < g1);

        const erw::SpeedBounds b = erw::speed_interval(env);
        CHECK(b.pi0_lower <= b.pi0_upper + 1e-15);
        CHECK(b.pi0_lower >= 0.0);
        CHECK(b.pi0_upper <= 1.0 + 1e-15);
        CHECK(b.v_lower > 0.0);
        CHECK(b.v_lower <= b.v_upper + 1e-15);
        // trivial dominance: the speed can never beat the best single drift
        const double dmax = 2.0 * std::max({p[0], p[1], p[2]}) - 1.0;
        CHECK(b.v_upper <= dmax + 1e-12);
    }
}

TEST_CASE("widest equal-cookie interval") {
    const erw::GapSearchResult r = erw::maximize_gap(erw::Region::Symmetric, 1e-3, 1e-7);
    CHECK(r.argmax.size() == 1);
    CHECK(r.argmax[0] == doctest::Approx(0.8664898629413333).epsilon(1e-6));
    CHECK(r.max_gap == doctest::Approx(0.010325976044403551).epsilon(1e-10));
    CHECK(r.evaluations > 0);
    CHECK(r.grid_resolution == doctest::Approx(1e-3));
}

TEST_CASE("widest general interval sits on the p3=1 face") {
    const erw::GapSearchResult r = erw::maximize_gap(erw::Region::General, 0.02, 1e-7);
    CHECK(r.argmax.size() == 3);
    CHECK(r.argmax[0] == doctest::Approx(0.913811).epsilon(2e-4));
    CHECK(r.argmax[1] == doctest::Approx(0.666396).epsilon(2e-4));
    CHECK(r.argmax[2] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.max_gap == doctest::Approx(0.019456415326776666).epsilon(1e-10));
}

TEST_CASE("restricting the search region cannot improve the maximum") {
    const erw::GapSearchResult full = erw::maximize_gap(erw::Region::Symmetric, 1e-3, 1e-7);
    const erw::GapSearchResult high =
        erw::maximize_gap(erw::Region::Symmetric, 1e-3, 1e-7, 0.99, 1.0);
    CHECK(high.max_gap < full.max_gap);
    CHECK(high.argmax[0] >= 0.99);

    const erw::GapSearchResult corner =
        erw::maximize_gap(erw::Region::General, 0.02, 1e-7, 0.9, 1.0);
    CHECK(corner.max_gap <= erw::maximize_gap(erw::Region::General, 0.02, 1e-7).max_gap);
    for (double c : corner.argmax) {
        CHECK(c >= 0.9);
        CHECK(c <= 1.0);
    }
}

TEST_CASE("search regions without ballistic points are rejected") {
    CHECK_THROWS_AS(erw::maximize_gap(erw::Region::Symmetric, 1e-3, 1e-7, 0.0, 0.8),
                    erw::EmptyRegion);
    CHECK_THROWS_AS(erw::maximize_gap(erw::Region::General, 0.02, 1e-7, 0.0, 0.55),
                    erw::EmptyRegion);
    CHECK_THROWS_AS(erw::maximize_gap(erw::Region::Symmetric, -0.1, 1e-7),
                    erw::DomainError);
    CHECK_THROWS_AS(erw::maximize_gap(erw::Region::Symmetric, 1e-3, 0.0),
                    erw::DomainError);
}
