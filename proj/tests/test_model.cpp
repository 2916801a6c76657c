#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "core/potential.hpp"

using namespace rpmres;
using R50 = p50::real;

TEST_CASE("gaussian well-barrier: closed-form values, origin, symmetry")
{
    Potential g = make_gaussian("0.5", "0.1");
    CHECK(evaluate<double>(g, 0.0) == 0.0);
    for (double x : {0.3, 1.0, 2.5, 4.0}) {
        double want = 0.5 * x * x * std::exp(-0.1 * x * x);
        CHECK(evaluate<double>(g, x) == doctest::Approx(want).epsilon(1e-15));
        CHECK(evaluate<double>(g, -x) == evaluate<double>(g, x));
    }
    // far field decays to the asymptote
    CHECK(std::fabs(evaluate<double>(g, 30.0)) < 1e-35);
    CHECK(asymptote_value<double>(g) == 0.0);
}

TEST_CASE("well-plus-shelf potential: values, symmetry, asymptote")
{
    Potential k = make_kg("0.8", "0.1");
    CHECK(evaluate<double>(k, 0.0) == doctest::Approx(0.0).epsilon(1e-16));
    for (double x : {0.5, 1.7, 3.0}) {
        double want = (x * x / 2 - 0.8) * std::exp(-0.1 * x * x) + 0.8;
        CHECK(evaluate<double>(k, x) == doctest::Approx(want).epsilon(1e-15));
        CHECK(evaluate<double>(k, -x) == evaluate<double>(k, x));
    }
    CHECK(evaluate<double>(k, 40.0) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(asymptote_value<double>(k) == doctest::Approx(0.8).epsilon(1e-16));
}

TEST_CASE("taylor coefficients reproduce the potential near the origin")
{
    // series partial sums vs direct evaluation -- independent code paths
    // (recurrence vs exp()), so agreement at 1e-40 validates both
    for (auto p : {make_gaussian("0.5", "0.1"), make_kg("0.8", "0.1"),
                   make_gaussian("2", "1")}) {
        auto v = taylor_coefficients<R50>(p, 30);
        for (const char* xs : {"0.1", "0.35"}) {
            R50 x = parse_real<R50>(xs), z = x * x, zp = 1, acc = 0;
            for (const auto& vj : v) {
                zp *= z;
                acc += vj * zp;
            }
            R50 diff = abs(acc - evaluate<R50>(p, x));
            CHECK(diff < R50("1e-40"));
        }
    }
}

TEST_CASE("taylor coefficients: leading terms in closed form")
{
    auto g = taylor_coefficients<double>(make_gaussian("2", "1"), 4);
    // 2 x^2 e^{-x^2} = 2x^2 - 2x^4 + x^6 - x^8/3 + ...
    CHECK(g[0] == doctest::Approx(2.0));
    CHECK(g[1] == doctest::Approx(-2.0));
    CHECK(g[2] == doctest::Approx(1.0));
    CHECK(g[3] == doctest::Approx(-1.0 / 3));

    auto k = taylor_coefficients<double>(make_kg("0.8", "0.1"), 3);
    // (x^2/2 - J)e^{-lam x^2} + J:  v1 = 1/2 + J lam, v2 = -lam/2 - J lam^2/2
    CHECK(k[0] == doctest::Approx(0.5 + 0.8 * 0.1));
    CHECK(k[1] == doctest::Approx(-0.1 / 2 - 0.8 * 0.01 / 2));
    CHECK(k[2] == doctest::Approx(0.01 / 4 + 0.8 * 0.001 / 6));
}

TEST_CASE("custom series: echo coefficients, zero-fill, no asymptote")
{
    Potential c = make_custom({"1.5", "-0.25"});
    auto v = taylor_coefficients<double>(c, 4);
    CHECK(v[0] == 1.5);
    CHECK(v[1] == -0.25);
    CHECK(v[2] == 0.0);
    CHECK(v[3] == 0.0);
    CHECK_THROWS_AS(asymptote_value<double>(c), Error);
}

TEST_CASE("custom series: validity radius guards truncation")
{
    // 40-term truncation of 1.0 x^2 e^{-0.25 x^2}; inside the radius the
    // truncated sum must match the closed form it was cut from
    std::vector<std::string> cs;
    double t = 1.0;
    for (int j = 1; j <= 40; ++j) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17e", t);
        cs.push_back(buf);
        t *= -0.25 / j;
    }
    Potential c = make_custom(cs);
    double rad = custom_radius(c);
    CHECK(rad > 2.0);
    CHECK(rad < 50.0);
    double x = 0.9 * rad;
    double want = x * x * std::exp(-0.25 * x * x);
    CHECK(evaluate<double>(c, x) == doctest::Approx(want).epsilon(1e-10));
    CHECK_THROWS_AS(evaluate<double>(c, 1.1 * rad), Error);

    // degenerate cases: single-term and all-zero lists are trusted everywhere
    CHECK(std::isinf(custom_radius(make_custom({"1"}))));
    CHECK(std::isinf(custom_radius(make_custom({"0", "0"}))));
}

TEST_CASE("barrier geometry: gaussian closed form")
{
    Potential g = make_gaussian("0.5", "0.1");
    Geometry geo = barrier_geometry(g);
    CHECK(static_cast<double>(geo.b) ==
          doctest::Approx(1.0 / std::sqrt(0.1)).epsilon(1e-14));
    CHECK(static_cast<double>(geo.v_b) ==
          doctest::Approx(0.5 / (std::exp(1.0) * 0.1)).epsilon(1e-14));
    // b is a maximum: values just off the top are lower
    double vb = static_cast<double>(geo.v_b), b = static_cast<double>(geo.b);
    CHECK(evaluate<double>(g, b - 1e-4) < vb);
    CHECK(evaluate<double>(g, b + 1e-4) < vb);

    // lambda = 1 family: v_b = v0/e
    for (const char* v0 : {"2", "5", "10", "15"}) {
        Geometry q = barrier_geometry(make_gaussian(v0, "1"));
        double want = parse_real<double>(v0) / std::exp(1.0);
        CHECK(static_cast<double>(q.v_b) == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("barrier geometry: maximization path agrees with analytic optimum")
{
    // (x^2/2 - J)e^{-lam x^2} + J peaks at b^2 = 1/lam + 2J
    Potential k = make_kg("0.8", "0.1");
    Geometry geo = barrier_geometry(k);
    double b_want = std::sqrt(1.0 / 0.1 + 2 * 0.8);
    double vb_want = (b_want * b_want / 2 - 0.8) * std::exp(-0.1 * b_want * b_want) + 0.8;
    // localization of a flat maximum is limited to ~sqrt(ulp) in x
    CHECK(static_cast<double>(geo.b) == doctest::Approx(b_want).epsilon(1e-7));
    CHECK(static_cast<double>(geo.v_b) == doctest::Approx(vb_want).epsilon(1e-12));
}

TEST_CASE("input validation: rejects non-numeric and non-positive parameters")
{
    CHECK_THROWS_AS(make_gaussian("0", "0.1"), Error);
    CHECK_THROWS_AS(make_gaussian("-1", "0.1"), Error);
    CHECK_THROWS_AS(make_gaussian("0.5", "0"), Error);
    CHECK_THROWS_AS(make_gaussian("abc", "0.1"), Error);
    CHECK_THROWS_AS(make_kg("0.8", "-2"), Error);
    CHECK_THROWS_AS(make_kg("xyz", "1"), Error);
    CHECK_THROWS_AS(make_custom({}), Error);
    CHECK_THROWS_AS(make_custom({"1", "nope"}), Error);
    try {
        make_gaussian("0", "1");
    } catch (const Error& e) {
        CHECK(e.status == Status::config);
    }
}

TEST_CASE("rescaling to dimensionless form")
{
    // hand-checked: m=1, hbar=1, V0=4, alpha=0.5, L absent
    // L^2 = 1/sqrt(4) = 1/2, v0 = L^4 V0 = 1, lambda = alpha L^2 = 1/4
    PhysicalParams ph{1.0, 1.0, 4.0, 0.5};
    Nondim nd = nondimensionalize(ph);
    CHECK(nd.L == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(nd.v0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(nd.lambda == doctest::Approx(0.25).epsilon(1e-14));

    // explicit L passes through and scales quartically / quadratically
    PhysicalParams ph2{2.0, 3.0, 5.0, 0.7, 1.5};
    Nondim nd2 = nondimensionalize(ph2);
    CHECK(nd2.L == 1.5);
    CHECK(nd2.v0 == doctest::Approx(2.0 * std::pow(1.5, 4) * 5.0 / 9.0).epsilon(1e-14));
    CHECK(nd2.lambda == doctest::Approx(0.7 * 2.25).epsilon(1e-14));

    PhysicalParams bad{-1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(nondimensionalize(bad), Error);
}
