#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "core/ode.hpp"
#include "core/potential.hpp"
#include "core/rpm.hpp"
#include "core/rpm_core.hpp"

using namespace rpmres;
using R50 = p50::real;
using C50 = p50::cplx;

static std::vector<R50> vc_of(const Potential& p, int n)
{
    return taylor_coefficients<R50>(p, n);
}

TEST_CASE("coefficient sequence terminates at oscillator eigenvalues")
{
    // v = x^2/2: at eps = n + 1/2 the log-derivative is a polynomial, so the
    // sequence must vanish identically beyond f_0 for n = 0 (even) and
    // n = 1 (odd), and follow f_0 = 5, f_n = 2^(n+2) for n = 2
    Potential ho = make_custom({"0.5"});
    auto vc = vc_of(ho, 60);

    auto f0 = riccati_seq<p50, C50>(vc, 0, C50(R50(1) / 2), 20);
    CHECK(abs(f0[0] - C50(1)) < R50("1e-45"));
    for (int n = 1; n <= 20; ++n)
        CHECK(abs(f0[n]) < R50("1e-45"));

    auto f1 = riccati_seq<p50, C50>(vc, 1, C50(R50(3) / 2), 20);
    CHECK(abs(f1[0] - C50(1)) < R50("1e-45"));
    for (int n = 1; n <= 20; ++n)
        CHECK(abs(f1[n]) < R50("1e-45"));

    auto f2 = riccati_seq<p50, C50>(vc, 0, C50(R50(5) / 2), 12);
    CHECK(abs(f2[0] - C50(5)) < R50("1e-45"));
    R50 pw = 8;
    for (int n = 1; n <= 12; ++n) {
        CHECK(abs(f2[n] - C50(pw)) / pw < R50("1e-45"));
        pw *= 2;
    }
}

TEST_CASE("recurrence encodes the log-derivative equation of the problem")
{
    // w = s/x - sum f_n x^(2n+1) must satisfy w' + w^2 = 2(v - eps); w' is
    // taken by central differences so the check is not circular in the
    // recurrence algebra
    Potential g = make_gaussian("0.5", "0.1");
    auto vc = vc_of(g, 80);
    // h balances FD truncation (h^2) against 50-digit cancellation (1e-50/h)
    R50 h("1e-17");
    for (int s : {0, 1}) {
        C50 eps(R50("0.37"), R50("-0.05"));
        auto f = riccati_seq<p50, C50>(vc, s, eps, 40);
        auto ser = [&](const R50& x) {
            R50 z = x * x;
            C50 acc(0);
            R50 xp = x;
            for (int n = 0; n <= 40; ++n) {
                acc += f[n] * C50(xp);
                xp *= z;
            }
            return acc;
        };
        for (const char* xs : {"0.1", "0.3"}) {
            R50 x(xs);
            // d/dx of the s/x part is exact; only the smooth series part
            // goes through finite differences
            C50 wp = C50(-R50(s) / (x * x)) - (ser(x + h) - ser(x - h)) / C50(2 * h);
            C50 w = C50(R50(s) / x) - ser(x);
            C50 resid = wp + w * w - C50(2) * (C50(evaluate<R50>(g, x)) - eps);
            CHECK(abs(resid) < R50("1e-32"));
        }
    }
}

TEST_CASE("determinant agrees with explicit small-dimension formulas")
{
    Potential g = make_gaussian("0.5", "0.1");
    auto vc = vc_of(g, 40);
    C50 eps(R50("0.46"), R50("-0.1"));
    for (int d : {0, 1, 2}) {
        auto f = riccati_seq<p50, C50>(vc, 0, eps, d + 3);
        C50 want = f[d + 1] * f[d + 3] - f[d + 2] * f[d + 2];
        C50 got = hankel_from_eps<p50, C50>(vc, 0, eps, 2, d);
        CHECK(abs(got - want) / abs(want) < R50("1e-45"));
    }
    // 3x3 cofactor expansion
    auto f = riccati_seq<p50, C50>(vc, 1, eps, 6);
    C50 want = f[1] * (f[3] * f[5] - f[4] * f[4]) - f[2] * (f[2] * f[5] - f[4] * f[3]) +
               f[3] * (f[2] * f[4] - f[3] * f[3]);
    C50 got = hankel_from_eps<p50, C50>(vc, 1, eps, 3, 0);
    CHECK(abs(got - want) / abs(want) < R50("1e-44"));
}

TEST_CASE("determinant vanishes at oscillator eigenvalues only at sufficient dimension")
{
    Potential ho = make_custom({"0.5"});
    auto vc = vc_of(ho, 60);

    auto mag = [&](double e, int D) {
        return abs(hankel_from_eps<p50, C50>(vc, 0, C50(R50(e)), D, 0));
    };

    // n = 2 (eps = 2.5): zero from D = 2 on, not at D... the 1x1 case
    // |f_1(2.5)| = 8 is handled in the termination test above
    CHECK(mag(2.5, 2) / mag(3.1, 2) < R50("1e-40"));
    CHECK(mag(2.5, 3) / mag(3.1, 3) < R50("1e-40"));

    // n = 4 (eps = 4.5): the 2x2 determinant has no root there; the zero
    // first appears at D = 3
    CHECK(mag(4.5, 2) / mag(5.1, 2) > R50("1e-6"));
    CHECK(mag(4.5, 3) / mag(5.1, 3) < R50("1e-38"));
}

TEST_CASE("conjugating epsilon conjugates the determinant")
{
    Potential g = make_gaussian("2", "1");
    auto vc = vc_of(g, 40);
    C50 eps(R50("0.56"), R50("-0.16"));
    C50 a = hankel_from_eps<p50, C50>(vc, 0, eps, 5, 0);
    C50 b = hankel_from_eps<p50, C50>(vc, 0, conj(eps), 5, 0);
    CHECK(abs(a - conj(b)) / abs(a) < R50("1e-45"));
}

TEST_CASE("derivative propagated through the recurrence matches finite differences")
{
    Potential g = make_gaussian("0.5", "0.1");
    auto vc = vc_of(g, 40);
    C50 eps(R50("1.28"), R50("-0.0017"));
    using D50 = dual<C50>;
    D50 seed{eps, C50(1)};
    D50 hd = hankel_from_eps<p50, D50>(vc, 1, seed, 6, 0);

    R50 h("1e-18");
    C50 hp = hankel_from_eps<p50, C50>(vc, 1, eps + C50(h), 6, 0);
    C50 hm = hankel_from_eps<p50, C50>(vc, 1, eps - C50(h), 6, 0);
    C50 fd = (hp - hm) / C50(2 * h);
    CHECK(abs(hd.d - fd) / abs(hd.d) < R50("1e-8"));
    CHECK(abs(hd.v - hankel_from_eps<p50, C50>(vc, 1, eps, 6, 0)) == R50(0));
}

TEST_CASE("root refinement recovers oscillator eigenvalues")
{
    Potential ho = make_custom({"0.5"});
    struct Case { double n; int s; int D; const char* seed; };
    for (auto c : {Case{0, 0, 2, "0.61"}, Case{1, 1, 2, "1.62"},
                   Case{2, 0, 3, "2.58"}, Case{3, 1, 3, "3.61"}}) {
        auto rt = find_root_str(ho, c.s, c.D, 0, c.seed, "0", 50, 2500);
        R50 re = parse_real<R50>(rt.first);
        R50 im = parse_real<R50>(rt.second);
        CHECK(abs(re - R50(c.n + 0.5)) < R50("1e-30"));
        CHECK(abs(im) < R50("1e-30"));
    }
}

TEST_CASE("dimension ladder tightens the state and normalizes the sign")
{
    Potential g = make_gaussian("0.5", "0.1");
    Resonance r12 = converge_resonance(g, 1, 0, 8, 12, "1.28", "-0.0017", 50);
    Resonance r20 = converge_resonance(g, 1, 0, 8, 20, "1.28", "-0.0017", 50);
    CHECK(r20.error_estimate < r12.error_estimate);
    CHECK(r20.error_estimate < 1e-12);
    CHECK(r20.D_final == 20);

    CHECK(r20.eps_re_d == doctest::Approx(1.2804203534682821470).epsilon(1e-15));
    CHECK(r20.eps_im_d == doctest::Approx(-1.6737132594145830404e-3).epsilon(1e-12));
    CHECK(r20.eps_im_d < 0.0);
    CHECK(r20.gamma_d == doctest::Approx(-2 * r20.eps_im_d).epsilon(1e-14));
    CHECK(r20.parity == 1);

    // seeding from the conjugate side lands on the lower-half-plane root
    Resonance rc = converge_resonance(g, 1, 0, 8, 14, "1.28", "+0.0017", 50);
    CHECK(rc.eps_im_d < 0.0);
    CHECK(rc.eps_re_d == doctest::Approx(r20.eps_re_d).epsilon(1e-10));
}

// ---- independent integration oracle ------------------------------------
// Even bound state of (x^2/2 - J)e^{-lam x^2} + J by bidirectional shooting:
// integrate out from the origin and in from deep under the shelf, then
// bisect on the sign of the Wronskian at the meeting point.

namespace {
constexpr long double kJ = 0.8L, kLam = 0.1L;
long double well_v(long double x) { return (x * x / 2 - kJ) * expl(-kLam * x * x) + kJ; }

long double wronskian_mismatch(long double eps, long double xm, long double x0)
{
    auto q = [&](long double x) { return 2.0L * (well_v(x) - eps); };
    long double y = 1.0L, dy = 0.0L;
    rk45_span(q, 0.0L, xm, y, dy, 1e-15L);
    long double kap = sqrtl(2.0L * (well_v(x0) - eps));
    long double z = 1.0L, dz = -kap;
    rk45_span(q, x0, xm, z, dz, 1e-15L);
    return dy * z - dz * y;
}
} // namespace

TEST_CASE("series solver agrees with an independent shooting integration")
{
    const long double xm = 2.5L, x0 = 16.0L;
    long double lo = 0.500L, hi = 0.504L;
    long double flo = wronskian_mismatch(lo, xm, x0);
    REQUIRE(flo * wronskian_mismatch(hi, xm, x0) < 0);
    for (int it = 0; it < 64; ++it) {
        long double mid = 0.5L * (lo + hi);
        ((wronskian_mismatch(mid, xm, x0) * flo > 0) ? lo : hi) = mid;
    }
    long double shoot = 0.5L * (lo + hi);

    Potential k = make_kg("0.8", "0.1");
    Resonance r = converge_resonance(k, 0, 0, 8, 24, "0.502", "-1e-6", 64);
    CHECK(std::fabs(static_cast<long double>(r.eps_re_d) - shoot) < 1e-11L);
    CHECK(std::fabs(r.eps_im_d) < 1e-12);
}

TEST_CASE("polynomial seeds stay inside the requested box and bracket the true root")
{
    Potential g = make_gaussian("0.5", "0.1");
    auto seeds = seed_roots(g, 0, 4, 0, 0.0, 3.4, -2.0, 0.0);
    REQUIRE(!seeds.empty());
    double best = 1e9;
    for (auto z : seeds) {
        CHECK(z.real() >= 0.0);
        CHECK(z.real() <= 3.4);
        CHECK(z.imag() >= -2.0);
        CHECK(z.imag() <= 0.0);
        best = std::min(best, std::abs(z - std::complex<double>(0.46014727653933356, -9.62e-7)));
    }
    CHECK(best < 0.05);
}

TEST_CASE("multistart returns the lowest states sorted and in-box")
{
    Potential ho = make_custom({"0.5"});
    auto rs = lowest_resonances(ho, 0, 2, 0, 8, 16, 32, 0.0, 6.0, 0.5);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].eps_re_d == doctest::Approx(0.5).epsilon(1e-18));
    CHECK(rs[1].eps_re_d == doctest::Approx(2.5).epsilon(1e-18));
    CHECK(rs[0].eps_re_d < rs[1].eps_re_d);
    for (const auto& r : rs) {
        CHECK(std::fabs(r.eps_im_d) < 1e-18);
        CHECK(r.parity == 0);
        CHECK(r.error_estimate < 1e-10);
    }
}

TEST_CASE("configuration errors are rejected")
{
    Potential g = make_gaussian("0.5", "0.1");
    CHECK_THROWS_AS(find_root_str(g, 2, 8, 0, "0.5", "0", 50), Error);
    CHECK_THROWS_AS(find_root_str(g, 0, 1, 0, "0.5", "0", 50), Error);
    CHECK_THROWS_AS(find_root_str(g, 0, 8, -1, "0.5", "0", 50), Error);
    CHECK_THROWS_AS(find_root_str(g, 0, 8, 0, "zzz", "0", 50), Error);
    CHECK_THROWS_AS(converge_resonance(g, 0, 0, 12, 8, "0.5", "0", 50), Error);
    CHECK_THROWS_AS(lowest_resonances(g, 0, 0, 0, 8, 16, 32, 0.0, 1.0, 1.0), Error);
}
