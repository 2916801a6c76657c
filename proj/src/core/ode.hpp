#pragma once

// Adaptive Dormand-Prince 5(4) for the second-order form y'' = q(x) y,
// integrated as the pair (y, y').  The scalar S may be real or complex;
// q returns a real (long double) factor.  Direction follows sign(x1 - x0).

#include <cmath>
#include <complex>
#include <cstdlib>

#include "error.hpp"

namespace rpmres {

template <class S, class Q>
void rk45_span(Q&& q, long double x0, long double x1, S& y, S& dy, long double rtol,
               long double atol = 1e-30L)
{
    if (x0 == x1)
        return;
    static const long double c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5, c5 = 8.0L / 9;
    static const long double a21 = 1.0L / 5;
    static const long double a31 = 3.0L / 40, a32 = 9.0L / 40;
    static const long double a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
    static const long double a51 = 19372.0L / 6561, a52 = -25360.0L / 2187,
                             a53 = 64448.0L / 6561, a54 = -212.0L / 729;
    static const long double a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247,
                             a64 = 49.0L / 176, a65 = -5103.0L / 18656;
    static const long double b1 = 35.0L / 384, b3 = 500.0L / 1113, b4 = 125.0L / 192,
                             b5 = -2187.0L / 6784, b6 = 11.0L / 84;
    static const long double e1 = 35.0L / 384 - 5179.0L / 57600,
                             e3 = 500.0L / 1113 - 7571.0L / 16695,
                             e4 = 125.0L / 192 - 393.0L / 640,
                             e5 = -2187.0L / 6784 + 92097.0L / 339200,
                             e6 = 11.0L / 84 - 187.0L / 2100, e7 = -1.0L / 40;

    const long double dir = x1 > x0 ? 1.0L : -1.0L;
    const long double span = fabsl(x1 - x0);
    long double x = x0;
    long double h = dir * span / 4.0L;
    auto rhs = [&](long double xx, const S& u, const S& du, S& f0, S& f1) {
        f0 = du;
        f1 = u * static_cast<long double>(q(xx));
    };
    auto mag = [](const S& v) { return static_cast<long double>(std::abs(v)); };

    S k1y, k1d;
    rhs(x, y, dy, k1y, k1d);
    int rejected_in_a_row = 0;
    while (dir * (x1 - x) > 0) {
        if (dir * (x + h - x1) > 0)
            h = x1 - x;
        if (fabsl(h) < 1e-14L * (span + fabsl(x)))
            throw Error(Status::domain, "step size underflow (stiff segment)");

        S y2 = y + h * (a21 * k1y), d2 = dy + h * (a21 * k1d);
        S k2y, k2d; rhs(x + c2 * h, y2, d2, k2y, k2d);
        S y3 = y + h * (a31 * k1y + a32 * k2y), d3 = dy + h * (a31 * k1d + a32 * k2d);
        S k3y, k3d; rhs(x + c3 * h, y3, d3, k3y, k3d);
        S y4 = y + h * (a41 * k1y + a42 * k2y + a43 * k3y),
          d4 = dy + h * (a41 * k1d + a42 * k2d + a43 * k3d);
        S k4y, k4d; rhs(x + c4 * h, y4, d4, k4y, k4d);
        S y5 = y + h * (a51 * k1y + a52 * k2y + a53 * k3y + a54 * k4y),
          d5 = dy + h * (a51 * k1d + a52 * k2d + a53 * k3d + a54 * k4d);
        S k5y, k5d; rhs(x + c5 * h, y5, d5, k5y, k5d);
        S y6 = y + h * (a61 * k1y + a62 * k2y + a63 * k3y + a64 * k4y + a65 * k5y),
          d6 = dy + h * (a61 * k1d + a62 * k2d + a63 * k3d + a64 * k4d + a65 * k5d);
        S k6y, k6d; rhs(x + h, y6, d6, k6y, k6d);
        S ynew = y + h * (b1 * k1y + b3 * k3y + b4 * k4y + b5 * k5y + b6 * k6y);
        S dnew = dy + h * (b1 * k1d + b3 * k3d + b4 * k4d + b5 * k5d + b6 * k6d);
        S k7y, k7d; rhs(x + h, ynew, dnew, k7y, k7d);

        S erry = h * (e1 * k1y + e3 * k3y + e4 * k4y + e5 * k5y + e6 * k6y + e7 * k7y);
        S errd = h * (e1 * k1d + e3 * k3d + e4 * k4d + e5 * k5d + e6 * k6d + e7 * k7d);
        long double sy = atol + rtol * std::max(mag(y), mag(ynew));
        long double sd = atol + rtol * std::max(mag(dy), mag(dnew));
        long double err = std::max(mag(erry) / sy, mag(errd) / sd);

        if (err <= 1.0L) {
            x += h;
            y = ynew;
            dy = dnew;
            k1y = k7y; // FSAL
            k1d = k7d;
            rejected_in_a_row = 0;
        } else if (++rejected_in_a_row > 60) {
            throw Error(Status::domain, "integrator cannot satisfy tolerance");
        }
        long double fac = err > 0 ? 0.9L * powl(err, -0.2L) : 5.0L;
        fac = std::min(5.0L, std::max(0.2L, fac));
        h *= fac;
    }
}

} // namespace rpmres
