#pragma once

// Transmission/reflection for symmetric potentials: integrate the wave
// equation backward from +a with a pure outgoing wave (C = 1) and read the
// incident/reflected amplitudes at -a from the plane-wave decomposition.
// Runs in long double; the high-precision machinery is not needed here.

#include <complex>
#include <utility>
#include <vector>

#include "potential.hpp"

namespace rpmres {

struct TPoint {
    double epsilon;
    double T;
    double R;
    double residual; // |T + R - 1|
};

struct Amplitudes {
    std::complex<long double> A; // incident (e^{ikx} branch at -a)
    std::complex<long double> B; // reflected
    long double k;
};

// Smallest radius >= barrier position where |v - asymptote| < 1e-12 v_b,
// stepped in 0.05 and capped at 12/sqrt(lambda).
long double matching_radius(const Potential& p);

// phi(a) = e^{ika}, phi'(a) = ik e^{ika}; integrates phi'' = 2(v - eps) phi
// down to -a.  Returns terminal (phi, phi').
void integrate_outgoing(const Potential& p, long double epsilon, long double a,
                        std::complex<long double>& phi, std::complex<long double>& dphi,
                        long double rtol = 1e-12L);

// At x = -a with phi = A e^{ikx} + B e^{-ikx}:
//   A = e^{ika} (phi + phi'/(ik)) / 2,  B = e^{-ika} (phi - phi'/(ik)) / 2.
Amplitudes decompose(std::complex<long double> phi, std::complex<long double> dphi,
                     long double k, long double a);

TPoint transmission(const Potential& p, double epsilon);

std::vector<TPoint> scan_transmission(const Potential& p, double lo, double hi, int n_points);

// Coarse scan + golden-section maximization of T; returns (eps_T, T_peak).
// Symmetric potentials must reach T = 1 at the peak; anything below
// 1 - 1e-6 is reported as a convergence failure.
std::pair<double, double> find_peak(const Potential& p, double lo, double hi,
                                    double tol = 1e-10);

double bw_profile(double epsilon, double eps_R, double eps_I_mag);

// max |T - BW| over [eps_R - window, eps_R + window] on n_points samples
double bw_deviation(const Potential& p, double eps_R, double eps_I_mag,
                    double window, int n_points);

} // namespace rpmres
