#pragma once

// Wavefunctions at fixed energy in two forms: a parity-resolved Taylor series
// (valid inside a finite radius) and a real ODE solution on a dense grid.
// Combines the two with the barrier geometry to produce the width estimate
//   Gamma = k_T |phi(a)|^2 / int_0^b phi^2 dx
// where |phi(a)|^2 is read off as the free-oscillation envelope at a.

#include <complex>
#include <vector>

#include "potential.hpp"

namespace rpmres {

struct WaveSeries {
    int parity; // s: 0 even, 1 odd
    std::complex<long double> epsilon;
    std::vector<std::complex<long double>> c; // c_0 .. c_M
    long double validity_radius;              // x_M
};

struct WaveSample {
    std::vector<long double> x;    // 0 .. a, b placed exactly on the grid
    std::vector<long double> psi;  // real solution with parity initial data
    std::vector<long double> dpsi;
    size_t i_b; // index of the grid point at the barrier top
};

struct SAReport {
    double gamma_SA;
    double epsilon_T_used;
    double a_used;
    double b_used;
    double norm_integral;    // int_0^b psi^2 dx
    double boundary_density; // psi(a)^2 + (psi'(a)/k_T)^2
};

// c_0 = 1, c_{j+1} = 2/((2j+s+1)(2j+s+2)) [ sum_k v_k c_{j-k} - eps c_j ];
// phi(x) = x^s sum_j c_j x^{2j}.  validity_radius is the largest x where the
// final term is below 1e-6 of the largest retained term.
WaveSeries wavefunction_series(const Potential& p, int parity,
                               std::complex<long double> epsilon, int M);

std::complex<long double> evaluate_wave(const WaveSeries& w, long double x);

// Real solution of phi'' = 2(v - eps) phi from the origin with parity initial
// data (even: 1, 0; odd: 0, 1), sampled on a dense grid over [0, a].
WaveSample transmission_state(const Potential& p, int parity, double epsilon_T,
                              double a);

SAReport sa_width(const Potential& p, int parity, double epsilon_T);

// Exterior/interior probability ratio from the series state:
// int_b^u |phi|^2 / int_0^min(b,x_M) |phi|^2 with u = min(a, x_M).
double localization_series(const Potential& p, int parity,
                           std::complex<long double> epsilon, int M);

// Same ratio from the real ODE state over the full [b, a] exterior.
double localization_ode(const Potential& p, int parity, double epsilon_T);

} // namespace rpmres
