#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "potential.hpp"

namespace rpmres {

// Precision-erased front end over rpm_core.hpp: callers pass a decimal digit
// count, values cross as decimal strings so nothing is squeezed through
// double.  digits is mapped to the nearest supported level (numeric.hpp).

struct Resonance {
    std::string eps_re, eps_im, gamma; // full working precision
    double eps_re_d = 0, eps_im_d = 0, gamma_d = 0;
    double error_estimate = 0;
    int parity = 0;
    int D_final = 0;
};

std::pair<std::string, std::string> find_root_str(const Potential& p, int parity, int D,
                                                  int d, const std::string& seed_re,
                                                  const std::string& seed_im, int digits,
                                                  int max_iter = 500);

Resonance converge_resonance(const Potential& p, int parity, int d, int D_min, int D_max,
                             const std::string& seed_re, const std::string& seed_im,
                             int digits);

// Roots of the small-D determinant written as an explicit polynomial in
// epsilon, restricted to the given box (im_lo <= im <= im_hi).
std::vector<std::complex<double>> seed_roots(const Potential& p, int parity, int D_small,
                                             int d, double re_lo, double re_hi,
                                             double im_lo, double im_hi);

// Multistart (polynomial seeds + a coarse grid) at D_min, dedupe, then run
// the D ladder on the survivors; the `count` lowest by epsilon_R.
std::vector<Resonance> lowest_resonances(const Potential& p, int parity, int count, int d,
                                         int D_min, int D_max, int digits, double re_lo,
                                         double re_hi, double im_depth);

} // namespace rpmres
