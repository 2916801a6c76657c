#include "rpmres.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "core/potential.hpp"
#include "core/rpm.hpp"
#include "core/scattering.hpp"
#include "core/siegert.hpp"

struct rpmres_potential {
    rpmres::Potential p;
};

namespace {

thread_local std::string g_err;

template <class F>
rpmres_status guard(F&& body) noexcept
{
    try {
        body();
        return RPMRES_OK;
    } catch (const rpmres::Error& e) {
        g_err = e.what();
        return static_cast<rpmres_status>(static_cast<int>(e.status));
    } catch (const std::exception& e) {
        g_err = e.what();
        return RPMRES_ERR_INTERNAL;
    } catch (...) {
        g_err = "unknown failure";
        return RPMRES_ERR_INTERNAL;
    }
}

void require(bool ok, const char* what)
{
    if (!ok)
        throw rpmres::Error(rpmres::Status::config, what);
}

void put_str(char dst[RPMRES_NUMSTR_LEN], const std::string& s)
{
    if (s.size() >= RPMRES_NUMSTR_LEN)
        throw rpmres::Error(rpmres::Status::internal, "numeric string overflows buffer");
    std::memcpy(dst, s.c_str(), s.size() + 1);
}

void put_resonance(rpmres_resonance* out, const rpmres::Resonance& r)
{
    put_str(out->epsilon_R, r.eps_re);
    put_str(out->epsilon_I, r.eps_im);
    put_str(out->gamma, r.gamma);
    out->epsilon_R_d = r.eps_re_d;
    out->epsilon_I_d = r.eps_im_d;
    out->gamma_d = r.gamma_d;
    out->error_estimate = r.error_estimate;
    out->parity = r.parity;
    out->D_final = r.D_final;
}

} // namespace

extern "C" {

const char* rpmres_last_error(void) { return g_err.c_str(); }

const char* rpmres_version(void) { return "1.0.0"; }

rpmres_status rpmres_potential_gaussian(const char* v0, const char* lambda,
                                        rpmres_potential** out)
{
    return guard([&] {
        require(v0 && lambda && out, "null argument");
        *out = new rpmres_potential{rpmres::make_gaussian(v0, lambda)};
    });
}

rpmres_status rpmres_potential_kg(const char* J, const char* lambda, rpmres_potential** out)
{
    return guard([&] {
        require(J && lambda && out, "null argument");
        *out = new rpmres_potential{rpmres::make_kg(J, lambda)};
    });
}

rpmres_status rpmres_potential_custom(const char* const* coeffs, size_t n,
                                      rpmres_potential** out)
{
    return guard([&] {
        require(coeffs && out, "null argument");
        std::vector<std::string> cs;
        cs.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            require(coeffs[i] != nullptr, "null coefficient string");
            cs.emplace_back(coeffs[i]);
        }
        *out = new rpmres_potential{rpmres::make_custom(std::move(cs))};
    });
}

void rpmres_potential_free(rpmres_potential* p) { delete p; }

double rpmres_evaluate(const rpmres_potential* p, double x)
{
    double v = std::nan("");
    guard([&] {
        require(p != nullptr, "null potential");
        v = static_cast<double>(rpmres::evaluate<long double>(p->p, static_cast<long double>(x)));
    });
    return v;
}

double rpmres_asymptote(const rpmres_potential* p)
{
    double v = std::nan("");
    guard([&] {
        require(p != nullptr, "null potential");
        v = static_cast<double>(rpmres::asymptote_value<long double>(p->p));
    });
    return v;
}

rpmres_status rpmres_barrier_geometry(const rpmres_potential* p, double* b, double* v_b)
{
    return guard([&] {
        require(p && b && v_b, "null argument");
        rpmres::Geometry g = rpmres::barrier_geometry(p->p);
        *b = static_cast<double>(g.b);
        *v_b = static_cast<double>(g.v_b);
    });
}

rpmres_status rpmres_find_root(const rpmres_potential* p, int parity, int D, int d,
                               const char* seed_re, const char* seed_im,
                               int precision_digits, char eps_re_out[RPMRES_NUMSTR_LEN],
                               char eps_im_out[RPMRES_NUMSTR_LEN])
{
    return guard([&] {
        require(p && seed_re && seed_im && eps_re_out && eps_im_out, "null argument");
        auto [re, im] = rpmres::find_root_str(p->p, parity, D, d, seed_re, seed_im,
                                              precision_digits);
        put_str(eps_re_out, re);
        put_str(eps_im_out, im);
    });
}

rpmres_status rpmres_converge_resonance(const rpmres_potential* p, int parity, int d,
                                        int D_min, int D_max, const char* seed_re,
                                        const char* seed_im, int precision_digits,
                                        rpmres_resonance* out)
{
    return guard([&] {
        require(p && seed_re && seed_im && out, "null argument");
        rpmres::Resonance r = rpmres::converge_resonance(p->p, parity, d, D_min, D_max,
                                                         seed_re, seed_im, precision_digits);
        put_resonance(out, r);
    });
}

rpmres_status rpmres_seed_roots(const rpmres_potential* p, int parity, int D_small, int d,
                                double re_lo, double re_hi, double im_lo, double im_hi,
                                double* re, double* im, size_t cap, size_t* n_out)
{
    return guard([&] {
        require(p && re && im && n_out, "null argument");
        auto roots = rpmres::seed_roots(p->p, parity, D_small, d, re_lo, re_hi, im_lo, im_hi);
        size_t n = roots.size() < cap ? roots.size() : cap;
        for (size_t i = 0; i < n; ++i) {
            re[i] = roots[i].real();
            im[i] = roots[i].imag();
        }
        *n_out = n;
    });
}

rpmres_status rpmres_lowest_resonances(const rpmres_potential* p, int parity, int count,
                                       int d, int D_min, int D_max, int precision_digits,
                                       double re_lo, double re_hi, double im_depth,
                                       rpmres_resonance* out, size_t* n_out)
{
    return guard([&] {
        require(p && out && n_out, "null argument");
        auto rs = rpmres::lowest_resonances(p->p, parity, count, d, D_min, D_max,
                                            precision_digits, re_lo, re_hi, im_depth);
        for (size_t i = 0; i < rs.size(); ++i)
            put_resonance(&out[i], rs[i]);
        *n_out = rs.size();
    });
}

rpmres_status rpmres_transmission(const rpmres_potential* p, double epsilon,
                                  rpmres_tpoint* out)
{
    return guard([&] {
        require(p && out, "null argument");
        rpmres::TPoint t = rpmres::transmission(p->p, epsilon);
        *out = {t.epsilon, t.T, t.R, t.residual};
    });
}

rpmres_status rpmres_scan_transmission(const rpmres_potential* p, double lo, double hi,
                                       int n_points, rpmres_tpoint* out)
{
    return guard([&] {
        require(p && out, "null argument");
        auto pts = rpmres::scan_transmission(p->p, lo, hi, n_points);
        for (size_t i = 0; i < pts.size(); ++i)
            out[i] = {pts[i].epsilon, pts[i].T, pts[i].R, pts[i].residual};
    });
}

rpmres_status rpmres_transmission_peak(const rpmres_potential* p, double lo, double hi,
                                       double tol, double* eps_T, double* T_at_peak)
{
    return guard([&] {
        require(p && eps_T && T_at_peak, "null argument");
        auto [x, T] = rpmres::find_peak(p->p, lo, hi, tol);
        *eps_T = x;
        *T_at_peak = T;
    });
}

double rpmres_bw_profile(double epsilon, double eps_R, double eps_I_mag)
{
    double v = std::nan("");
    guard([&] { v = rpmres::bw_profile(epsilon, eps_R, eps_I_mag); });
    return v;
}

rpmres_status rpmres_bw_deviation(const rpmres_potential* p, double eps_R,
                                  double eps_I_mag, double window, int n, double* out)
{
    return guard([&] {
        require(p && out, "null argument");
        *out = rpmres::bw_deviation(p->p, eps_R, eps_I_mag, window, n);
    });
}

rpmres_status rpmres_sa_width(const rpmres_potential* p, int parity, double eps_T,
                              rpmres_sa_report* out)
{
    return guard([&] {
        require(p && out, "null argument");
        rpmres::SAReport r = rpmres::sa_width(p->p, parity, eps_T);
        *out = {r.gamma_SA, r.epsilon_T_used, r.a_used, r.b_used, r.norm_integral,
                r.boundary_density};
    });
}

rpmres_status rpmres_wave_sample(const rpmres_potential* p, int parity, const char* eps_re,
                                 const char* eps_im, int M, double x_lo, double x_hi, int n,
                                 double* x, double* re_phi, double* im_phi, double* abs2)
{
    return guard([&] {
        require(p && eps_re && eps_im && x && re_phi && im_phi && abs2, "null argument");
        require(n >= 2, "grid needs at least 2 points");
        require(x_lo < x_hi, "grid needs x_lo < x_hi");
        std::complex<long double> eps(rpmres::parse_real<long double>(eps_re),
                                      rpmres::parse_real<long double>(eps_im));
        rpmres::WaveSeries w = rpmres::wavefunction_series(p->p, parity, eps, M);
        for (int i = 0; i < n; ++i) {
            long double xi = x_lo + (x_hi - x_lo) * static_cast<long double>(i) / (n - 1);
            std::complex<long double> phi = rpmres::evaluate_wave(w, xi);
            x[i] = static_cast<double>(xi);
            re_phi[i] = static_cast<double>(phi.real());
            im_phi[i] = static_cast<double>(phi.imag());
            abs2[i] = static_cast<double>(std::norm(phi));
        }
    });
}

rpmres_status rpmres_wave_radius(const rpmres_potential* p, int parity, const char* eps_re,
                                 const char* eps_im, int M, double* x_M)
{
    return guard([&] {
        require(p && eps_re && eps_im && x_M, "null argument");
        std::complex<long double> eps(rpmres::parse_real<long double>(eps_re),
                                      rpmres::parse_real<long double>(eps_im));
        rpmres::WaveSeries w = rpmres::wavefunction_series(p->p, parity, eps, M);
        *x_M = static_cast<double>(w.validity_radius);
    });
}

rpmres_status rpmres_localization(const rpmres_potential* p, int parity, const char* eps_re,
                                  const char* eps_im, int M, double* ratio)
{
    return guard([&] {
        require(p && eps_re && eps_im && ratio, "null argument");
        std::complex<long double> eps(rpmres::parse_real<long double>(eps_re),
                                      rpmres::parse_real<long double>(eps_im));
        *ratio = rpmres::localization_series(p->p, parity, eps, M);
    });
}

} // extern "C"
