/* rpmres — bound states, Siegert resonances and transmission for symmetric
 * 1-D Schrodinger problems.  C API over the C++ core; all functions return
 * rpmres_status, results go through out-parameters.  High-precision values
 * cross the boundary as decimal strings so no digits are lost to double. */
#ifndef RPMRES_H
#define RPMRES_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define RPMRES_NUMSTR_LEN 128

typedef enum {
  RPMRES_OK = 0,
  RPMRES_ERR_CONFIG = 1,      /* bad arguments, malformed potential, digits out of range */
  RPMRES_ERR_CONVERGENCE = 2, /* Newton stalled or D-sequence lost */
  RPMRES_ERR_UNITARITY = 3,   /* |T + R - 1| above the hard limit */
  RPMRES_ERR_DOMAIN = 4,      /* closed channel, no barrier, outside series radius, ... */
  RPMRES_ERR_INTERNAL = 5
} rpmres_status;

/* Thread-local message for the last failing call in this thread. */
const char *rpmres_last_error(void);
const char *rpmres_version(void);

/* ---- potentials ---------------------------------------------------- */

typedef struct rpmres_potential rpmres_potential;

/* v(x) = v0 x^2 exp(-lambda x^2) */
rpmres_status rpmres_potential_gaussian(const char *v0, const char *lambda,
                                        rpmres_potential **out);
/* v(x) = (x^2/2 - J) exp(-lambda x^2) + J */
rpmres_status rpmres_potential_kg(const char *J, const char *lambda,
                                  rpmres_potential **out);
/* v(x) = sum_j c_j x^(2j), coeffs = [c_1 ... c_n]; valid inside a finite radius */
rpmres_status rpmres_potential_custom(const char *const *coeffs, size_t n,
                                      rpmres_potential **out);
void rpmres_potential_free(rpmres_potential *p);

double rpmres_evaluate(const rpmres_potential *p, double x);
double rpmres_asymptote(const rpmres_potential *p);
/* barrier position b > 0 and height v_b; RPMRES_ERR_DOMAIN if no barrier */
rpmres_status rpmres_barrier_geometry(const rpmres_potential *p, double *b,
                                      double *v_b);

/* ---- resonances (Hankel-determinant quantization) ------------------ */

typedef struct {
  char epsilon_R[RPMRES_NUMSTR_LEN]; /* decimal, full working precision */
  char epsilon_I[RPMRES_NUMSTR_LEN]; /* <= 0; 0 for bound states */
  char gamma[RPMRES_NUMSTR_LEN];     /* -2 epsilon_I */
  double epsilon_R_d, epsilon_I_d, gamma_d; /* double approximations */
  double error_estimate; /* max over components of the last inter-D change */
  int parity;            /* 0 even, 1 odd */
  int D_final;
} rpmres_resonance;

/* One Newton root of the determinant at fixed dimension D, displacement d. */
rpmres_status rpmres_find_root(const rpmres_potential *p, int parity, int D,
                               int d, const char *seed_re, const char *seed_im,
                               int precision_digits,
                               char eps_re_out[RPMRES_NUMSTR_LEN],
                               char eps_im_out[RPMRES_NUMSTR_LEN]);

/* Track one root from D_min to D_max, re-seeding each step. */
rpmres_status rpmres_converge_resonance(const rpmres_potential *p, int parity,
                                        int d, int D_min, int D_max,
                                        const char *seed_re, const char *seed_im,
                                        int precision_digits,
                                        rpmres_resonance *out);

/* Low-dimension polynomial seeds inside [re_lo,re_hi] x [im_lo,im_hi]. */
rpmres_status rpmres_seed_roots(const rpmres_potential *p, int parity,
                                int D_small, int d, double re_lo, double re_hi,
                                double im_lo, double im_hi, double *re,
                                double *im, size_t cap, size_t *n_out);

/* The `count` lowest states of one parity: multistart seeding plus the
 * D ladder; results sorted by epsilon_R. */
rpmres_status rpmres_lowest_resonances(const rpmres_potential *p, int parity,
                                       int count, int d, int D_min, int D_max,
                                       int precision_digits, double re_lo,
                                       double re_hi, double im_depth,
                                       rpmres_resonance *out, size_t *n_out);

/* ---- scattering ---------------------------------------------------- */

typedef struct {
  double epsilon;
  double T;
  double R;
  double residual; /* |T + R - 1| */
} rpmres_tpoint;

rpmres_status rpmres_transmission(const rpmres_potential *p, double epsilon,
                                  rpmres_tpoint *out);
rpmres_status rpmres_scan_transmission(const rpmres_potential *p, double lo,
                                       double hi, int n_points,
                                       rpmres_tpoint *out /* n_points slots */);
rpmres_status rpmres_transmission_peak(const rpmres_potential *p, double lo,
                                       double hi, double tol, double *eps_T,
                                       double *T_at_peak);
double rpmres_bw_profile(double epsilon, double eps_R, double eps_I_mag);
/* max |T - BW| over [eps_R - window, eps_R + window], n sample points */
rpmres_status rpmres_bw_deviation(const rpmres_potential *p, double eps_R,
                                  double eps_I_mag, double window, int n,
                                  double *out);

/* ---- Siegert-approximation width and wavefunctions ----------------- */

typedef struct {
  double gamma_SA;
  double epsilon_T_used;
  double a_used;
  double b_used;
  double norm_integral;    /* int_0^b psi^2 dx */
  double boundary_density; /* psi(a)^2 + (psi'(a)/k_T)^2 */
} rpmres_sa_report;

rpmres_status rpmres_sa_width(const rpmres_potential *p, int parity,
                              double eps_T, rpmres_sa_report *out);

/* Taylor-series wavefunction on a uniform grid; eps as decimal strings
 * (imaginary part may be "0").  Arrays get n values each. */
rpmres_status rpmres_wave_sample(const rpmres_potential *p, int parity,
                                 const char *eps_re, const char *eps_im, int M,
                                 double x_lo, double x_hi, int n, double *x,
                                 double *re_phi, double *im_phi, double *abs2);
/* series validity radius x_M for the same state */
rpmres_status rpmres_wave_radius(const rpmres_potential *p, int parity,
                                 const char *eps_re, const char *eps_im, int M,
                                 double *x_M);
/* exterior/interior probability ratio int_b^u |phi|^2 / int_0^b |phi|^2,
 * u = min(matching radius, series radius) */
rpmres_status rpmres_localization(const rpmres_potential *p, int parity,
                                  const char *eps_re, const char *eps_im,
                                  int M, double *ratio);

#ifdef __cplusplus
}
#endif

#endif /* RPMRES_H */
