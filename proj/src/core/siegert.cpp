#include "siegert.hpp"

#include <algorithm>
#include <cmath>

#include "ode.hpp"
#include "scattering.hpp"

namespace rpmres {

using C = std::complex<long double>;

WaveSeries wavefunction_series(const Potential& p, int parity, C epsilon, int M)
{
    if (parity != 0 && parity != 1)
        throw Error(Status::config, "parity must be 0 (even) or 1 (odd)");
    if (M < 1)
        throw Error(Status::config, "series order M must be at least 1");
    const int s = parity;
    std::vector<long double> v = taylor_coefficients<long double>(p, M);
    std::vector<C> c(M + 1);
    c[0] = C(1.0L, 0.0L);
    for (int j = 0; j < M; ++j) {
        C acc = -epsilon * c[j];
        for (int k = 1; k <= j; ++k)
            acc += v[k - 1] * c[j - k];
        acc *= 2.0L / static_cast<long double>((2 * j + s + 1) * (2 * j + s + 2));
        c[j + 1] = acc;
    }

    // last-term dominance test: t_M(x) / max_{j<M} t_j(x) stays under 1e-6
    auto ratio = [&](long double x) {
        long double z = x * x, zp = 1.0L, mx = 0.0L;
        for (int j = 0; j < M; ++j) {
            mx = std::max(mx, static_cast<long double>(std::abs(c[j])) * zp);
            zp *= z;
        }
        long double last = static_cast<long double>(std::abs(c[M])) * zp;
        return mx > 0 ? last / mx : 1.0L;
    };
    long double x = 0.05L, radius = 50.0L;
    while (x <= 50.0L && ratio(x) < 1e-6L)
        x += 0.05L;
    if (x <= 50.0L) {
        long double lo = std::max(0.0L, x - 0.05L), hi = x;
        for (int it = 0; it < 80; ++it) {
            long double mid = 0.5L * (lo + hi);
            (ratio(mid) < 1e-6L ? lo : hi) = mid;
        }
        radius = lo;
    }
    return {s, epsilon, std::move(c), radius};
}

C evaluate_wave(const WaveSeries& w, long double x)
{
    if (!(fabsl(x) <= w.validity_radius))
        throw Error(Status::domain, "coordinate outside the series validity radius");
    long double z = x * x;
    C acc = w.c.back();
    for (size_t j = w.c.size() - 1; j-- > 0;)
        acc = acc * z + w.c[j];
    if (w.parity == 1)
        acc *= x;
    return acc;
}

namespace {

// composite Simpson over samples f[i0..i0+n], n even, spacing h
long double simpson_arr(const std::vector<long double>& f, size_t i0, size_t n, long double h)
{
    long double s = f[i0] + f[i0 + n];
    for (size_t i = 1; i < n; i += 2)
        s += 4.0L * f[i0 + i];
    for (size_t i = 2; i < n; i += 2)
        s += 2.0L * f[i0 + i];
    return s * h / 3.0L;
}

template <class F>
long double simpson_fn(F&& f, long double lo, long double hi, int n)
{
    long double h = (hi - lo) / n;
    long double s = f(lo) + f(hi);
    for (int i = 1; i < n; i += 2)
        s += 4.0L * f(lo + i * h);
    for (int i = 2; i < n; i += 2)
        s += 2.0L * f(lo + i * h);
    return s * h / 3.0L;
}

// Simpson with a half-resolution cross-check; both segments use even counts.
long double checked_norm(const std::vector<long double>& psi, size_t i0, size_t n, long double h)
{
    std::vector<long double> sq(n + 1);
    for (size_t i = 0; i <= n; ++i)
        sq[i] = psi[i0 + i] * psi[i0 + i];
    long double fine = simpson_arr(sq, 0, n, h);
    std::vector<long double> half(n / 2 + 1);
    for (size_t i = 0; i <= n / 2; ++i)
        half[i] = sq[2 * i];
    long double coarse = simpson_arr(half, 0, n / 2, 2 * h);
    long double scale = std::max(fabsl(fine), 1e-290L);
    if (fabsl(fine - coarse) / scale > 1e-8L)
        throw Error(Status::convergence, "quadrature did not reach the requested tolerance");
    return fine;
}

} // namespace

WaveSample transmission_state(const Potential& p, int parity, double epsilon_T, double a)
{
    if (parity != 0 && parity != 1)
        throw Error(Status::config, "parity must be 0 (even) or 1 (odd)");
    Geometry g = barrier_geometry(p);
    long double aa = a;
    if (!(aa > g.b))
        throw Error(Status::config, "outer radius must lie beyond the barrier top");
    const size_t seg = 4096;
    WaveSample w;
    w.x.reserve(2 * seg + 1);
    w.psi.reserve(2 * seg + 1);
    w.dpsi.reserve(2 * seg + 1);
    LdPot v = ld_pot(p);
    long double eps = epsilon_T;
    auto q = [&](long double x) { return 2.0L * (v(x) - eps); };
    long double y = parity == 0 ? 1.0L : 0.0L;
    long double dy = parity == 0 ? 0.0L : 1.0L;
    w.x.push_back(0.0L);
    w.psi.push_back(y);
    w.dpsi.push_back(dy);
    auto march = [&](long double lo, long double hi) {
        long double h = (hi - lo) / seg;
        for (size_t i = 1; i <= seg; ++i) {
            long double x0 = lo + (i - 1) * h, x1 = i == seg ? hi : lo + i * h;
            rk45_span(q, x0, x1, y, dy, 1e-12L);
            w.x.push_back(x1);
            w.psi.push_back(y);
            w.dpsi.push_back(dy);
        }
    };
    march(0.0L, g.b);
    w.i_b = w.x.size() - 1;
    march(g.b, aa);
    return w;
}

SAReport sa_width(const Potential& p, int parity, double epsilon_T)
{
    long double asym = asymptote_value<long double>(p);
    if (!(epsilon_T > asym))
        throw Error(Status::domain, "width estimate needs an open-channel energy");
    Geometry g = barrier_geometry(p);
    long double a = matching_radius(p);
    WaveSample w = transmission_state(p, parity, epsilon_T, static_cast<double>(a));
    long double k_T = sqrtl(2.0L * (epsilon_T - asym));
    long double h1 = g.b / 4096.0L;
    long double norm = checked_norm(w.psi, 0, w.i_b, h1);
    if (norm < 1e-280L)
        throw Error(Status::domain, "degenerate state: vanishing interior norm");
    long double pa = w.psi.back(), dpa = w.dpsi.back();
    long double dens = pa * pa + (dpa / k_T) * (dpa / k_T);
    SAReport r;
    r.gamma_SA = static_cast<double>(k_T * dens / norm);
    r.epsilon_T_used = epsilon_T;
    r.a_used = static_cast<double>(a);
    r.b_used = static_cast<double>(g.b);
    r.norm_integral = static_cast<double>(norm);
    r.boundary_density = static_cast<double>(dens);
    return r;
}

double localization_series(const Potential& p, int parity, C epsilon, int M)
{
    WaveSeries w = wavefunction_series(p, parity, epsilon, M);
    Geometry g = barrier_geometry(p);
    long double a = matching_radius(p);
    long double u = std::min(a, w.validity_radius);
    long double bi = std::min(g.b, w.validity_radius);
    auto dens = [&](long double x) { return static_cast<long double>(std::norm(evaluate_wave(w, x))); };
    long double interior = simpson_fn(dens, 0.0L, bi, 2000);
    if (!(interior > 0))
        throw Error(Status::domain, "degenerate state: vanishing interior norm");
    long double lo = std::min(g.b, u);
    long double exterior = u > lo ? simpson_fn(dens, lo, u, 2000) : 0.0L;
    return static_cast<double>(exterior / interior);
}

double localization_ode(const Potential& p, int parity, double epsilon_T)
{
    long double a = matching_radius(p);
    WaveSample w = transmission_state(p, parity, epsilon_T, static_cast<double>(a));
    Geometry g = barrier_geometry(p);
    long double h1 = g.b / 4096.0L;
    long double h2 = (a - g.b) / 4096.0L;
    long double interior = checked_norm(w.psi, 0, w.i_b, h1);
    long double exterior = checked_norm(w.psi, w.i_b, w.psi.size() - 1 - w.i_b, h2);
    if (!(interior > 0))
        throw Error(Status::domain, "degenerate state: vanishing interior norm");
    return static_cast<double>(exterior / interior);
}

} // namespace rpmres
