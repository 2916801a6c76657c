#include "scattering.hpp"

#include <algorithm>
#include <cmath>

#include "ode.hpp"

namespace rpmres {

using C = std::complex<long double>;

long double matching_radius(const Potential& p)
{
    long double asym = asymptote_value<long double>(p);
    Geometry g = barrier_geometry(p);
    long double lam = parse_real<long double>(p.lambda);
    long double cap = 12.0L / sqrtl(lam);
    long double a = g.b;
    while (a < cap && fabsl(evaluate<long double>(p, a) - asym) >= 1e-12L * g.v_b)
        a += 0.05L;
    if (fabsl(evaluate<long double>(p, a) - asym) >= 1e-10L * g.v_b)
        throw Error(Status::domain, "potential has not flattened out by the matching cap");
    return a;
}

void integrate_outgoing(const Potential& p, long double epsilon, long double a,
                        C& phi, C& dphi, long double rtol)
{
    long double asym = asymptote_value<long double>(p);
    if (!(epsilon > asym))
        throw Error(Status::domain, "energy at or below the asymptotic level (closed channel)");
    long double k = sqrtl(2.0L * (epsilon - asym));
    phi = C(cosl(k * a), sinl(k * a));
    dphi = C(0.0L, k) * phi;
    LdPot v = ld_pot(p);
    auto q = [&](long double x) { return 2.0L * (v(x) - epsilon); };
    rk45_span(q, a, -a, phi, dphi, rtol);
}

Amplitudes decompose(C phi, C dphi, long double k, long double a)
{
    if (!(k > 0))
        throw Error(Status::config, "wavenumber must be positive");
    C ik(0.0L, k);
    C eika(cosl(k * a), sinl(k * a));
    C A = eika * (phi + dphi / ik) * 0.5L;
    C B = (C(1.0L, 0.0L) / eika) * (phi - dphi / ik) * 0.5L;
    return {A, B, k};
}

TPoint transmission(const Potential& p, double epsilon)
{
    long double asym = asymptote_value<long double>(p);
    long double eps = epsilon;
    if (!(eps > asym))
        throw Error(Status::domain, "energy at or below the asymptotic level (closed channel)");
    long double a = matching_radius(p);
    long double k = sqrtl(2.0L * (eps - asym));
    C phi, dphi;
    integrate_outgoing(p, eps, a, phi, dphi);
    Amplitudes am = decompose(phi, dphi, k, a);
    long double A2 = std::norm(am.A);
    long double T = 1.0L / A2;
    long double R = std::norm(am.B) / A2;
    long double res = fabsl(T + R - 1.0L);
    if (res > 1e-6L)
        throw Error(Status::unitarity, "flux conservation residual above hard limit");
    return {epsilon, static_cast<double>(T), static_cast<double>(R), static_cast<double>(res)};
}

std::vector<TPoint> scan_transmission(const Potential& p, double lo, double hi, int n_points)
{
    if (n_points < 2)
        throw Error(Status::config, "scan needs at least 2 points");
    if (!(lo < hi))
        throw Error(Status::config, "scan window must have lo < hi");
    std::vector<TPoint> out;
    out.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        double e = lo + (hi - lo) * i / (n_points - 1);
        out.push_back(transmission(p, e));
    }
    return out;
}

std::pair<double, double> find_peak(const Potential& p, double lo, double hi, double tol)
{
    if (!(lo < hi))
        throw Error(Status::config, "peak bracket must have lo < hi");
    const int nc = 33;
    double best_x = lo, best_T = -1;
    int best_i = 0;
    std::vector<double> xs(nc), Ts(nc);
    for (int i = 0; i < nc; ++i) {
        xs[i] = lo + (hi - lo) * i / (nc - 1);
        Ts[i] = transmission(p, xs[i]).T;
        if (Ts[i] > best_T) {
            best_T = Ts[i];
            best_x = xs[i];
            best_i = i;
        }
    }
    if (best_i == 0 || best_i == nc - 1)
        throw Error(Status::domain, "no interior transmission maximum in bracket");
    double a = xs[best_i - 1], b = xs[best_i + 1];
    const double gr = 0.6180339887498948482;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = transmission(p, x1).T, f2 = transmission(p, x2).T;
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = transmission(p, x2).T;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = transmission(p, x1).T;
        }
    }
    double xp = 0.5 * (a + b);
    double Tp = transmission(p, xp).T;
    if (f1 > Tp) { Tp = f1; xp = x1; }
    if (f2 > Tp) { Tp = f2; xp = x2; }
    if (Tp < 1.0 - 1e-6)
        throw Error(Status::convergence, "located transmission peak is below unit height");
    return {xp, Tp};
}

double bw_profile(double epsilon, double eps_R, double eps_I_mag)
{
    if (!(eps_I_mag > 0))
        throw Error(Status::config, "resonance half-width must be positive");
    double d = epsilon - eps_R;
    return eps_I_mag * eps_I_mag / (d * d + eps_I_mag * eps_I_mag);
}

double bw_deviation(const Potential& p, double eps_R, double eps_I_mag,
                    double window, int n_points)
{
    if (n_points < 2)
        throw Error(Status::config, "deviation scan needs at least 2 points");
    long double asym = asymptote_value<long double>(p);
    if (!(eps_R - window > asym))
        throw Error(Status::domain, "comparison window reaches into the closed channel");
    double worst = 0;
    for (int i = 0; i < n_points; ++i) {
        double e = eps_R - window + 2 * window * i / (n_points - 1);
        double d = std::fabs(transmission(p, e).T - bw_profile(e, eps_R, eps_I_mag));
        worst = std::max(worst, d);
    }
    return worst;
}

} // namespace rpmres
