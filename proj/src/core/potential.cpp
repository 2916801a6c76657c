#include "potential.hpp"

#include <cmath>
#include <limits>

namespace rpmres {

static void check_positive(const std::string& s, const char* what)
{
    double d = parse_real<p50::real>(s).convert_to<double>();
    if (!(d > 0))
        throw Error(Status::config, std::string(what) + " must be > 0");
}

Potential make_gaussian(const std::string& v0, const std::string& lambda)
{
    check_positive(v0, "v0");
    check_positive(lambda, "lambda");
    Potential p;
    p.kind = PotKind::gaussian;
    p.v0 = v0;
    p.lambda = lambda;
    return p;
}

Potential make_kg(const std::string& J, const std::string& lambda)
{
    parse_real<p50::real>(J); // validate
    check_positive(lambda, "lambda");
    Potential p;
    p.kind = PotKind::kg;
    p.J = J;
    p.lambda = lambda;
    return p;
}

Potential make_custom(std::vector<std::string> coeffs)
{
    if (coeffs.empty())
        throw Error(Status::config, "custom potential needs at least one coefficient");
    for (const auto& c : coeffs)
        parse_real<p50::real>(c);
    Potential p;
    p.kind = PotKind::custom;
    p.coeffs = std::move(coeffs);
    return p;
}

double custom_radius(const Potential& p)
{
    if (p.kind != PotKind::custom)
        return std::numeric_limits<double>::infinity();
    size_t n = p.coeffs.size();
    std::vector<double> c(n);
    bool all_zero = true;
    for (size_t j = 0; j < n; ++j) {
        c[j] = parse_real<p50::real>(p.coeffs[j]).convert_to<double>();
        if (c[j] != 0) all_zero = false;
    }
    if (all_zero || n < 2)
        return std::numeric_limits<double>::infinity();

    // largest x where the last term stays 1e-30 below the peak term
    auto ok = [&](double x) {
        double z = x * x, zp = z, mx = 0, last = 0;
        for (size_t j = 0; j < n; ++j) {
            last = std::fabs(c[j]) * zp;
            if (j + 1 < n && last > mx) mx = last;
            zp *= z;
        }
        if (mx == 0) return false;
        return last / mx < 1e-30;
    };

    double x = 1e-3;
    if (!ok(x)) return x;
    while (x < 1e6 && ok(x * 1.05))
        x *= 1.05;
    double lo = x, hi = x * 1.05;
    for (int i = 0; i < 60; ++i) {
        double m = 0.5 * (lo + hi);
        (ok(m) ? lo : hi) = m;
    }
    return lo;
}

Geometry barrier_geometry(const Potential& p)
{
    if (p.kind == PotKind::gaussian) {
        long double v0 = parse_real<p50::real>(p.v0).convert_to<long double>();
        long double lam = parse_real<p50::real>(p.lambda).convert_to<long double>();
        Geometry g;
        g.b = 1.0L / sqrtl(lam);
        g.v_b = v0 / (expl(1.0L) * lam);
        return g;
    }

    // golden-section maximization of v on (0, hi]
    auto vf = [&](long double x) { return evaluate<long double>(p, x); };
    long double hi;
    if (p.kind == PotKind::kg)
        hi = 12.0L / sqrtl(parse_real<p50::real>(p.lambda).convert_to<long double>());
    else
        hi = static_cast<long double>(custom_radius(p));
    if (!(hi > 0) || !std::isfinite(static_cast<double>(hi)))
        hi = 50.0L;

    // coarse bracket of the max first
    const int N = 400;
    long double best_x = 0, best_v = vf(1e-8L);
    for (int i = 1; i <= N; ++i) {
        long double x = hi * i / N;
        long double v = vf(x);
        if (v > best_v) { best_v = v; best_x = x; }
    }
    if (best_x <= hi / N || best_x >= hi * (N - 1) / N)
        throw Error(Status::domain, "potential has no interior barrier maximum");

    long double a = best_x - hi / N, b = best_x + hi / N;
    const long double gr = 0.6180339887498948482L;
    long double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    long double f1 = vf(x1), f2 = vf(x2);
    while (b - a > 1e-15L * (1 + b)) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = vf(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = vf(x1);
        }
    }
    Geometry g;
    g.b = 0.5L * (a + b);
    g.v_b = vf(g.b);
    if (!(g.v_b > 0))
        throw Error(Status::domain, "potential has no positive barrier");
    return g;
}

Nondim nondimensionalize(const PhysicalParams& ph)
{
    if (!(ph.m > 0 && ph.hbar > 0 && ph.V0 > 0 && ph.alpha > 0))
        throw Error(Status::config, "physical parameters must be positive");
    double L = ph.L;
    if (!(L > 0))
        L = std::sqrt(ph.hbar / std::sqrt(ph.m * ph.V0));
    Nondim nd;
    nd.L = L;
    nd.v0 = ph.m * std::pow(L, 4) * ph.V0 / (ph.hbar * ph.hbar);
    nd.lambda = ph.alpha * L * L;
    return nd;
}

} // namespace rpmres
