#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace rpmres {

// Symmetric potentials with v(0) = 0.  Parameters are kept as the decimal
// strings they were given with and re-parsed at the caller's precision, so a
// 64-digit run is not contaminated by a double rounding of e.g. 0.1.
enum class PotKind { gaussian, kg, custom };

struct Potential {
    PotKind kind{PotKind::gaussian};
    std::string v0;     // gaussian
    std::string lambda; // gaussian, kg
    std::string J;      // kg
    std::vector<std::string> coeffs; // custom: c_1, c_2, ... of sum c_j x^(2j)
};

Potential make_gaussian(const std::string& v0, const std::string& lambda);
Potential make_kg(const std::string& J, const std::string& lambda);
Potential make_custom(std::vector<std::string> coeffs);

// Radius inside which the custom series is trusted (tail term ratio < 1e-30);
// +inf for closed-form kinds.
double custom_radius(const Potential& p);

template <class R>
R evaluate(const Potential& p, const R& x);

// v_1 .. v_n of v(x) = sum_j v_j x^(2j)
template <class R>
std::vector<R> taylor_coefficients(const Potential& p, int n);

// Large-|x| limit: 0 (gaussian), J (kg); custom has none -> domain error.
template <class R>
R asymptote_value(const Potential& p);

// Pre-parsed long-double evaluator for integration hot paths, where
// re-parsing the decimal parameter strings per call would dominate.
struct LdPot {
    PotKind kind;
    long double v0 = 0, lam = 0, J = 0;
    std::vector<long double> cs;
    long double rad = 0;

    long double operator()(long double x) const
    {
        switch (kind) {
        case PotKind::gaussian: return v0 * x * x * expl(-lam * x * x);
        case PotKind::kg: return (x * x / 2 - J) * expl(-lam * x * x) + J;
        case PotKind::custom: {
            if (!(x >= -rad && x <= rad))
                throw Error(Status::domain, "custom series evaluated outside validated radius");
            long double z = x * x, acc = 0, zp = 1;
            for (long double c : cs) {
                zp *= z;
                acc += c * zp;
            }
            return acc;
        }
        }
        throw Error(Status::internal, "bad potential kind");
    }
};

inline LdPot ld_pot(const Potential& p)
{
    LdPot f;
    f.kind = p.kind;
    switch (p.kind) {
    case PotKind::gaussian:
        f.v0 = parse_real<long double>(p.v0);
        f.lam = parse_real<long double>(p.lambda);
        break;
    case PotKind::kg:
        f.J = parse_real<long double>(p.J);
        f.lam = parse_real<long double>(p.lambda);
        break;
    case PotKind::custom:
        for (const auto& cs : p.coeffs)
            f.cs.push_back(parse_real<long double>(cs));
        f.rad = custom_radius(p);
        break;
    }
    return f;
}

struct Geometry {
    long double b;   // barrier position, > 0
    long double v_b; // barrier height
};

// Closed form for gaussian, golden-section maximization otherwise.
Geometry barrier_geometry(const Potential& p);

struct PhysicalParams {
    double m, hbar, V0, alpha;
    double L = 0; // 0 = absent, choose L^2 = hbar/sqrt(m V0)
};

struct Nondim {
    double v0, lambda, L;
};

Nondim nondimensionalize(const PhysicalParams& ph);

// ---- template definitions ----

template <class R>
R evaluate(const Potential& p, const R& x)
{
    using std::exp;
    switch (p.kind) {
    case PotKind::gaussian: {
        R v0 = parse_real<R>(p.v0), lam = parse_real<R>(p.lambda);
        return v0 * x * x * exp(-lam * x * x);
    }
    case PotKind::kg: {
        R J = parse_real<R>(p.J), lam = parse_real<R>(p.lambda);
        return (x * x / 2 - J) * exp(-lam * x * x) + J;
    }
    case PotKind::custom: {
        double xr = static_cast<double>(x);
        double rad = custom_radius(p);
        if (!(xr >= -rad && xr <= rad))
            throw Error(Status::domain, "custom series evaluated outside validated radius");
        R z = x * x, acc = R(0), zp = R(1);
        for (const auto& cs : p.coeffs) {
            zp *= z;
            acc += parse_real<R>(cs) * zp;
        }
        return acc;
    }
    }
    throw Error(Status::internal, "bad potential kind");
}

template <class R>
std::vector<R> taylor_coefficients(const Potential& p, int n)
{
    if (n < 1)
        throw Error(Status::config, "taylor_coefficients needs n >= 1");
    std::vector<R> v;
    v.reserve(n);
    switch (p.kind) {
    case PotKind::gaussian: {
        // v_j = v0 (-lam)^(j-1) / (j-1)!
        R lam = parse_real<R>(p.lambda);
        R t = parse_real<R>(p.v0);
        for (int j = 1; j <= n; ++j) {
            v.push_back(t);
            t *= -lam / j;
        }
        break;
    }
    case PotKind::kg: {
        // v_j = (-lam)^(j-1) / (2 (j-1)!)  -  J (-lam)^j / j!
        R lam = parse_real<R>(p.lambda), J = parse_real<R>(p.J);
        R a = R(1) / 2;        // (-lam)^(j-1)/(2 (j-1)!)
        R b = -J * (-lam);     // -J (-lam)^j / j!   (j=1 start)
        for (int j = 1; j <= n; ++j) {
            v.push_back(a + b);
            a *= -lam / j;
            b *= -lam / (j + 1);
        }
        break;
    }
    case PotKind::custom: {
        for (int j = 1; j <= n; ++j)
            v.push_back(j <= static_cast<int>(p.coeffs.size())
                            ? parse_real<R>(p.coeffs[j - 1])
                            : R(0));
        break;
    }
    }
    return v;
}

template <class R>
R asymptote_value(const Potential& p)
{
    switch (p.kind) {
    case PotKind::gaussian: return R(0);
    case PotKind::kg: return parse_real<R>(p.J);
    case PotKind::custom:
        throw Error(Status::domain, "custom series potential has no asymptote");
    }
    throw Error(Status::internal, "bad potential kind");
}

} // namespace rpmres
