#include "rpm.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "rpm_core.hpp"

namespace rpmres {

// ---- precision dispatch --------------------------------------------------

template <class P>
static typename P::cplx parse_cplx(const std::string& re, const std::string& im)
{
    return typename P::cplx(parse_real<typename P::real>(re),
                            parse_real<typename P::real>(im.empty() ? "0" : im));
}

template <class P>
static std::pair<std::string, std::string> find_root_impl(const Potential& p, int s, int D,
                                                          int d, const std::string& sre,
                                                          const std::string& sim,
                                                          int max_iter)
{
    using R = typename P::real;
    auto vc = taylor_coefficients<R>(p, d + 2 * D - 1);
    R tol = pow(R(10), -(P::digits10 - 10));
    auto res = newton_root<P>(vc, s, D, d, parse_cplx<P>(sre, sim), tol, max_iter);
    if (res.singular)
        throw Error(Status::convergence, "Hankel derivative vanished during Newton iteration");
    if (!res.converged)
        throw Error(Status::convergence,
                    "Newton did not reach tolerance in " + std::to_string(max_iter) +
                        " iterations (best step " + format_real(res.min_step, 3) + ")");
    int sd = P::digits10 + 3;
    return {format_real(res.eps.real(), sd), format_real(res.eps.imag(), sd)};
}

std::pair<std::string, std::string> find_root_str(const Potential& p, int parity, int D,
                                                  int d, const std::string& seed_re,
                                                  const std::string& seed_im, int digits,
                                                  int max_iter)
{
    switch (pick_digits(digits)) {
    case 32: return find_root_impl<p32>(p, parity, D, d, seed_re, seed_im, max_iter);
    case 50: return find_root_impl<p50>(p, parity, D, d, seed_re, seed_im, max_iter);
    case 64: return find_root_impl<p64>(p, parity, D, d, seed_re, seed_im, max_iter);
    default: return find_root_impl<p100>(p, parity, D, d, seed_re, seed_im, max_iter);
    }
}

template <class P>
static Resonance converge_impl(const Potential& p, int s, int d, int D_min, int D_max,
                               const std::string& sre, const std::string& sim)
{
    using R = typename P::real;
    auto vc = taylor_coefficients<R>(p, d + 2 * D_max - 1);
    R tol = pow(R(10), -(P::digits10 - 10));
    auto lr = run_ladder<P>(vc, s, d, D_min, D_max, parse_cplx<P>(sre, sim), tol, 2500);
    Resonance out;
    int sd = P::digits10 + 3;
    R er = lr.eps.real(), ei = lr.eps.imag();
    R g = -2 * ei;
    out.eps_re = format_real(er, sd);
    out.eps_im = format_real(ei, sd);
    out.gamma = format_real(g, sd);
    out.eps_re_d = er.template convert_to<double>();
    out.eps_im_d = ei.template convert_to<double>();
    out.gamma_d = g.template convert_to<double>();
    out.error_estimate = lr.error_estimate;
    out.parity = s;
    out.D_final = lr.D_final;
    return out;
}

Resonance converge_resonance(const Potential& p, int parity, int d, int D_min, int D_max,
                             const std::string& seed_re, const std::string& seed_im,
                             int digits)
{
    switch (pick_digits(digits)) {
    case 32: return converge_impl<p32>(p, parity, d, D_min, D_max, seed_re, seed_im);
    case 50: return converge_impl<p50>(p, parity, d, D_min, D_max, seed_re, seed_im);
    case 64: return converge_impl<p64>(p, parity, d, D_min, D_max, seed_re, seed_im);
    default: return converge_impl<p100>(p, parity, d, D_min, D_max, seed_re, seed_im);
    }
}

// ---- small-D polynomial seeds -------------------------------------------

namespace {

using Poly = std::vector<double>; // ascending coefficients

Poly pmul(const Poly& a, const Poly& b)
{
    Poly r(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

void paxpy(Poly& a, const Poly& b, double s)
{
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (size_t i = 0; i < b.size(); ++i)
        a[i] += s * b[i];
}

std::vector<Poly> riccati_polys(const std::vector<double>& vc, int s, int nmax)
{
    std::vector<Poly> f(nmax + 1);
    f[0] = {0.0, 2.0 / (2 * s + 1)};
    for (int n = 1; n <= nmax; ++n) {
        Poly acc{0.0};
        for (int j = 0; j < n; ++j)
            paxpy(acc, pmul(f[j], f[n - 1 - j]), 1.0);
        acc[0] -= 2.0 * vc[n - 1];
        for (double& c : acc)
            c /= 2 * n + 2 * s + 1;
        f[n] = std::move(acc);
    }
    return f;
}

Poly det_poly(const std::vector<Poly>& m, int D)
{
    if (D == 1) return m[0];
    Poly acc{0.0};
    std::vector<Poly> minor((D - 1) * (D - 1));
    double sign = 1.0;
    for (int c = 0; c < D; ++c) {
        for (int i = 1; i < D; ++i)
            for (int j = 0, jj = 0; j < D; ++j)
                if (j != c)
                    minor[(i - 1) * (D - 1) + jj++] = m[i * D + j];
        paxpy(acc, pmul(m[c], det_poly(minor, D - 1)), sign);
        sign = -sign;
    }
    return acc;
}

std::vector<std::complex<double>> poly_roots(Poly c)
{
    double mx = 0;
    for (double v : c)
        mx = std::max(mx, std::fabs(v));
    if (mx == 0)
        throw Error(Status::domain, "degenerate determinant polynomial (all coefficients zero)");
    while (!c.empty() && std::fabs(c.back()) < 1e-14 * mx)
        c.pop_back();
    std::vector<std::complex<double>> roots;
    size_t nzero = 0;
    while (nzero < c.size() && c[nzero] == 0.0)
        ++nzero;
    for (size_t i = 0; i < nzero; ++i)
        roots.emplace_back(0.0, 0.0);
    std::vector<double> cc(c.begin() + nzero, c.end());
    int deg = static_cast<int>(cc.size()) - 1;
    if (deg < 1)
        return roots;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        comp(i, deg - 1) = -cc[i] / cc[deg];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < deg; ++i)
        roots.emplace_back(es.eigenvalues()(i).real(), es.eigenvalues()(i).imag());
    return roots;
}

} // namespace

std::vector<std::complex<double>> seed_roots(const Potential& p, int parity, int D_small,
                                             int d, double re_lo, double re_hi,
                                             double im_lo, double im_hi)
{
    if (D_small < 2 || D_small > 4)
        throw Error(Status::config, "seed dimension must be 2, 3 or 4");
    int nmax = d + 2 * D_small - 1;
    std::vector<double> vc;
    for (const auto& v : taylor_coefficients<p50::real>(p, nmax))
        vc.push_back(v.convert_to<double>());
    auto f = riccati_polys(vc, parity, nmax);
    std::vector<Poly> m(static_cast<size_t>(D_small) * D_small);
    for (int i = 0; i < D_small; ++i)
        for (int j = 0; j < D_small; ++j)
            m[i * D_small + j] = f[d + i + j + 1];
    auto roots = poly_roots(det_poly(m, D_small));
    std::vector<std::complex<double>> out;
    for (auto r : roots) {
        if (!(std::isfinite(r.real()) && std::isfinite(r.imag())))
            continue;
        if (r.real() < re_lo || r.real() > re_hi || r.imag() < im_lo || r.imag() > im_hi)
            continue;
        bool dup = false;
        for (auto q : out)
            if (std::abs(q - r) < 1e-8 * (1 + std::abs(q)))
                dup = true;
        if (!dup)
            out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

// ---- multistart driver ---------------------------------------------------

template <class P>
static std::vector<Resonance> lowest_impl(const Potential& p, int s, int count, int d,
                                          int D_min, int D_max, double re_lo, double re_hi,
                                          double im_depth)
{
    using R = typename P::real;
    using C = typename P::cplx;
    auto vc = taylor_coefficients<R>(p, d + 2 * D_max - 1);
    R tol = pow(R(10), -(P::digits10 - 10));

    std::vector<std::complex<double>> cand;
    try {
        cand = seed_roots(p, s, 4, d, re_lo, re_hi, -im_depth, 0.0);
    } catch (const Error&) {
        // seeds from the grid only
    }
    const int nre = 13, nim = 5;
    for (int i = 0; i <= nre; ++i)
        for (int j = 0; j < nim; ++j)
            cand.emplace_back(re_lo + (re_hi - re_lo) * i / nre,
                              -im_depth * j / nim - 1e-3);

    // one Newton pass at D_min, dedupe the survivors
    std::vector<std::complex<double>> roots;
    for (auto c0 : cand) {
        auto r = newton_root<P>(vc, s, D_min, d,
                                C(R(c0.real()), R(c0.imag())), tol, 300);
        // a stalled iterate whose best step already sits at the cancellation
        // floor is still a root of the D_min determinant; the ladder applies
        // the same acceptance rule
        if (!r.converged && !(!r.singular && r.min_step <= R("1e-8")))
            continue;
        std::complex<double> z(r.eps.real().template convert_to<double>(),
                               r.eps.imag().template convert_to<double>());
        if (z.imag() > 0)
            z = std::conj(z);
        if (z.real() < re_lo - 1e-6 || z.real() > re_hi + 1e-6 || z.imag() < -1.2 * im_depth - 1e-6)
            continue;
        bool dup = false;
        for (auto q : roots)
            if (std::abs(q - z) < 1e-6 * (1 + std::abs(q)))
                dup = true;
        if (!dup)
            roots.push_back(z);
    }
    std::sort(roots.begin(), roots.end(),
              [](auto a, auto b) { return a.real() < b.real(); });

    std::vector<Resonance> out;
    for (auto z : roots) {
        if (static_cast<int>(out.size()) >= count)
            break;
        Resonance res;
        try {
            int sd = P::digits10 + 3;
            res = converge_resonance(p, s, d, D_min, D_max,
                                     format_real(R(z.real()), sd),
                                     format_real(R(z.imag()), sd), P::digits10);
        } catch (const Error&) {
            continue; // spurious D_min root that has no stable sequence
        }
        // genuine roots settle many orders below this; stalled artifacts sit
        // at 1e-6 or worse, so the gate separates them with wide margin
        if (res.error_estimate > 1e-10)
            continue;
        if (res.eps_re_d < re_lo - 1e-6 || res.eps_re_d > re_hi + 1e-6 ||
            res.eps_im_d < -1.2 * im_depth - 1e-6)
            continue;
        bool dup = false;
        for (const auto& q : out)
            if (std::abs(std::complex<double>(q.eps_re_d - res.eps_re_d,
                                              q.eps_im_d - res.eps_im_d)) <
                1e-8 * (1 + std::abs(q.eps_re_d)))
                dup = true;
        if (!dup)
            out.push_back(std::move(res));
    }
    return out;
}

std::vector<Resonance> lowest_resonances(const Potential& p, int parity, int count, int d,
                                         int D_min, int D_max, int digits, double re_lo,
                                         double re_hi, double im_depth)
{
    if (count < 1)
        throw Error(Status::config, "count must be >= 1");
    switch (pick_digits(digits)) {
    case 32: return lowest_impl<p32>(p, parity, count, d, D_min, D_max, re_lo, re_hi, im_depth);
    case 50: return lowest_impl<p50>(p, parity, count, d, D_min, D_max, re_lo, re_hi, im_depth);
    case 64: return lowest_impl<p64>(p, parity, count, d, D_min, D_max, re_lo, re_hi, im_depth);
    default: return lowest_impl<p100>(p, parity, count, d, D_min, D_max, re_lo, re_hi, im_depth);
    }
}

} // namespace rpmres
