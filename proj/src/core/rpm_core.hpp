#pragma once

// Hankel-determinant quantization of the regularized log-derivative series.
// Everything here is templated on a precision level P (see numeric.hpp) and
// works on either plain complex values or first-order duals (value +
// d/d(epsilon)), so Newton's method gets exact derivatives through both the
// coefficient recurrence and the LU factorization.

#include <utility>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace rpmres {

template <class C>
struct dual {
    C v{}; // value
    C d{}; // derivative w.r.t. epsilon
    dual() = default;
    dual(const C& v_) : v(v_) {}
    dual(const C& v_, const C& d_) : v(v_), d(d_) {}
    friend dual operator+(const dual& a, const dual& b) { return {a.v + b.v, a.d + b.d}; }
    friend dual operator-(const dual& a, const dual& b) { return {a.v - b.v, a.d - b.d}; }
    friend dual operator*(const dual& a, const dual& b)
    {
        return {a.v * b.v, a.v * b.d + a.d * b.v};
    }
    friend dual operator/(const dual& a, const dual& b)
    {
        C q = a.v / b.v;
        return {q, (a.d - q * b.d) / b.v};
    }
    dual& operator+=(const dual& o) { v += o.v; d += o.d; return *this; }
    dual& operator-=(const dual& o) { v -= o.v; d -= o.d; return *this; }
};

template <class T>
struct is_dual : std::false_type {};
template <class C>
struct is_dual<dual<C>> : std::true_type {};

// |value| of a plain or dual number
template <class T>
auto vmag(const T& a)
{
    if constexpr (is_dual<T>::value)
        return abs(a.v);
    else
        return abs(a);
}

// multiply by a constant (no derivative contribution)
template <class T, class C>
T cmul(const T& a, const C& c)
{
    if constexpr (is_dual<T>::value)
        return T(a.v * c, a.d * c);
    else
        return a * c;
}

// f_0 = 2 eps / (2s+1);  f_n = [sum_{j<n} f_j f_{n-1-j} - 2 v_n] / (2n+2s+1).
// v_n beyond the supplied list is an error: the caller decides the length.
template <class P, class T>
std::vector<T> riccati_seq(const std::vector<typename P::real>& vc, int s, const T& eps,
                           int nmax)
{
    using R = typename P::real;
    using C = typename P::cplx;
    if (s != 0 && s != 1)
        throw Error(Status::config, "parity must be 0 or 1");
    if (static_cast<int>(vc.size()) < nmax)
        throw Error(Status::config, "v_coeffs too short for requested coefficient count");
    std::vector<T> f(nmax + 1);
    f[0] = cmul(eps, C(R(2) / R(2 * s + 1)));
    for (int n = 1; n <= nmax; ++n) {
        T acc{};
        for (int j = 0; j < n / 2; ++j)
            acc += f[j] * f[n - 1 - j];
        acc += acc;
        if (n % 2 == 1)
            acc += f[n / 2] * f[n / 2];
        const R& vn = vc[n - 1];
        acc = acc - T(C(vn + vn));
        f[n] = cmul(acc, C(R(1) / R(2 * n + 2 * s + 1)));
    }
    return f;
}

// Determinant of the D x D matrix m (row-major, consumed) by LU with partial
// pivoting on |value|.  Rows are pre-scaled by their largest entry, with the
// scale product restored at the end, so the raw value neither over- nor
// underflows and root locations are untouched.
template <class P, class T>
T hankel_lu(std::vector<T>& m, int D)
{
    using R = typename P::real;
    using C = typename P::cplx;
    R pref(1);
    int sign = 1;
    for (int i = 0; i < D; ++i) {
        R mx(0);
        for (int j = 0; j < D; ++j) {
            R a = vmag(m[i * D + j]);
            if (a > mx) mx = a;
        }
        if (mx == 0)
            return T(C(0)); // a zero row: determinant exactly 0
        C cinv{R(1) / mx};
        for (int j = 0; j < D; ++j)
            m[i * D + j] = cmul(m[i * D + j], cinv);
        pref *= mx;
    }
    for (int c = 0; c < D; ++c) {
        int piv = c;
        R mx = vmag(m[c * D + c]);
        for (int r = c + 1; r < D; ++r) {
            R a = vmag(m[r * D + c]);
            if (a > mx) { mx = a; piv = r; }
        }
        if (mx == 0)
            return T(C(0)); // every pivot choice exactly zero
        if (piv != c) {
            for (int j = 0; j < D; ++j)
                std::swap(m[c * D + j], m[piv * D + j]);
            sign = -sign;
        }
        for (int r = c + 1; r < D; ++r) {
            T f = m[r * D + c] / m[c * D + c];
            for (int j = c + 1; j < D; ++j)
                m[r * D + j] = m[r * D + j] - f * m[c * D + j];
        }
    }
    T det{C(sign)};
    for (int i = 0; i < D; ++i)
        det = det * m[i * D + i];
    return cmul(det, C(pref));
}

// H_D^d(eps): entry(i,j) = f_{d+i+j-1}, i,j = 1..D; needs f_0..f_{d+2D-1}.
template <class P, class T>
T hankel_from_eps(const std::vector<typename P::real>& vc, int s, const T& eps, int D, int d)
{
    if (D < 2)
        throw Error(Status::config, "Hankel dimension must be >= 2");
    if (d < 0)
        throw Error(Status::config, "Hankel displacement must be >= 0");
    auto f = riccati_seq<P, T>(vc, s, eps, d + 2 * D - 1);
    std::vector<T> m(static_cast<size_t>(D) * D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            m[i * D + j] = f[d + i + j + 1];
    return hankel_lu<P, T>(m, D);
}

template <class P>
struct RootResult {
    typename P::cplx eps;      // converged root, or best iterate otherwise
    typename P::real min_step; // smallest Newton step seen
    int iters = 0;
    bool converged = false;
    bool singular = false; // derivative vanished identically
};

template <class P>
RootResult<P> newton_root(const std::vector<typename P::real>& vc, int s, int D, int d,
                          typename P::cplx seed, typename P::real tol, int max_iter)
{
    using C = typename P::cplx;
    using R = typename P::real;
    RootResult<P> res;
    res.eps = seed;
    res.min_step = R("1e300");
    C eps = seed, best = seed;
    int no_improve = 0;
    for (int it = 1; it <= max_iter; ++it) {
        res.iters = it;
        dual<C> H = hankel_from_eps<P, dual<C>>(vc, s, dual<C>(eps, C(1)), D, d);
        if (abs(H.v) == 0) {
            // exact zero of the determinant, e.g. a binary-exact eigenvalue
            res.eps = eps;
            res.min_step = R(0);
            res.converged = true;
            return res;
        }
        if (abs(H.d) == 0) {
            res.eps = eps;
            res.singular = true;
            return res;
        }
        C step = H.v / H.d;
        eps -= step;
        R st = abs(step);
        if (st < res.min_step) {
            res.min_step = st;
            best = eps;
            no_improve = 0;
        } else if (++no_improve >= 12) {
            // the step length has stopped shrinking: either the iterate is
            // bouncing around the determinant's cancellation floor (best is
            // then the root to that accuracy) or the seed is wandering with
            // no basin in sight; either way more iterations buy nothing
            break;
        }
        if (st < tol) {
            res.eps = eps;
            res.converged = true;
            return res;
        }
    }
    res.eps = best;
    return res;
}

template <class P>
struct LadderResult {
    typename P::cplx eps;
    double error_estimate;
    int D_final;
};

// Track one root from D_min to D_max, re-seeding each dimension with the
// previous root.  error_estimate is the last inter-D difference (max over
// real and imaginary parts).  A root whose Newton iteration stalls at its
// cancellation floor (instead of reaching tol) is still accepted as that
// dimension's root when the floor is small; the inter-D estimate reports the
// actual accuracy either way.
template <class P>
LadderResult<P> run_ladder(const std::vector<typename P::real>& vc, int s, int d, int D_min,
                           int D_max, typename P::cplx seed, typename P::real tol,
                           int max_iter)
{
    using C = typename P::cplx;
    using R = typename P::real;
    if (D_min < 2 || D_max < D_min + 1)
        throw Error(Status::config, "need D_min >= 2 and D_max >= D_min + 1");
    const R stall_accept("1e-8");
    C eps = seed, prev{};
    R prev_diff(-1);
    int grow = 0;
    bool have_prev = false;
    // step 2: consecutive dimensions approach the limit from alternating
    // sides, which would make the difference sequence saw-tooth
    for (int D = D_min; D <= D_max; D += 2) {
        auto r = newton_root<P>(vc, s, D, d, eps, tol, max_iter);
        if (!r.converged) {
            if (r.singular)
                throw Error(Status::convergence,
                            "Hankel derivative vanished at D=" + std::to_string(D));
            if (!(r.min_step <= stall_accept))
                throw Error(Status::convergence,
                            "Newton did not converge at D=" + std::to_string(D) +
                                " (best step " + format_real(r.min_step, 3) + ")");
        }
        C cur = r.eps;
        if (have_prev) {
            R dre = abs(cur.real() - prev.real());
            R dim = abs(cur.imag() - prev.imag());
            R diff = dre > dim ? dre : dim;
            if (prev_diff >= 0 && diff > prev_diff && diff > tol) {
                if (++grow >= 3)
                    throw Error(Status::convergence,
                                "sequence lost: inter-D difference grew three times in a row "
                                "(D=" + std::to_string(D) + ", last difference " +
                                    format_real(diff, 3) + ")");
            } else {
                grow = 0;
            }
            prev_diff = diff;
        }
        prev = cur;
        eps = cur;
        have_prev = true;
    }
    if (eps.imag() > 0)
        eps = conj(eps); // width convention: epsilon_I <= 0
    LadderResult<P> out;
    out.eps = eps;
    out.error_estimate = prev_diff < 0 ? 0.0 : prev_diff.template convert_to<double>();
    out.D_final = D_min + (D_max - D_min) / 2 * 2;
    return out;
}

} // namespace rpmres
