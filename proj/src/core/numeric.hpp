#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cstdlib>
#include <ios>
#include <string>

#include "error.hpp"

namespace rpmres {

namespace mp = boost::multiprecision;

// Fixed precision levels; a request maps to the smallest level that covers it.
template <unsigned Digits>
struct prec {
    using real = mp::number<mp::cpp_bin_float<Digits>, mp::et_off>;
    using cplx = mp::cpp_complex<Digits>;
    static constexpr int digits10 = static_cast<int>(Digits);
};

using p32 = prec<32>;
using p50 = prec<50>;
using p64 = prec<64>;
using p100 = prec<100>;

inline int pick_digits(int requested)
{
    if (requested < 30)
        throw Error(Status::config, "precision_digits must be at least 30");
    if (requested <= 32) return 32;
    if (requested <= 50) return 50;
    if (requested <= 64) return 64;
    if (requested <= 100) return 100;
    throw Error(Status::config, "precision_digits above 100 is not supported");
}

template <class R>
R parse_real(const std::string& s)
{
    if (s.empty())
        throw Error(Status::config, "empty numeric string");
    try {
        return R(s);
    } catch (const std::exception&) {
        throw Error(Status::config, "cannot parse number '" + s + "'");
    }
}

template <>
inline long double parse_real<long double>(const std::string& s)
{
    if (s.empty())
        throw Error(Status::config, "empty numeric string");
    char* end = nullptr;
    long double v = strtold(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw Error(Status::config, "cannot parse number '" + s + "'");
    return v;
}

template <>
inline double parse_real<double>(const std::string& s)
{
    return static_cast<double>(parse_real<long double>(s));
}

// Scientific notation, enough digits for exact value round-trip.
template <class R>
std::string format_real(const R& x, int sig_digits)
{
    return x.str(sig_digits, std::ios_base::scientific);
}

} // namespace rpmres
