#ifndef HYPERTRACE_SERIES_HPP
#define HYPERTRACE_SERIES_HPP

#include <complex>

#include "rational.hpp"

namespace hypertrace {

/// Truncated Gauss series 2F1(a, b; c; x): rising factorials kept as exact
/// rationals, converted to float term by term. Convergence (|x| < 1) is the
/// caller's responsibility.
inline std::complex<double> f21_series(const Rational& a, const Rational& b, const Rational& c,
                                       std::complex<double> x, int terms = 200) {
    if (c.is_integer() && c.sign() <= 0)
        throw PoleInC("2F1 undefined at nonpositive integer c = " + c.to_string());
    std::complex<double> sum(0.0, 0.0);
    std::complex<double> xpow(1.0, 0.0);
    Rational coeff(1);
    for (int k = 0; k < terms; ++k) {
        sum += coeff.to_double() * xpow;
        Rational kk(k);
        coeff = coeff * (a + kk) * (b + kk) / ((c + kk) * (kk + Rational(1)));
        xpow *= x;
    }
    return sum;
}

}  // namespace hypertrace

#endif
