#ifndef HYPERTRACE_QFACTOR_HPP
#define HYPERTRACE_QFACTOR_HPP

#include <optional>
#include <vector>

#include "ff.hpp"
#include "polyq.hpp"
#include "roots.hpp"

namespace hypertrace {

/// One factor of a squarefree decomposition: f = prod part^mult.
struct SquarefreePart {
    QPoly part;
    long mult;
};

/// Yun's algorithm over Q.
inline std::vector<SquarefreePart> squarefree_decomposition(const QPoly& f) {
    std::vector<SquarefreePart> out;
    if (f.degree() <= 0) return out;
    QPoly a = f.monic();
    QPoly g = QPoly::gcd(a, a.derivative());
    QPoly w = a / g;
    long mult = 1;
    while (w.degree() > 0) {
        QPoly y = QPoly::gcd(w, g);
        QPoly part = w / y;
        if (part.degree() > 0) out.push_back({part.monic(), mult});
        w = y;
        g = g / y;
        ++mult;
    }
    return out;
}

namespace detail {

/// Rationalizes a double via continued fractions, capped denominator.
inline std::optional<Rational> rationalize(double x, long long max_den = 2000000) {
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int i = 0; i < 64; ++i) {
        double fl = std::floor(v);
        if (fl > 9e17 || fl < -9e17) return std::nullopt;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = v - fl;
        if (std::abs(rem) < 1e-12 * std::max(1.0, std::abs(x))) break;
        v = 1.0 / rem;
    }
    if (q1 == 0) return std::nullopt;
    Rational r(p1, q1);
    if (std::abs(r.to_double() - x) > 1e-7 * std::max(1.0, std::abs(x))) return std::nullopt;
    return r;
}

inline std::vector<std::complex<double>> numeric_roots(const QPoly& f) {
    std::vector<std::complex<double>> c;
    for (const auto& v : f.coeffs()) c.emplace_back(v.to_double(), 0.0);
    return complex_roots(c);
}

inline bool bigint_is_square(const BigInt& v, BigInt* root = nullptr) {
    if (v.is_negative()) return false;
    if (v.is_zero()) { if (root) *root = 0; return true; }
    // integer sqrt by monotone Newton descent from an upper bound
    BigInt x = BigInt::pow(BigInt(10), (v.digits10() + 1) / 2);
    while (true) {
        BigInt y = (x + v / x) / BigInt(2);
        if (cmp(y, x) >= 0) break;
        x = y;
    }
    if (x * x == v) { if (root) *root = x; return true; }
    return false;
}

inline bool rational_is_square(const Rational& v, Rational* root = nullptr) {
    BigInt rn, rd;
    if (!bigint_is_square(v.num(), &rn)) return false;
    if (!bigint_is_square(v.den(), &rd)) return false;
    if (root) *root = Rational(rn, rd);
    return true;
}

/// All divisors of |v|, by trial division; intended for desk-scale constants.
inline std::vector<BigInt> divisors(BigInt v) {
    if (v.is_negative()) v = -v;
    std::vector<std::pair<BigInt, int>> fac;
    BigInt two(2), one(1);
    for (long long p = 2; ; p += (p == 2 ? 1 : 2)) {
        BigInt bp(p);
        if (cmp(bp * bp, v) > 0) break;
        if (p > 20000000LL) break;  // give up on large prime cofactors below
        int e = 0;
        while ((v % bp).is_zero()) { v = v / bp; ++e; }
        if (e) fac.emplace_back(bp, e);
    }
    if (!v.is_one()) fac.emplace_back(v, 1);
    std::vector<BigInt> divs{BigInt(1)};
    for (auto& [p, e] : fac) {
        size_t n = divs.size();
        BigInt pk(1);
        for (int i = 1; i <= e; ++i) {
            pk = pk * p;
            for (size_t j = 0; j < n; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

}  // namespace detail

/// Rational roots of f (each listed once); exact. Uses numeric localization
/// with exact verification, plus divisor-candidate sweep as a safety net for
/// small constant terms.
inline std::vector<Rational> rational_roots(const QPoly& f) {
    std::vector<Rational> roots;
    if (f.degree() <= 0) return roots;
    QPoly p = f.primitive();
    // strip x^k
    size_t low = 0;
    while (low < p.coeffs().size() && p.coeffs()[low].is_zero()) ++low;
    if (low > 0) {
        roots.emplace_back(0);
        std::vector<Rational> c(p.coeffs().begin() + low, p.coeffs().end());
        p = QPoly(std::move(c)).primitive();
    }
    if (p.degree() >= 1) {
        for (const auto& z : detail::numeric_roots(p)) {
            if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real()))) continue;
            auto cand = detail::rationalize(z.real());
            if (!cand) continue;
            if (!p.eval(*cand).is_zero()) continue;
            bool dup = false;
            for (const auto& r : roots) dup = dup || r == *cand;
            if (!dup) roots.push_back(*cand);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

struct QFactor {
    QPoly poly;   // monic irreducible over Q (or unsplit remainder)
    long mult;
    bool certified;  // irreducibility certified (always true for deg <= 4)
};

namespace detail {

/// Exact no-rational-root certificate via divisor candidates.
inline bool has_no_rational_root(const QPoly& f) {
    QPoly p = f.primitive();
    const auto& c = p.coeffs();
    if (c.front().is_zero()) return false;  // root 0
    auto nums = divisors(c.front().num());
    auto dens = divisors(c.back().num());
    for (const auto& n : nums)
        for (const auto& d : dens) {
            Rational r1(n, d), r2(-n, d);
            if (p.eval(r1).is_zero() || p.eval(r2).is_zero()) return false;
        }
    return true;
}

/// Irreducibility witness: irreducible mod p implies irreducible over Q
/// (for p not dividing the leading coefficient). Scans primes up to 500;
/// Frobenius density makes a miss for an actually irreducible input
/// astronomically unlikely at that depth.
inline bool irreducible_mod_p_witness(const QPoly& f) {
    QPoly p = f.primitive();
    for (std::uint64_t pr = 3; pr < 500; pr += 2) {
        if (!is_prime_u64(pr)) continue;
        BigInt bp(static_cast<long long>(pr));
        if ((p.leading().num() % bp).is_zero()) continue;
        ::hypertrace::detail::FpPoly fp(p.coeffs().size());
        for (size_t i = 0; i < fp.size(); ++i) {
            BigInt r = p.coeffs()[i].num() % bp;
            long long v = r.to_ll() % static_cast<long long>(pr);
            if (v < 0) v += static_cast<long long>(pr);
            fp[i] = static_cast<std::uint64_t>(v);
        }
        if (::hypertrace::detail::fp_irreducible(fp, pr)) return true;
    }
    return false;
}

/// Exact certificate that a monic rational quartic with no rational roots
/// has no monic quadratic factor over Q (resolvent-cubic test).
inline bool quartic_has_no_quadratic_factor(const QPoly& f) {
    // depress: x = y - a/4 for f = x^4 + a x^3 + b x^2 + c x + d
    Rational a = f[3], b = f[2], c = f[1], d = f[0];
    Rational sh = a / Rational(4);
    // y^4 + p y^2 + q y + r
    Rational p = b - Rational(6) * sh * sh;
    Rational q = c - Rational(2) * b * sh + Rational(8) * sh * sh * sh;
    Rational r = d - c * sh + b * sh * sh - Rational(3) * sh * sh * sh * sh;
    if (q.is_zero()) {
        // biquadratic y^4 + p y^2 + r: splits iff p^2 - 4r is a square, or
        // -p + 2 sqrt(r) is a square (both covered below)
        Rational disc = p * p - Rational(4) * r;
        if (rational_is_square(disc)) return false;
        Rational sr;
        if (rational_is_square(r, &sr)) {
            if (rational_is_square(-p + Rational(2) * sr)) return false;
            if (rational_is_square(-p - Rational(2) * sr)) return false;
        }
        return true;
    }
    // y^4+py^2+qy+r = (y^2+sy+u)(y^2-sy+v) needs s^2 a root of
    // z^3 + 2p z^2 + (p^2-4r) z - q^2, with s rational
    QPoly resolvent({-(q * q), p * p - Rational(4) * r, Rational(2) * p, Rational(1)});
    for (const auto& z : rational_roots(resolvent)) {
        if (z.sign() <= 0) continue;
        if (rational_is_square(z)) return false;
    }
    return true;
}

}  // namespace detail

/// Factors f over Q: rational roots split off exactly, conjugate-pair
/// quadratics recovered and verified exactly, remainders of degree <= 4
/// certified irreducible; higher-degree remainders carry certified = false
/// only if a split could not be ruled out.
inline std::vector<QFactor> factor_over_q(const QPoly& f) {
    std::vector<QFactor> out;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        QPoly rem = part.monic();
        for (const auto& root : rational_roots(rem)) {
            QPoly lin({-root, Rational(1)});
            QPoly q, r;
            QPoly::divmod(rem, lin, q, r);
            if (!r.is_zero()) continue;
            out.push_back({lin, mult, true});
            rem = q;
        }
        // conjugate-pair quadratic extraction
        bool progress = true;
        while (rem.degree() >= 4 && progress) {
            progress = false;
            for (const auto& z : detail::numeric_roots(rem)) {
                if (z.imag() <= 1e-9) continue;
                auto tr = detail::rationalize(2.0 * z.real());
                auto nm = detail::rationalize(std::norm(z));
                if (!tr || !nm) continue;
                QPoly quad({*nm, -*tr, Rational(1)});
                QPoly q, r;
                QPoly::divmod(rem, quad, q, r);
                if (!r.is_zero()) continue;
                out.push_back({quad, mult, true});
                rem = q;
                progress = true;
                break;
            }
        }
        if (rem.degree() >= 1) {
            bool certified = false;
            if (rem.degree() == 1) {
                certified = true;
            } else if (rem.degree() == 2) {
                certified = !detail::rational_is_square(rem[1] * rem[1] -
                                                        Rational(4) * rem[2] * rem[0]);
            } else if (rem.degree() == 3) {
                certified = detail::has_no_rational_root(rem);
            } else if (rem.degree() == 4) {
                certified = detail::has_no_rational_root(rem) &&
                            detail::quartic_has_no_quadratic_factor(rem);
            }
            if (!certified) certified = detail::irreducible_mod_p_witness(rem);
            out.push_back({rem.monic(), mult, certified});
        }
    }
    return out;
}

/// A rational map num/den in lowest terms.
struct RationalMap {
    QPoly num, den;

    RationalMap(QPoly n, QPoly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw DivisionByZero("rational map with zero denominator");
        QPoly g = QPoly::gcd(num, den);
        if (g.degree() > 0) { num = num / g; den = den / g; }
        if (num.degree() <= 0 && den.degree() <= 0) throw ConstantMap("constant rational map");
    }

    long degree() const { return std::max(num.degree(), den.degree()); }

    /// Evaluate at a rational point; nullopt encodes the value infinity.
    std::optional<Rational> eval(const Rational& x) const {
        Rational d = den.eval(x);
        if (d.is_zero()) return std::nullopt;
        return num.eval(x) / d;
    }

    /// Value at x = infinity; nullopt is infinity.
    std::optional<Rational> eval_at_infinity() const {
        if (num.degree() > den.degree()) return std::nullopt;
        if (num.degree() < den.degree()) return Rational(0);
        return num.leading() / den.leading();
    }
};

/// One place of a fiber R^(-1)(c).
struct FiberPlace {
    bool at_infinity = false;
    bool algebraic = false;
    Rational point;      // finite rational place
    QPoly min_poly;      // algebraic place
    long degree = 1;
    long ram = 1;        // ramification index e
    bool certified = true;
};

/// The full fiber of R over c (c = nullopt means infinity), as places with
/// ramification indices. Degrees times indices sum to deg R.
inline std::vector<FiberPlace> rational_map_fibers(const RationalMap& R,
                                                   const std::optional<Rational>& c) {
    const long D = R.degree();
    QPoly target = c ? (R.num - R.den.scaled(*c)) : R.den;
    std::vector<FiberPlace> out;
    long affine_total = 0;
    for (const auto& fac : factor_over_q(target)) {
        FiberPlace pl;
        pl.ram = fac.mult;
        pl.degree = fac.poly.degree();
        pl.certified = fac.certified;
        if (fac.poly.degree() == 1) {
            pl.point = -fac.poly[0] / fac.poly[1];
        } else {
            pl.algebraic = true;
            pl.min_poly = fac.poly;
        }
        affine_total += pl.degree * pl.ram;
        out.push_back(std::move(pl));
    }
    if (affine_total < D) {
        FiberPlace inf;
        inf.at_infinity = true;
        inf.ram = D - affine_total;
        out.push_back(inf);
    }
    return out;
}

}  // namespace hypertrace

#endif
