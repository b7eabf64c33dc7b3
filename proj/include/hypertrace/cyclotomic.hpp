#ifndef HYPERTRACE_CYCLOTOMIC_HPP
#define HYPERTRACE_CYCLOTOMIC_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <vector>

#include "polyq.hpp"
#include "primes.hpp"

namespace hypertrace {

namespace detail {

// Integer polynomial division helpers for computing cyclotomic polynomials.
// Coefficients of Phi_L are tiny at these levels, so long long is plenty.
inline std::vector<long long> zpoly_divexact(const std::vector<long long>& a,
                                             const std::vector<long long>& b) {
    std::vector<long long> r = a, q(a.size() - b.size() + 1, 0);
    for (size_t qi = q.size(); qi-- > 0;) {
        size_t i = qi + b.size() - 1;
        long long f = r[i] / b.back();
        q[qi] = f;
        if (f)
            for (size_t j = 0; j < b.size(); ++j) r[qi + j] -= f * b[j];
    }
    return q;
}

}  // namespace detail

/// Phi_L as integer coefficients, computed by dividing x^L - 1 by the
/// cyclotomic polynomials of the proper divisors of L. Cached.
inline const std::vector<long long>& cyclotomic_polynomial_z(long long L) {
    static std::map<long long, std::vector<long long>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it != cache.end()) return it->second;
    std::function<const std::vector<long long>&(long long)> get =
        [&](long long n) -> const std::vector<long long>& {
        auto found = cache.find(n);
        if (found != cache.end()) return found->second;
        std::vector<long long> quot(n + 1, 0);
        quot[0] = -1;
        quot[n] = 1;  // x^n - 1
        for (long long d = 1; d < n; ++d) {
            if (n % d == 0) quot = detail::zpoly_divexact(quot, get(d));
        }
        return cache.emplace(n, std::move(quot)).first->second;
    };
    return get(L);
}

inline QPoly cyclotomic_polynomial(long long L) {
    const auto& z = cyclotomic_polynomial_z(L);
    std::vector<Rational> c(z.size());
    for (size_t i = 0; i < z.size(); ++i) c[i] = Rational(z[i]);
    return QPoly(std::move(c));
}

namespace detail {

/// Reduction data for one cyclotomic level: Phi_L and the reduced powers
/// x^j mod Phi_L for every j we may meet (products and substitutions).
struct LevelData {
    long long L = 1;
    size_t phi = 1;
    std::vector<long long> Phi;
    std::vector<std::vector<long long>> pow;  // pow[j] has length phi

    explicit LevelData(long long level) : L(level) {
        Phi = cyclotomic_polynomial_z(L);
        phi = Phi.size() - 1;
        size_t need = std::max<size_t>(static_cast<size_t>(L), 2 * phi) + 1;
        pow.resize(need);
        std::vector<long long> cur(phi, 0);
        cur[0] = 1;  // x^0
        for (size_t j = 0; j < need; ++j) {
            pow[j] = cur;
            // multiply by x and reduce
            long long top = cur[phi - 1];
            for (size_t i = phi; i-- > 1;) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (top)
                for (size_t i = 0; i < phi; ++i) cur[i] -= top * Phi[i];
        }
    }
};

inline const LevelData& level_data(long long L) {
    static std::map<long long, LevelData> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it == cache.end()) it = cache.emplace(L, LevelData(L)).first;
    return it->second;
}

}  // namespace detail

/// An exact element of Q(zeta_L), stored as the canonical residue mod Phi_L.
/// Immutable value type; equality is coefficientwise.
class CycloNum {
public:
    CycloNum() : L_(1), c_(1) {}
    explicit CycloNum(Rational r, long long L = 1) : L_(L), c_(detail::level_data(L).phi) {
        c_[0] = std::move(r);
    }
    CycloNum(long long L, std::vector<Rational> coeffs) : L_(L), c_(std::move(coeffs)) {
        if (c_.size() != detail::level_data(L).phi)
            throw Error("CycloNum: coefficient length must be phi(L)");
    }

    /// zeta_L^k, reduced mod Phi_L.
    static CycloNum root_of_unity(long long L, long long k) {
        const auto& ld = detail::level_data(L);
        k %= L;
        if (k < 0) k += L;
        std::vector<Rational> c(ld.phi);
        for (size_t i = 0; i < ld.phi; ++i) c[i] = Rational(ld.pow[k][i]);
        return CycloNum(L, std::move(c));
    }

    static CycloNum zero(long long L = 1) { return CycloNum(Rational(0), L); }
    static CycloNum one(long long L = 1) { return CycloNum(Rational(1), L); }

    long long level() const { return L_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    const Rational& rational_part() const { return c_[0]; }

    /// Rewrites the element in Q(zeta_M) for L | M.
    CycloNum lifted(long long M) const {
        if (M == L_) return *this;
        if (M % L_ != 0) throw Error("lift_level: target level must be a multiple");
        const auto& ld = detail::level_data(M);
        long long step = M / L_;
        std::vector<Rational> out(ld.phi);
        for (size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            const auto& row = ld.pow[static_cast<size_t>(k) * step];
            for (size_t i = 0; i < ld.phi; ++i)
                if (row[i]) out[i] += c_[k] * Rational(row[i]);
        }
        return CycloNum(M, std::move(out));
    }

    /// Attempts to rewrite at a smaller level L' | L; empty if the element
    /// does not lie in Q(zeta_{L'}).
    std::optional<CycloNum> dropped(long long Lp) const {
        if (L_ % Lp != 0) throw Error("level drop: target must divide level");
        if (Lp == L_) return *this;
        const auto& ld = detail::level_data(L_);
        const size_t phi_small = detail::level_data(Lp).phi;
        const long long step = L_ / Lp;
        // Solve B y = c where column j of B is zeta_L^(j*step) in the level-L basis.
        std::vector<std::vector<Rational>> m(ld.phi, std::vector<Rational>(phi_small + 1));
        for (size_t j = 0; j < phi_small; ++j) {
            const auto& row = ld.pow[j * step];
            for (size_t i = 0; i < ld.phi; ++i) m[i][j] = Rational(row[i]);
        }
        for (size_t i = 0; i < ld.phi; ++i) m[i][phi_small] = c_[i];
        size_t rank = 0;
        std::vector<long> pivot_col(phi_small, -1);
        for (size_t col = 0; col < phi_small && rank < ld.phi; ++col) {
            size_t piv = rank;
            while (piv < ld.phi && m[piv][col].is_zero()) ++piv;
            if (piv == ld.phi) continue;
            std::swap(m[piv], m[rank]);
            Rational inv = m[rank][col].inverse();
            for (size_t j = col; j <= phi_small; ++j) m[rank][j] *= inv;
            for (size_t i = 0; i < ld.phi; ++i) {
                if (i == rank || m[i][col].is_zero()) continue;
                Rational f = m[i][col];
                for (size_t j = col; j <= phi_small; ++j) m[i][j] -= f * m[rank][j];
            }
            pivot_col[col] = static_cast<long>(rank);
            ++rank;
        }
        for (size_t i = rank; i < ld.phi; ++i)
            if (!m[i][phi_small].is_zero()) return std::nullopt;
        std::vector<Rational> y(phi_small);
        for (size_t col = 0; col < phi_small; ++col)
            if (pivot_col[col] >= 0) y[col] = m[pivot_col[col]][phi_small];
        return CycloNum(Lp, std::move(y));
    }

    friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
        auto [x, y] = at_common_level(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend CycloNum operator-(const CycloNum& a, const CycloNum& b) {
        auto [x, y] = at_common_level(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    CycloNum operator-() const {
        CycloNum r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
        auto [x, y] = at_common_level(a, b);
        const auto& ld = detail::level_data(x.L_);
        const size_t phi = ld.phi;
        std::vector<Rational> conv(2 * phi - 1);
        for (size_t i = 0; i < phi; ++i) {
            if (x.c_[i].is_zero()) continue;
            for (size_t j = 0; j < phi; ++j) {
                if (y.c_[j].is_zero()) continue;
                conv[i + j] += x.c_[i] * y.c_[j];
            }
        }
        return CycloNum(x.L_, reduce_conv(ld, conv));
    }

    CycloNum inverse() const {
        if (is_zero()) throw DivisionByZero("CycloNum: inverse of zero");
        // extended gcd of the representative with Phi_L over Q
        QPoly a(std::vector<Rational>(c_.begin(), c_.end()));
        QPoly b = cyclotomic_polynomial(L_);
        QPoly r0 = b, r1 = a;
        QPoly s0 = QPoly(), s1 = QPoly::constant(Rational(1));  // coeffs of a
        while (r1.degree() > 0) {
            QPoly q, r;
            QPoly::divmod(r0, r1, q, r);
            QPoly s = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r1.is_zero()) throw DivisionByZero("CycloNum: not invertible (zero residue)");
        QPoly u = (s1 % b).scaled(r1[0].inverse());
        std::vector<Rational> out(c_.size());
        for (size_t i = 0; i < out.size() && i <= static_cast<size_t>(u.degree()); ++i)
            out[i] = u[i];
        return CycloNum(L_, std::move(out));
    }

    friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

    /// Galois action zeta_L -> zeta_L^u for gcd(u, L) = 1.
    CycloNum galois(long long u) const {
        u %= L_;
        if (u < 0) u += L_;
        if (std::gcd(u, L_) != 1) throw Error("galois: exponent not a unit mod level");
        const auto& ld = detail::level_data(L_);
        std::vector<Rational> out(ld.phi);
        for (size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            const auto& row = ld.pow[(k * static_cast<size_t>(u)) % static_cast<size_t>(L_)];
            for (size_t i = 0; i < ld.phi; ++i)
                if (row[i]) out[i] += c_[k] * Rational(row[i]);
        }
        return CycloNum(L_, std::move(out));
    }

    /// Complex conjugation: zeta -> zeta^(-1).
    CycloNum conj() const { return L_ <= 2 ? *this : galois(L_ - 1); }

    /// Evaluates at exp(2*pi*i*u/L); used only for float-side checks.
    std::complex<double> embed(long long u = 1) const {
        u %= L_;
        if (u < 0) u += L_;
        if (std::gcd(u, L_) != 1) throw NonUnitEmbedding("embedding not coprime to level");
        const double theta = 2.0 * 3.14159265358979323846 * static_cast<double>(u) /
                             static_cast<double>(L_);
        const std::complex<double> z(std::cos(theta), std::sin(theta));
        std::complex<double> r(0.0, 0.0);
        for (size_t i = c_.size(); i-- > 0;) r = r * z + c_[i].to_double();
        return r;
    }

    friend bool operator==(const CycloNum& a, const CycloNum& b) {
        if (a.L_ == b.L_) return a.c_ == b.c_;
        auto [x, y] = at_common_level(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

    std::string to_string() const {
        std::string s = "[";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += c_[i].to_string();
        }
        return s + "] @ zeta_" + std::to_string(L_);
    }

    static std::vector<Rational> reduce_conv(const detail::LevelData& ld,
                                             const std::vector<Rational>& conv) {
        std::vector<Rational> out(ld.phi);
        for (size_t i = 0; i < conv.size(); ++i) {
            if (conv[i].is_zero()) continue;
            if (i < ld.phi) {
                out[i] += conv[i];
            } else {
                const auto& row = ld.pow[i];
                for (size_t j = 0; j < ld.phi; ++j)
                    if (row[j]) out[j] += conv[i] * Rational(row[j]);
            }
        }
        return out;
    }

private:
    long long L_;
    std::vector<Rational> c_;

    static std::pair<CycloNum, CycloNum> at_common_level(const CycloNum& a, const CycloNum& b) {
        if (a.L_ == b.L_) return {a, b};
        long long M = std::lcm(a.L_, b.L_);
        return {a.lifted(M), b.lifted(M)};
    }
};

/// Integer-coefficient cyclotomic value; the workhorse of hot counting loops.
/// Represents sum c_i zeta_L^i with i < phi(L), already reduced mod Phi_L.
class CycloInt {
public:
    explicit CycloInt(long long L = 1) : L_(L), c_(detail::level_data(L).phi, 0) {}
    CycloInt(long long L, std::vector<long long> c) : L_(L), c_(std::move(c)) {}

    long long level() const { return L_; }
    const std::vector<long long>& coeffs() const { return c_; }
    bool is_zero() const {
        for (long long v : c_)
            if (v) return false;
        return true;
    }

    static CycloInt root_of_unity(long long L, long long k) {
        const auto& ld = detail::level_data(L);
        k %= L;
        if (k < 0) k += L;
        return CycloInt(L, ld.pow[k]);
    }

    friend CycloInt operator+(const CycloInt& a, const CycloInt& b) {
        CycloInt r = a;
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend CycloInt operator-(const CycloInt& a, const CycloInt& b) {
        CycloInt r = a;
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend CycloInt operator*(const CycloInt& a, const CycloInt& b) {
        const auto& ld = detail::level_data(a.L_);
        const size_t phi = ld.phi;
        std::vector<long long> conv(2 * phi - 1, 0);
        for (size_t i = 0; i < phi; ++i) {
            if (!a.c_[i]) continue;
            for (size_t j = 0; j < phi; ++j)
                if (b.c_[j]) conv[i + j] += a.c_[i] * b.c_[j];
        }
        std::vector<long long> out(phi, 0);
        for (size_t i = 0; i < conv.size(); ++i) {
            if (!conv[i]) continue;
            if (i < phi) {
                out[i] += conv[i];
            } else {
                const auto& row = ld.pow[i];
                for (size_t j = 0; j < phi; ++j)
                    if (row[j]) out[j] += conv[i] * row[j];
            }
        }
        return CycloInt(a.L_, std::move(out));
    }

    /// Multiply by zeta_L^k.
    CycloInt times_zeta(long long k) const { return *this * root_of_unity(L_, k); }

    friend bool operator==(const CycloInt& a, const CycloInt& b) {
        return a.L_ == b.L_ && a.c_ == b.c_;
    }
    friend bool operator!=(const CycloInt& a, const CycloInt& b) { return !(a == b); }

    CycloNum to_cyclo() const {
        std::vector<Rational> c(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) c[i] = Rational(c_[i]);
        return CycloNum(L_, std::move(c));
    }

private:
    long long L_;
    std::vector<long long> c_;
};

/// Accumulator for sums of roots of unity: counts per exponent, one final
/// reduction mod Phi_L.
class ZetaSum {
public:
    explicit ZetaSum(long long L) : L_(L), cnt_(L, 0) {}

    void add(long long exponent, long long weight = 1) {
        exponent %= L_;
        if (exponent < 0) exponent += L_;
        cnt_[exponent] += weight;
    }

    long long level() const { return L_; }

    CycloInt reduced() const {
        const auto& ld = detail::level_data(L_);
        std::vector<long long> out(ld.phi, 0);
        for (long long j = 0; j < L_; ++j) {
            if (!cnt_[j]) continue;
            const auto& row = ld.pow[j];
            for (size_t i = 0; i < ld.phi; ++i)
                if (row[i]) out[i] += cnt_[j] * row[i];
        }
        return CycloInt(L_, std::move(out));
    }

    CycloNum to_cyclo() const { return reduced().to_cyclo(); }

private:
    long long L_;
    std::vector<long long> cnt_;
};

}  // namespace hypertrace

#endif
