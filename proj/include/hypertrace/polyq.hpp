#ifndef HYPERTRACE_POLYQ_HPP
#define HYPERTRACE_POLYQ_HPP

#include <string>
#include <vector>

#include "rational.hpp"

namespace hypertrace {

/// Dense univariate polynomial over Q. Coefficient i is the x^i coefficient.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static QPoly constant(Rational v) { return QPoly({std::move(v)}); }
    static QPoly x() { return QPoly({Rational(0), Rational(1)}); }
    static QPoly monomial(Rational v, size_t deg) {
        std::vector<Rational> c(deg + 1);
        c[deg] = std::move(v);
        return QPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& operator[](size_t i) const {
        static const Rational zero;
        return i < c_.size() ? c_[i] : zero;
    }
    const Rational& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == Rational(1); }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
        return QPoly(std::move(c));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
        return QPoly(std::move(c));
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return QPoly(std::move(c));
    }
    QPoly operator-() const {
        std::vector<Rational> c(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
        return QPoly(std::move(c));
    }
    QPoly scaled(const Rational& s) const {
        std::vector<Rational> c(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * s;
        return QPoly(std::move(c));
    }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
        if (b.is_zero()) throw DivisionByZero("QPoly: division by zero polynomial");
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quo;
        long db = b.degree();
        if (a.degree() >= db) quo.assign(a.degree() - db + 1, Rational(0));
        Rational lead_inv = b.leading().inverse();
        for (long i = a.degree(); i >= db; --i) {
            if (rem[i].is_zero()) continue;
            Rational f = rem[i] * lead_inv;
            quo[i - db] = f;
            for (long j = 0; j <= db; ++j)
                rem[i - db + j] -= f * b.c_[j];
        }
        q = QPoly(std::move(quo));
        r = QPoly(std::move(rem));
    }
    friend QPoly operator/(const QPoly& a, const QPoly& b) {
        QPoly q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend QPoly operator%(const QPoly& a, const QPoly& b) {
        QPoly q, r;
        divmod(a, b, q, r);
        return r;
    }

    QPoly monic() const {
        if (is_zero()) return *this;
        return scaled(leading().inverse());
    }

    static QPoly gcd(QPoly a, QPoly b) {
        while (!b.is_zero()) {
            QPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    QPoly derivative() const {
        if (c_.size() <= 1) return QPoly();
        std::vector<Rational> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long long>(i));
        return QPoly(std::move(c));
    }

    Rational eval(const Rational& x) const {
        Rational r;
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    /// Primitive integer version: clears denominators, divides by content,
    /// and makes the leading coefficient positive.
    QPoly primitive() const {
        if (is_zero()) return *this;
        BigInt den_lcm(1);
        for (const auto& c : c_)
            den_lcm = den_lcm / BigInt::gcd(den_lcm, c.den()) * c.den();
        BigInt content(0);
        for (const auto& c : c_) content = BigInt::gcd(content, c.num() * (den_lcm / c.den()));
        std::vector<Rational> out(c_.size());
        for (size_t i = 0; i < c_.size(); ++i)
            out[i] = Rational(c_[i].num() * (den_lcm / c_[i].den()) / content);
        QPoly p(std::move(out));
        if (p.leading().sign() < 0) p = -p;
        return p;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += c_[i].sign() > 0 ? " + " : " - ";
            else if (c_[i].sign() < 0) s += "-";
            Rational a = c_[i].sign() < 0 ? -c_[i] : c_[i];
            bool unit = (a == Rational(1)) && i > 0;
            if (!unit) s += a.to_string();
            if (i > 0) {
                if (!unit) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    std::vector<Rational> c_;
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

}  // namespace hypertrace

#endif
