#ifndef HYPERTRACE_BIGINT_HPP
#define HYPERTRACE_BIGINT_HPP

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <string>
#include <vector>
#include <algorithm>
#include <ostream>

#include "errors.hpp"

namespace hypertrace {

/// Signed arbitrary-precision integer, little-endian limbs in base 1e9.
class BigInt {
public:
    static constexpr std::uint32_t BASE = 1000000000u;
    static constexpr int BASE_DIGITS = 9;

    BigInt() = default;

    BigInt(long long v) {  // NOLINT: implicit by design, mirrors int literals
        if (v < 0) { sign_ = -1; }
        else if (v > 0) { sign_ = 1; }
        unsigned long long m = (v < 0) ? 0ull - static_cast<unsigned long long>(v)
                                       : static_cast<unsigned long long>(v);
        while (m) { d_.push_back(static_cast<std::uint32_t>(m % BASE)); m /= BASE; }
    }

    explicit BigInt(const std::string& s) {
        size_t pos = 0;
        int sg = 1;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sg = -1;
            ++pos;
        }
        if (pos >= s.size()) throw Error("BigInt: empty string");
        for (size_t i = pos; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw Error("BigInt: bad digit in \"" + s + "\"");
        for (size_t end = s.size(); end > pos;) {
            size_t beg = end >= pos + BASE_DIGITS ? end - BASE_DIGITS : pos;
            d_.push_back(static_cast<std::uint32_t>(std::stoul(s.substr(beg, end - beg))));
            end = beg;
        }
        trim();
        sign_ = d_.empty() ? 0 : sg;
    }

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    bool is_one() const { return sign_ == 1 && d_.size() == 1 && d_[0] == 1; }
    int sign() const { return sign_; }

    bool fits_ll() const {
        static const BigInt ll_min(std::numeric_limits<long long>::min());
        static const BigInt ll_max(std::numeric_limits<long long>::max());
        return cmp(ll_min, *this) <= 0 && cmp(*this, ll_max) <= 0;
    }

    long long to_ll() const {
        long long r = 0;
        for (size_t i = d_.size(); i-- > 0;) r = r * BASE + d_[i];
        return sign_ < 0 ? -r : r;
    }

    /// Mantissa/exponent view: value = mant * (1e9)^exp9. Constant time.
    struct ScaledDouble {
        double mant = 0.0;
        long exp9 = 0;
    };
    ScaledDouble scaled_double() const {
        if (d_.empty()) return {0.0, 0};
        size_t take = std::min<size_t>(3, d_.size());
        double m = 0;
        for (size_t i = 0; i < take; ++i) m = m * BASE + d_[d_.size() - 1 - i];
        return {sign_ < 0 ? -m : m, static_cast<long>(d_.size() - take)};
    }

    /// Approximate conversion; may overflow to +-inf for huge values.
    double to_double() const {
        auto s = scaled_double();
        return s.mant * std::pow(1e9, static_cast<double>(s.exp9));
    }

    /// Number of decimal digits (0 -> 1).
    size_t digits10() const {
        if (d_.empty()) return 1;
        size_t n = (d_.size() - 1) * BASE_DIGITS;
        std::uint32_t top = d_.back();
        while (top) { ++n; top /= 10; }
        return n;
    }

    friend int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.d_, b.d_);
        return a.sign_ >= 0 ? c : -c;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.d_ = add_mag(a.d_, b.d_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.d_, b.d_);
            if (c == 0) return BigInt();
            if (c > 0) { r.d_ = sub_mag(a.d_, b.d_); r.sign_ = a.sign_; }
            else       { r.d_ = sub_mag(b.d_, a.d_); r.sign_ = b.sign_; }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.d_ = mul_mag(a.d_, b.d_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    /// Truncated division; remainder carries the dividend's sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw DivisionByZero("BigInt: division by zero");
        int c = cmp_mag(a.d_, b.d_);
        if (c < 0) { q = BigInt(); r = a; return; }
        std::vector<std::uint32_t> qm, rm;
        divmod_mag(a.d_, b.d_, qm, rm);
        q.d_ = std::move(qm); q.trim();
        r.d_ = std::move(rm); r.trim();
        q.sign_ = q.d_.empty() ? 0 : a.sign_ * b.sign_;
        r.sign_ = r.d_.empty() ? 0 : a.sign_;
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }

    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.d_.empty() ? 0 : 1;
        b.sign_ = b.d_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    static BigInt pow(BigInt base, unsigned long long e) {
        BigInt r(1);
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    std::string to_string() const {
        if (d_.empty()) return "0";
        std::string s = sign_ < 0 ? "-" : "";
        char buf[16];
        std::snprintf(buf, sizeof buf, "%u", d_.back());
        s += buf;
        for (size_t i = d_.size() - 1; i-- > 0;) {
            std::snprintf(buf, sizeof buf, "%09u", d_[i]);
            s += buf;
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& v) {
        return os << v.to_string();
    }

private:
    int sign_ = 0;
    std::vector<std::uint32_t> d_;

    void trim() {
        while (!d_.empty() && d_.back() == 0) d_.pop_back();
        if (d_.empty()) sign_ = 0;
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& hi = a.size() >= b.size() ? a : b;
        const auto& lo = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r(hi.size() + 1, 0);
        std::uint32_t carry = 0;
        for (size_t i = 0; i < hi.size(); ++i) {
            std::uint64_t cur = std::uint64_t(hi[i]) + (i < lo.size() ? lo[i] : 0) + carry;
            r[i] = static_cast<std::uint32_t>(cur % BASE);
            carry = static_cast<std::uint32_t>(cur / BASE);
        }
        r[hi.size()] = carry;
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r = a;
        std::int64_t borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            std::int64_t cur = std::int64_t(r[i]) - borrow - (i < b.size() ? b[i] : 0);
            if (cur < 0) { cur += BASE; borrow = 1; } else borrow = 0;
            r[i] = static_cast<std::uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size() + b.size(), 0);
        for (size_t i = 0; i < a.size(); ++i) {
            std::uint64_t carry = 0;
            for (size_t j = 0; j < b.size(); ++j) {
                std::uint64_t cur = std::uint64_t(a[i]) * b[j] + r[i + j] + carry;
                r[i + j] = static_cast<std::uint32_t>(cur % BASE);
                carry = cur / BASE;
            }
            size_t k = i + b.size();
            while (carry) {
                std::uint64_t cur = r[k] + carry;
                r[k] = static_cast<std::uint32_t>(cur % BASE);
                carry = cur / BASE;
                ++k;
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on base-1e9 limbs; |a| >= |b| > 0.
    static void divmod_mag(std::vector<std::uint32_t> u, std::vector<std::uint32_t> v,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
        if (v.size() == 1) {
            q.assign(u.size(), 0);
            std::uint64_t rem = 0;
            for (size_t i = u.size(); i-- > 0;) {
                std::uint64_t cur = rem * BASE + u[i];
                q[i] = static_cast<std::uint32_t>(cur / v[0]);
                rem = cur % v[0];
            }
            r.assign(1, static_cast<std::uint32_t>(rem));
            return;
        }
        const std::uint32_t d = static_cast<std::uint32_t>(BASE / (std::uint64_t(v.back()) + 1));
        u = mul_mag(u, {d});
        v = mul_mag(v, {d});
        const size_t n = v.size();
        const size_t m = u.size() - n;
        u.push_back(0);
        q.assign(m + 1, 0);
        for (size_t j = m + 1; j-- > 0;) {
            std::uint64_t num = std::uint64_t(u[j + n]) * BASE + u[j + n - 1];
            std::uint64_t qhat = num / v[n - 1];
            std::uint64_t rhat = num % v[n - 1];
            while (qhat >= BASE ||
                   qhat * v[n - 2] > rhat * BASE + u[j + n - 2]) {
                --qhat;
                rhat += v[n - 1];
                if (rhat >= BASE) break;
            }
            // multiply-subtract qhat*v from u[j..j+n]
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (size_t i = 0; i < n; ++i) {
                std::uint64_t p = qhat * v[i] + carry;
                carry = p / BASE;
                std::int64_t cur = std::int64_t(u[i + j]) - std::int64_t(p % BASE) - borrow;
                if (cur < 0) { cur += BASE; borrow = 1; } else borrow = 0;
                u[i + j] = static_cast<std::uint32_t>(cur);
            }
            std::int64_t top = std::int64_t(u[j + n]) - std::int64_t(carry) - borrow;
            if (top < 0) {  // qhat was one too large
                --qhat;
                std::uint32_t c2 = 0;
                for (size_t i = 0; i < n; ++i) {
                    std::uint64_t cur = std::uint64_t(u[i + j]) + v[i] + c2;
                    u[i + j] = static_cast<std::uint32_t>(cur % BASE);
                    c2 = static_cast<std::uint32_t>(cur / BASE);
                }
                top += c2;
            }
            u[j + n] = static_cast<std::uint32_t>(top);
            q[j] = static_cast<std::uint32_t>(qhat);
        }
        // denormalize remainder
        u.resize(n);
        std::vector<std::uint32_t> rd(u);
        std::uint64_t rem = 0;
        r.assign(rd.size(), 0);
        for (size_t i = rd.size(); i-- > 0;) {
            std::uint64_t cur = rem * BASE + rd[i];
            r[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        while (!q.empty() && q.back() == 0) q.pop_back();
    }
};

inline BigInt abs(const BigInt& v) { return v.is_negative() ? -v : v; }

}  // namespace hypertrace

#endif
