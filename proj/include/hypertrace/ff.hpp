#ifndef HYPERTRACE_FF_HPP
#define HYPERTRACE_FF_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "primes.hpp"

namespace hypertrace {

/// Default cap on q = p^d so full discrete-log tables stay in memory.
inline std::uint64_t default_field_bound() {
    if (const char* env = std::getenv("HYPERTRACE_FIELD_BOUND"))
        return std::strtoull(env, nullptr, 10);
    return 1ull << 24;
}

namespace detail {

// Arithmetic on F_p[x] with small coefficient vectors; only used during
// field construction (irreducibility tests, generator search).
using FpPoly = std::vector<std::uint64_t>;

inline void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // reduce by monic mod
    size_t dm = mod.size() - 1;
    for (size_t i = r.size(); i-- > dm;) {
        std::uint64_t f = r[i];
        if (!f) continue;
        r[i] = 0;
        for (size_t j = 0; j < dm; ++j)
            r[i - dm + j] = (r[i - dm + j] + (p - mod[j] % p) * f) % p;
    }
    r.resize(dm);
    fp_trim(r);
    return r;
}

inline FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& mod, std::uint64_t p) {
    FpPoly r{1};
    while (e) {
        if (e & 1) r = fp_mulmod(r, base, mod, p);
        base = fp_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

inline FpPoly fp_mod(FpPoly r, const FpPoly& b, std::uint64_t p) {
    const size_t db = b.size() - 1;
    const std::uint64_t li = powmod_u64(b.back() % p, p - 2, p);
    fp_trim(r);
    while (r.size() > db) {
        const size_t i = r.size() - 1;
        const std::uint64_t f = (r[i] * li) % p;
        if (f) {
            for (size_t j = 0; j <= db; ++j)
                r[i - db + j] = (r[i - db + j] + (p - b[j] % p) * f) % p;
        }
        r.pop_back();
        fp_trim(r);
    }
    return r;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin irreducibility test for a monic degree-d polynomial over F_p.
inline bool fp_irreducible(const FpPoly& f, std::uint64_t p) {
    size_t d = f.size() - 1;
    if (d == 0) return false;
    FpPoly x{0, 1};
    // x^(p^d) == x mod f
    FpPoly t = x;
    for (size_t i = 0; i < d; ++i) t = fp_powmod(t, p, f, p);
    FpPoly diff = t;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    fp_trim(diff);
    if (!diff.empty()) return false;
    for (std::uint64_t r : prime_divisors_u64(d)) {
        FpPoly u = x;
        for (size_t i = 0; i < d / r; ++i) u = fp_powmod(u, p, f, p);
        FpPoly g = u;
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        fp_trim(g);
        // g = 0 means every factor of f has degree dividing d/r
        if (g.empty() || fp_gcd(f, g, p).size() > 1) return false;
    }
    return true;
}

}  // namespace detail

/// A realized finite field F_{p^d} with generator and full discrete-log table.
/// Immutable after construction; shared freely between threads.
class FiniteField {
public:
    /// Builds the field. When no modulus is supplied the lowest monic
    /// irreducible of degree d (ordered by packed coefficient code) is used,
    /// so runs are reproducible. The generator is the smallest element in
    /// packed-code order passing the prime-order tests.
    static std::shared_ptr<const FiniteField> make(
        std::uint64_t p, unsigned d,
        const std::vector<std::uint64_t>* modulus = nullptr,
        std::uint64_t bound = default_field_bound()) {
        return std::shared_ptr<const FiniteField>(new FiniteField(p, d, modulus, bound, 0));
    }

    /// Variant fixing generator = canonical_generator^u, gcd(u, q-1) = 1.
    /// Exists so generator-independence of derived values can be tested.
    static std::shared_ptr<const FiniteField> make_with_generator_power(
        std::uint64_t p, unsigned d, std::uint64_t u,
        const std::vector<std::uint64_t>* modulus = nullptr,
        std::uint64_t bound = default_field_bound()) {
        return std::shared_ptr<const FiniteField>(new FiniteField(p, d, modulus, bound, u));
    }

    /// Parses "p" or "p^d".
    static std::shared_ptr<const FiniteField> parse(const std::string& s) {
        auto caret = s.find('^');
        if (caret == std::string::npos) return make(std::stoull(s), 1);
        return make(std::stoull(s.substr(0, caret)),
                    static_cast<unsigned>(std::stoul(s.substr(caret + 1))));
    }

    std::uint64_t p() const { return p_; }
    unsigned d() const { return d_; }
    std::uint64_t q() const { return q_; }
    std::uint32_t generator() const { return exp_[1]; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    std::string name() const {
        return d_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(d_);
    }

    /// dlog(x) with generator^dlog(x) = x, for x != 0.
    std::uint64_t dlog(std::uint32_t x) const {
        if (x == 0) throw ZeroElement("dlog of zero element");
        return dlog_[x];
    }
    std::uint32_t exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (d_ == 1) {
            std::uint64_t s = std::uint64_t(a) + b;
            return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
        }
        std::uint32_t r = 0, pw = 1;
        for (unsigned i = 0; i < d_; ++i) {
            std::uint64_t da = (a / pow_p_[i]) % p_, db = (b / pow_p_[i]) % p_;
            std::uint64_t s = da + db;
            if (s >= p_) s -= p_;
            r += static_cast<std::uint32_t>(s) * pw;
            pw *= static_cast<std::uint32_t>(p_);
        }
        return r;
    }

    std::uint32_t neg(std::uint32_t a) const {
        if (a == 0) return 0;
        if (d_ == 1) return static_cast<std::uint32_t>(p_ - a);
        std::uint32_t r = 0, pw = 1;
        for (unsigned i = 0; i < d_; ++i) {
            std::uint64_t da = (a / pow_p_[i]) % p_;
            r += static_cast<std::uint32_t>(da ? p_ - da : 0) * pw;
            pw *= static_cast<std::uint32_t>(p_);
        }
        return r;
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        std::uint64_t e = dlog_[a] + dlog_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw ZeroElement("inverse of zero element");
        std::uint64_t e = dlog_[a];
        return exp_[e == 0 ? 0 : q_ - 1 - e];
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t k) const {
        if (a == 0) return k == 0 ? 1 : 0;
        return exp_[(dlog_[a] % (q_ - 1)) * (k % (q_ - 1)) % (q_ - 1)];
    }

    /// Embeds an integer (the prime subfield).
    std::uint32_t from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t frobenius(std::uint32_t a) const { return pow(a, p_); }

    /// Absolute trace x + x^p + ... + x^(p^(d-1)), landing in F_p.
    std::uint64_t abs_trace(std::uint32_t x) const {
        std::uint32_t s = 0, t = x;
        for (unsigned i = 0; i < d_; ++i) {
            s = add(s, t);
            t = frobenius(t);
        }
        return s;  // an F_p element is its own packed code
    }

    std::vector<std::uint64_t> coeffs(std::uint32_t a) const {
        std::vector<std::uint64_t> c(d_);
        for (unsigned i = 0; i < d_; ++i) c[i] = (a / pow_p_[i]) % p_;
        return c;
    }

private:
    std::uint64_t p_, q_;
    unsigned d_;
    std::vector<std::uint64_t> modulus_;   // monic, length d+1
    std::vector<std::uint64_t> pow_p_;     // p^i for digit extraction
    std::vector<std::uint32_t> exp_;       // exp_[e] = g^e, e in [0, q-1)
    std::vector<std::uint64_t> dlog_;      // dlog_[x], x in [1, q)

    FiniteField(std::uint64_t p, unsigned d, const std::vector<std::uint64_t>* modulus,
                std::uint64_t bound, std::uint64_t gen_power) : p_(p), d_(d) {
        if (!is_prime_u64(p)) throw NotPrime("p = " + std::to_string(p) + " is not prime");
        if (d < 1) throw Error("extension degree must be >= 1");
        q_ = 1;
        for (unsigned i = 0; i < d; ++i) {
            if (q_ > bound / p + 1) throw FieldTooLarge("q = p^d exceeds field bound");
            q_ *= p;
        }
        if (q_ > bound) throw FieldTooLarge("q = " + std::to_string(q_) + " exceeds field bound " +
                                            std::to_string(bound));
        pow_p_.resize(d);
        pow_p_[0] = 1;
        for (unsigned i = 1; i < d; ++i) pow_p_[i] = pow_p_[i - 1] * p;

        if (d == 1) {
            modulus_ = {0, 1};  // x, by convention
        } else if (modulus) {
            if (modulus->size() != d + 1 || (*modulus)[d] % p != 1)
                throw ReducibleModulus("modulus must be monic of degree d");
            detail::FpPoly f(modulus->begin(), modulus->end());
            for (auto& c : f) c %= p;
            if (!detail::fp_irreducible(f, p))
                throw ReducibleModulus("supplied modulus is reducible over F_p");
            modulus_.assign(f.begin(), f.end());
        } else {
            modulus_ = search_modulus();
        }

        std::uint32_t g = search_generator();
        if (gen_power > 1) {
            if (std::gcd(gen_power, q_ - 1) != 1)
                throw Error("generator power must be coprime to q-1");
            g = pow_raw(g, gen_power);
        }
        build_tables(g);
    }

    std::vector<std::uint64_t> search_modulus() const {
        // lowest packed code first: code = sum c_i p^i over i < d
        for (std::uint64_t code = 0; code < q_; ++code) {
            detail::FpPoly f(d_ + 1);
            std::uint64_t c = code;
            for (unsigned i = 0; i < d_; ++i) { f[i] = c % p_; c /= p_; }
            f[d_] = 1;
            if (detail::fp_irreducible(f, p_))
                return std::vector<std::uint64_t>(f.begin(), f.end());
        }
        throw Error("no irreducible modulus found");  // unreachable
    }

    // Multiplication without tables, used during construction only.
    std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const {
        detail::FpPoly pa(d_), pb(d_), mod(modulus_.begin(), modulus_.end());
        for (unsigned i = 0; i < d_; ++i) { pa[i] = (a / pow_p_[i]) % p_; pb[i] = (b / pow_p_[i]) % p_; }
        detail::fp_trim(pa);
        detail::fp_trim(pb);
        detail::FpPoly pr = detail::fp_mulmod(pa, pb, mod, p_);
        std::uint32_t r = 0;
        for (size_t i = 0; i < pr.size(); ++i) r += static_cast<std::uint32_t>(pr[i] * pow_p_[i]);
        return r;
    }

    std::uint32_t pow_raw(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul_raw(r, a);
            a = mul_raw(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint32_t search_generator() const {
        auto primes = prime_divisors_u64(q_ - 1);
        for (std::uint32_t g = 1; g < q_; ++g) {
            bool ok = true;
            for (std::uint64_t r : primes) {
                if (pow_raw(g, (q_ - 1) / r) == 1) { ok = false; break; }
            }
            if (ok && pow_raw(g, q_ - 1) == 1) return g;
        }
        throw Error("no generator found");  // unreachable
    }

    void build_tables(std::uint32_t g) {
        exp_.assign(q_ - 1, 0);
        dlog_.assign(q_, 0);
        std::vector<bool> seen(q_, false);
        std::uint32_t cur = 1;
        for (std::uint64_t e = 0; e < q_ - 1; ++e) {
            if (seen[cur]) throw Error("generator order too small");
            seen[cur] = true;
            exp_[e] = cur;
            dlog_[cur] = e;
            cur = mul_raw(cur, g);
        }
        if (cur != 1) throw Error("generator does not have order q-1");
    }
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// An element together with its field handle.
struct FFElement {
    FieldPtr field;
    std::uint32_t code = 0;

    FFElement() = default;
    FFElement(FieldPtr f, std::uint32_t c) : field(std::move(f)), code(c) {}

    bool is_zero() const { return code == 0; }
    friend bool operator==(const FFElement& a, const FFElement& b) {
        return a.code == b.code && a.field.get() == b.field.get();
    }

    FFElement operator+(const FFElement& o) const { return {field, field->add(code, o.code)}; }
    FFElement operator-(const FFElement& o) const { return {field, field->sub(code, o.code)}; }
    FFElement operator*(const FFElement& o) const { return {field, field->mul(code, o.code)}; }
    FFElement inverse() const { return {field, field->inv(code)}; }
    FFElement pow(std::uint64_t k) const { return {field, field->pow(code, k)}; }
};

}  // namespace hypertrace

#endif
