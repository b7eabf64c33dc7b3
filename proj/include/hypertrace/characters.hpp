#ifndef HYPERTRACE_CHARACTERS_HPP
#define HYPERTRACE_CHARACTERS_HPP

#include <complex>
#include <optional>

#include "cyclotomic.hpp"
#include "ff.hpp"

namespace hypertrace {

/// Convention for extending a multiplicative character to 0.
/// Jacobi: trivial character maps 0 to 1, others to 0 (the Jacobi-sum
/// convention). Strict: always 0 (point-count sums).
enum class ZeroRule { Jacobi, Strict };

/// A multiplicative character of F_q^x, pinned to the field's generator g:
/// the character g^a -> zeta_(q-1)^(e*a), stored by its exponent e.
class MultChar {
public:
    MultChar() = default;
    MultChar(FieldPtr field, std::uint64_t exponent)
        : F_(std::move(field)), e_(exponent % (F_->q() - 1)) {}

    const FieldPtr& field() const { return F_; }
    std::uint64_t exponent() const { return e_; }

    /// Exact order M; values live in Q(zeta_M).
    std::uint64_t order() const {
        std::uint64_t n = F_->q() - 1;
        return n / std::gcd(e_, n);
    }

    bool is_trivial() const { return e_ == 0; }

    /// chi(x) as an exponent of zeta_M for x != 0; nullopt encodes value 0.
    std::optional<long long> eval_exponent(std::uint32_t x) const {
        if (x == 0) return std::nullopt;
        std::uint64_t n = F_->q() - 1;
        std::uint64_t g = std::gcd(e_, n);
        std::uint64_t raw = (e_ % n) * (F_->dlog(x) % n) % n;
        return static_cast<long long>(raw / g);  // exponent of zeta_(n/g)
    }

    /// chi(x) as an exponent of zeta_L for M | L; nullopt encodes value 0
    /// (or 1 for the trivial character under the Jacobi rule).
    std::optional<long long> exp_at_level(std::uint32_t x, long long L,
                                          ZeroRule rule = ZeroRule::Jacobi) const {
        if (x == 0) {
            if (rule == ZeroRule::Jacobi && is_trivial()) return 0;
            return std::nullopt;
        }
        std::uint64_t M = order();
        auto e = eval_exponent(x);
        return *e * (L / static_cast<long long>(M));
    }

    /// chi(x) as an exact cyclotomic number at level order().
    CycloNum eval(std::uint32_t x, ZeroRule rule = ZeroRule::Jacobi) const {
        long long M = static_cast<long long>(order());
        if (x == 0) {
            if (rule == ZeroRule::Jacobi && is_trivial()) return CycloNum::one(M);
            return CycloNum::zero(M);
        }
        return CycloNum::root_of_unity(M, *eval_exponent(x));
    }

    CycloNum eval(const FFElement& x, ZeroRule rule = ZeroRule::Jacobi) const {
        return eval(x.code, rule);
    }

    /// chi(x) as a complex number (unit embedding), for float-side sums.
    std::complex<double> eval_complex(std::uint32_t x) const {
        if (x == 0) return is_trivial() ? 1.0 : 0.0;
        double M = static_cast<double>(order());
        double th = 2.0 * 3.14159265358979323846 * static_cast<double>(*eval_exponent(x)) / M;
        return {std::cos(th), std::sin(th)};
    }

    MultChar operator*(const MultChar& o) const {
        require_same_field(o);
        return MultChar(F_, (e_ + o.e_) % (F_->q() - 1));
    }
    MultChar conj() const { return MultChar(F_, (F_->q() - 1 - e_) % (F_->q() - 1)); }
    MultChar pow(long long k) const {
        std::uint64_t n = F_->q() - 1;
        long long r = k % static_cast<long long>(n);
        if (r < 0) r += static_cast<long long>(n);
        return MultChar(F_, e_ * static_cast<std::uint64_t>(r) % n);
    }

    friend bool operator==(const MultChar& a, const MultChar& b) {
        return a.F_.get() == b.F_.get() && a.e_ == b.e_;
    }
    friend bool operator!=(const MultChar& a, const MultChar& b) { return !(a == b); }

    void require_same_field(const MultChar& o) const {
        if (F_.get() != o.F_.get()) throw FieldMismatch("characters over different fields");
    }

private:
    FieldPtr F_;
    std::uint64_t e_ = 0;
};

/// Trivial character of F_q^x.
inline MultChar trivial_char(const FieldPtr& F) { return MultChar(F, 0); }

/// The Legendre (quadratic) character; q must be odd.
inline MultChar legendre_char(const FieldPtr& F) {
    if (F->q() % 2 == 0) throw Error("no quadratic character in characteristic 2");
    return MultChar(F, (F->q() - 1) / 2);
}

/// The order-N character t -> chi(t^((q-1)/N)) attached to the primitive
/// character chi: mu_N -> Q(zeta_N), chi(zeta_N) = zeta_N^k. Requires
/// q = 1 mod N.
inline MultChar chi_q(long long chi_exponent, long long N, const FieldPtr& F) {
    if ((F->q() - 1) % static_cast<std::uint64_t>(N) != 0)
        throw CongruenceViolation("q != 1 mod N: q = " + std::to_string(F->q()) +
                                  ", N = " + std::to_string(N));
    long long k = chi_exponent % N;
    if (k < 0) k += N;
    return MultChar(F, static_cast<std::uint64_t>(k) * ((F->q() - 1) / N));
}

/// The canonical additive character x -> exp(2 pi i tr(x) / p).
class AdditiveChar {
public:
    explicit AdditiveChar(FieldPtr field) : F_(std::move(field)) {}

    const FieldPtr& field() const { return F_; }

    std::complex<double> eval(std::uint32_t x) const {
        double th = 2.0 * 3.14159265358979323846 *
                    static_cast<double>(F_->abs_trace(x)) / static_cast<double>(F_->p());
        return {std::cos(th), std::sin(th)};
    }
    std::complex<double> eval_conj(std::uint32_t x) const { return std::conj(eval(x)); }

private:
    FieldPtr F_;
};

}  // namespace hypertrace

#endif
