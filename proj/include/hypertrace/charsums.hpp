#ifndef HYPERTRACE_CHARSUMS_HPP
#define HYPERTRACE_CHARSUMS_HPP

#include <complex>
#include <variant>
#include <vector>

#include "characters.hpp"

namespace hypertrace {

/// Tagged sum value: exact cyclotomic on psi-free paths, complex float on
/// psi-bearing paths. The exact path never silently degrades.
using SumValue = std::variant<CycloNum, std::complex<double>>;

inline long long common_level(std::initializer_list<MultChar> chars) {
    long long L = 1;
    for (const auto& c : chars) L = std::lcm(L, static_cast<long long>(c.order()));
    return L;
}

/// J(F_q; mu, nu) = sum over x in F_q^x of mu(x) nu(1-x), with the Jacobi
/// zero convention applied to nu(0) at x = 1. Exact, integer coefficients.
inline CycloInt jacobi_sum_int(const MultChar& mu, const MultChar& nu, long long L) {
    mu.require_same_field(nu);
    const auto& F = *mu.field();
    ZetaSum acc(L);
    const std::uint32_t one = F.from_int(1);
    for (std::uint64_t x = 1; x < F.q(); ++x) {
        auto em = mu.exp_at_level(static_cast<std::uint32_t>(x), L, ZeroRule::Jacobi);
        if (!em) continue;
        auto en = nu.exp_at_level(F.sub(one, static_cast<std::uint32_t>(x)), L, ZeroRule::Jacobi);
        if (!en) continue;
        acc.add(*em + *en);
    }
    return acc.reduced();
}

inline CycloNum jacobi_sum(const MultChar& mu, const MultChar& nu) {
    return jacobi_sum_int(mu, nu, common_level({mu, nu})).to_cyclo();
}

/// g(psi; chi) = sum over x in F_q^x of psi(x) chi(x). Float-only.
inline std::complex<double> gauss_sum(const AdditiveChar& psi, const MultChar& chi) {
    if (psi.field().get() != chi.field().get())
        throw FieldMismatch("gauss_sum: characters over different fields");
    const auto& F = *chi.field();
    std::complex<double> s(0.0, 0.0);
    for (std::uint64_t x = 1; x < F.q(); ++x)
        s += psi.eval(static_cast<std::uint32_t>(x)) *
             chi.eval_complex(static_cast<std::uint32_t>(x));
    return s;
}

/// The hypergeometric core sum over all t1 in F_q of
/// lambda(t1) mu(1-t1) nu(t-t1), Jacobi zero convention throughout.
inline CycloInt hyp_core_sum_int(const MultChar& lam, const MultChar& mu, const MultChar& nu,
                                 std::uint32_t t, long long L) {
    lam.require_same_field(mu);
    lam.require_same_field(nu);
    const auto& F = *lam.field();
    ZetaSum acc(L);
    const std::uint32_t one = F.from_int(1);
    for (std::uint64_t x = 0; x < F.q(); ++x) {
        auto e1 = lam.exp_at_level(static_cast<std::uint32_t>(x), L, ZeroRule::Jacobi);
        if (!e1) continue;
        auto e2 = mu.exp_at_level(F.sub(one, static_cast<std::uint32_t>(x)), L, ZeroRule::Jacobi);
        if (!e2) continue;
        auto e3 = nu.exp_at_level(F.sub(t, static_cast<std::uint32_t>(x)), L, ZeroRule::Jacobi);
        if (!e3) continue;
        acc.add(*e1 + *e2 + *e3);
    }
    return acc.reduced();
}

inline CycloNum hyp_core_sum(const MultChar& lam, const MultChar& mu, const MultChar& nu,
                             std::uint32_t t) {
    return hyp_core_sum_int(lam, mu, nu, t, common_level({lam, mu, nu})).to_cyclo();
}

/// Parameters of a rank-2 canonical hypergeometric sheaf H^can(a1,a2; b1,b2):
/// two disjoint unordered lists of multiplicative characters over one field.
struct HCanParams {
    MultChar a1, a2, b1, b2;

    HCanParams(MultChar alpha1, MultChar alpha2, MultChar beta1, MultChar beta2)
        : a1(std::move(alpha1)), a2(std::move(alpha2)), b1(std::move(beta1)), b2(std::move(beta2)) {
        a1.require_same_field(a2);
        a1.require_same_field(b1);
        a1.require_same_field(b2);
        if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2)
            throw DegenerateParams("alpha and beta lists must be disjoint");
    }

    const FieldPtr& field() const { return a1.field(); }
    long long level() const { return common_level({a1, a2, b1, b2}); }
};

namespace detail {

inline int char_sign_at_minus1(const MultChar& c) {
    const auto& F = *c.field();
    auto e = c.exp_at_level(F.neg(F.from_int(1)), 2 * static_cast<long long>(c.order()));
    // value is +-1; even exponent of the doubled level means +1
    return (*e % (2 * static_cast<long long>(c.order()))) == 0 ? 1 : -1;
}

}  // namespace detail

/// Exact Frobenius trace of H^can at t as an integer-cyclotomic fraction
/// numer(t) / denom; denom is t-independent.
struct HCanTraceParts {
    long long level;
    CycloInt denom;  // -(b2 conj(a2))(-1)^-1 ... folded: trace = numer/denom

    HCanTraceParts(const HCanParams& p, long long L) : level(L), denom(L), params(p) {
        CycloInt j1 = jacobi_sum_int(p.a1, p.b1 * p.a1.conj(), L);
        CycloInt j2 = jacobi_sum_int(p.a2, p.b2 * p.a2.conj(), L);
        int sgn = detail::char_sign_at_minus1(p.b2 * p.a2.conj());
        CycloInt prod = j1 * j2;
        if (sgn > 0) {  // denom = -sgn * J1 * J2
            denom = CycloInt(L) - prod;
        } else {
            denom = prod;
        }
        if (denom.is_zero()) throw DegenerateParams("vanishing Jacobi normalizer");
    }

    /// The Lemma-side sum A_num * a2(t) * core(t); defined for every t != 0,
    /// including t = 1 where it computes the rank-1 stalk trace.
    CycloInt numer(std::uint32_t t) const {
        if (t == 0) throw SingularPoint("trace of H^can at t = 0");
        MultChar lam = params.a1 * params.b2.conj();
        MultChar mu = params.b1 * params.a1.conj();
        MultChar nu = params.b2 * params.a2.conj();
        CycloInt core = hyp_core_sum_int(lam, mu, nu, t, level);
        auto ea2 = params.a2.exp_at_level(t, level);
        return core.times_zeta(*ea2);
    }

    HCanParams params;
};

inline CycloNum trace_h_can(const HCanParams& p, std::uint32_t t) {
    const auto& F = *p.field();
    if (t == 0 || t == F.from_int(1)) throw SingularPoint("trace of H^can at t in {0, 1}");
    HCanTraceParts parts(p, p.level());
    return parts.numer(t).to_cyclo() / parts.denom.to_cyclo();
}

/// Closed form of the trace at t = 1 (the stalk has rank 1 there). Requires
/// the local monodromy at 1 to be a nontrivial semisimple pseudoreflection,
/// i.e. the determinant character b1 b2 conj(a1 a2) nontrivial.
inline CycloNum trace_h_can_at_1(const HCanParams& p) {
    long long L = p.level();
    MultChar top_mu = p.a1 * p.b2.conj();
    MultChar top_nu = p.b1 * p.b2 * p.a1.conj() * p.a2.conj();
    if (top_nu.is_trivial())
        throw DegenerateParams("unipotent monodromy at 1: closed form needs prod(alpha) != prod(beta)");
    CycloInt num = jacobi_sum_int(top_mu, top_nu, L);
    CycloInt j1 = jacobi_sum_int(p.a1, p.b1 * p.a1.conj(), L);
    CycloInt j2 = jacobi_sum_int(p.a2, p.b2 * p.a2.conj(), L);
    int sgn = detail::char_sign_at_minus1(p.b2 * p.a2.conj());
    CycloNum val = num.to_cyclo() / (j1 * j2).to_cyclo();
    val = -val;
    if (sgn < 0) val = -val;
    return val;
}

/// 2P1[A,B;C](x) = sum over y of B(y) (C conj(B))(1-y) conj(A)(1-xy),
/// Jacobi zero convention.
inline CycloInt p2_function_int(const MultChar& A, const MultChar& B, const MultChar& C,
                                std::uint32_t x, long long L) {
    A.require_same_field(B);
    A.require_same_field(C);
    const auto& F = *A.field();
    MultChar cb = C * B.conj();
    MultChar abar = A.conj();
    ZetaSum acc(L);
    const std::uint32_t one = F.from_int(1);
    for (std::uint64_t y = 0; y < F.q(); ++y) {
        auto e1 = B.exp_at_level(static_cast<std::uint32_t>(y), L, ZeroRule::Jacobi);
        if (!e1) continue;
        auto e2 = cb.exp_at_level(F.sub(one, static_cast<std::uint32_t>(y)), L, ZeroRule::Jacobi);
        if (!e2) continue;
        auto e3 = abar.exp_at_level(F.sub(one, F.mul(x, static_cast<std::uint32_t>(y))), L,
                                    ZeroRule::Jacobi);
        if (!e3) continue;
        acc.add(*e1 + *e2 + *e3);
    }
    return acc.reduced();
}

inline CycloNum p2_function(const MultChar& A, const MultChar& B, const MultChar& C,
                            std::uint32_t x) {
    return p2_function_int(A, B, C, x, common_level({A, B, C})).to_cyclo();
}

/// 2F1 = 2P1 / J(B, C conj(B)).
inline CycloNum f2_function(const MultChar& A, const MultChar& B, const MultChar& C,
                            std::uint32_t x) {
    long long L = common_level({A, B, C});
    CycloInt norm = jacobi_sum_int(B, C * B.conj(), L);
    if (norm.is_zero()) throw ZeroNormalizer("J(B, C conj(B)) = 0");
    return p2_function_int(A, B, C, x, L).to_cyclo() / norm.to_cyclo();
}

/// Appell-Lauricella F_D kernel:
/// sum over u of A(u) (C conj(A))(1-u) prod_i conj(B_i)(1 - x_i u).
inline CycloInt fd_appell_sum_int(const MultChar& A, const std::vector<MultChar>& Bs,
                                  const MultChar& C, const std::vector<std::uint32_t>& xs,
                                  long long L) {
    if (Bs.size() != xs.size()) throw Error("fd_appell_sum: |B| != |x|");
    for (const auto& b : Bs) A.require_same_field(b);
    A.require_same_field(C);
    const auto& F = *A.field();
    MultChar ca = C * A.conj();
    std::vector<MultChar> bbars;
    for (const auto& b : Bs) bbars.push_back(b.conj());
    ZetaSum acc(L);
    const std::uint32_t one = F.from_int(1);
    for (std::uint64_t u = 0; u < F.q(); ++u) {
        auto e = A.exp_at_level(static_cast<std::uint32_t>(u), L, ZeroRule::Jacobi);
        if (!e) continue;
        auto e2 = ca.exp_at_level(F.sub(one, static_cast<std::uint32_t>(u)), L, ZeroRule::Jacobi);
        if (!e2) continue;
        long long total = *e + *e2;
        bool zero = false;
        for (size_t i = 0; i < bbars.size(); ++i) {
            auto ei = bbars[i].exp_at_level(F.sub(one, F.mul(xs[i], static_cast<std::uint32_t>(u))),
                                            L, ZeroRule::Jacobi);
            if (!ei) { zero = true; break; }
            total += *ei;
        }
        if (zero) continue;
        acc.add(total);
    }
    return acc.reduced();
}

inline CycloNum fd_appell_sum(const MultChar& A, const std::vector<MultChar>& Bs,
                              const MultChar& C, const std::vector<std::uint32_t>& xs) {
    std::vector<MultChar> all = Bs;
    all.push_back(A);
    all.push_back(C);
    long long L = 1;
    for (const auto& c : all) L = std::lcm(L, static_cast<long long>(c.order()));
    return fd_appell_sum_int(A, Bs, C, xs, L).to_cyclo();
}

namespace detail {

inline void check_oracle_scale(size_t a, size_t b, std::uint64_t q) {
    if (a > 3 || b > 3 || a == 0 || b == 0)
        throw OracleTooLarge("katz/bcm oracle limited to 1 <= a, b <= 3");
    double work = 1.0;
    for (size_t i = 0; i + 1 < a + b; ++i) work *= static_cast<double>(q - 1);
    if (work > 5e7) throw OracleTooLarge("katz/bcm oracle: (q-1)^(a+b-1) too large");
}

}  // namespace detail

/// Literal Katz hypergeometric sum over V(n,m,t): prod x_i = t prod y_j,
/// with sign (-1)^(a+b-1). Brute force, float.
inline std::complex<double> katz_sum_bruteforce(const std::vector<MultChar>& alphas,
                                                const std::vector<MultChar>& betas,
                                                const AdditiveChar& psi, std::uint32_t t) {
    const auto& F = *psi.field();
    const size_t a = alphas.size(), b = betas.size();
    detail::check_oracle_scale(a, b, F.q());
    if (t == 0) throw SingularPoint("katz sum needs t in G_m");
    const std::uint64_t n = F.q() - 1;
    const size_t free_count = a + b - 1;  // x_1..x_{a-1}, y_1..y_b
    std::vector<std::uint64_t> idx(free_count, 0);
    std::complex<double> total(0.0, 0.0);
    while (true) {
        // decode: first a-1 entries are x_2..x_a? no: x_1..x_{a-1}; rest y_1..y_b
        std::uint32_t xprod = t;
        std::uint32_t s_x = 0, s_y = 0;
        std::complex<double> term(1.0, 0.0);
        for (size_t j = 0; j < b; ++j) {
            std::uint32_t y = F.exp(idx[a - 1 + j]);
            xprod = F.mul(xprod, y);
            s_y = F.add(s_y, y);
            term *= betas[j].conj().eval_complex(y);
        }
        for (size_t i = 0; i + 1 < a; ++i) {
            std::uint32_t x = F.exp(idx[i]);
            s_x = F.add(s_x, x);
            xprod = F.mul(xprod, F.inv(x));
            term *= alphas[i].eval_complex(x);
        }
        // last x is determined: x_a = t * prod y / prod x_(<a)
        s_x = F.add(s_x, xprod);
        term *= alphas[a - 1].eval_complex(xprod);
        term *= psi.eval(F.sub(s_x, s_y));
        total += term;
        // odometer
        size_t k = 0;
        while (k < free_count && ++idx[k] == n) idx[k++] = 0;
        if (k == free_count) break;
    }
    if ((a + b - 1) % 2 == 1) total = -total;
    return total;
}

/// BCM variant: same sum restricted to the subvariety sum x_i = sum y_j,
/// psi removed. Exact.
inline CycloNum bcm_sum(const std::vector<MultChar>& alphas, const std::vector<MultChar>& betas,
                        std::uint32_t t) {
    const auto& F = *alphas.at(0).field();
    const size_t a = alphas.size(), b = betas.size();
    detail::check_oracle_scale(a, b, F.q());
    if (t == 0) throw SingularPoint("bcm sum needs t in G_m");
    long long L = 1;
    for (const auto& c : alphas) L = std::lcm(L, static_cast<long long>(c.order()));
    for (const auto& c : betas) L = std::lcm(L, static_cast<long long>(c.order()));
    std::vector<MultChar> bbars;
    for (const auto& c : betas) bbars.push_back(c.conj());
    const std::uint64_t n = F.q() - 1;
    const size_t free_count = a + b - 1;
    std::vector<std::uint64_t> idx(free_count, 0);
    ZetaSum acc(L);
    while (true) {
        std::uint32_t xprod = t;
        std::uint32_t s_x = 0, s_y = 0;
        long long e = 0;
        for (size_t j = 0; j < b; ++j) {
            std::uint32_t y = F.exp(idx[a - 1 + j]);
            xprod = F.mul(xprod, y);
            s_y = F.add(s_y, y);
            e += *bbars[j].exp_at_level(y, L);
        }
        for (size_t i = 0; i + 1 < a; ++i) {
            std::uint32_t x = F.exp(idx[i]);
            s_x = F.add(s_x, x);
            xprod = F.mul(xprod, F.inv(x));
            e += *alphas[i].exp_at_level(x, L);
        }
        s_x = F.add(s_x, xprod);
        if (s_x == s_y) {
            e += *alphas[a - 1].exp_at_level(xprod, L);
            acc.add(e);
        }
        size_t k = 0;
        while (k < free_count && ++idx[k] == n) idx[k++] = 0;
        if (k == free_count) break;
    }
    CycloNum v = acc.to_cyclo();
    if ((a + b - 1) % 2 == 1) v = -v;
    return v;
}

}  // namespace hypertrace

#endif
