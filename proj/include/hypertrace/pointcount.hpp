#ifndef HYPERTRACE_POINTCOUNT_HPP
#define HYPERTRACE_POINTCOUNT_HPP

#include <array>
#include <string>
#include <vector>

#include "charsums.hpp"
#include "roots.hpp"

namespace hypertrace {

/// The cycloelliptic family y^N = prod_j (x - lambda_j)^(i_j): cover degree N
/// and exponent vector i = (i_0, ..., i_{r+1}).
struct CurveFamily {
    long long N = 2;
    std::vector<long long> exps;

    CurveFamily(long long cover_degree, std::vector<long long> exponents)
        : N(cover_degree), exps(std::move(exponents)) {
        if (N < 2) throw Error("cover degree must be >= 2");
        if (exps.size() < 2) throw Error("need at least two branch exponents");
    }

    long r() const { return static_cast<long>(exps.size()) - 2; }
    long long exponent_sum() const {
        long long s = 0;
        for (long long e : exps) s += e;
        return s;
    }

    /// The gcd hypotheses of the dimension theorem: N divides no i_j and not
    /// the sum. Throws HypothesisViolation naming the failing index.
    void require_hypotheses() const {
        for (size_t j = 0; j < exps.size(); ++j) {
            long long m = exps[j] % N;
            if (m == 0)
                throw HypothesisViolation("N divides exponent i_" + std::to_string(j));
        }
        if (exponent_sum() % N == 0)
            throw HypothesisViolation("N divides the exponent sum");
    }

    bool hypotheses_hold() const {
        for (long long e : exps)
            if (e % N == 0) return false;
        return exponent_sum() % N != 0;
    }
};

/// dim of the chi-eigenspace of H^1 for primitive chi: r + 1.
inline long eigenspace_dimension(const CurveFamily& fam) {
    fam.require_hypotheses();
    return fam.r() + 1;
}

struct RamificationDatum {
    long long d_s;        // number of points in the fiber
    long long N_s;        // ramification degree of each
    long long fiber_size; // = d_s
};

/// Ramification over branch point s (index into exps) or infinity (s = -1).
inline RamificationDatum ramification_data(const CurveFamily& fam, long s) {
    fam.require_hypotheses();
    long long is = s < 0 ? fam.exponent_sum() : fam.exps.at(static_cast<size_t>(s));
    long long red = ((is % fam.N) + fam.N) % fam.N;  // nonzero under the hypotheses
    long long d = std::gcd(fam.N, red);
    return {d, fam.N / d, d};
}

namespace detail {

inline std::vector<std::uint32_t> lambda_codes(const CurveFamily& fam,
                                               const std::vector<long long>& lambda,
                                               const FieldPtr& F) {
    if (lambda.size() != fam.exps.size())
        throw Error("lambda vector length must match exponent vector");
    std::vector<std::uint32_t> codes;
    for (long long v : lambda) codes.push_back(F->from_int(v));
    for (size_t i = 0; i < codes.size(); ++i)
        for (size_t j = i + 1; j < codes.size(); ++j)
            if (codes[i] == codes[j])
                throw DiscriminantZero("lambda values collide in F_q");
    return codes;
}

}  // namespace detail

namespace detail {

/// chi^k(f) for f != 0, as an exponent of zeta_N. The abstract character
/// chi: mu_N -> Q(zeta_N) is pinned to the canonical generator of the BASE
/// prime field whenever p = 1 mod N, so that sums over all the extensions
/// F_{p^d} of one p use a single chi and Newton's identities close up.
struct ChiQEvaluator {
    const FiniteField* F;
    long long N;
    long long k;
    std::uint64_t power;       // (q - 1) / N
    FieldPtr base;             // F_p, when p = 1 mod N
    std::uint64_t base_step;   // (p - 1) / N

    ChiQEvaluator(const FieldPtr& field, long long order, long long kk)
        : F(field.get()), N(order), k(((kk % order) + order) % order) {
        if ((F->q() - 1) % static_cast<std::uint64_t>(N) != 0)
            throw CongruenceViolation("q != 1 mod N");
        power = (F->q() - 1) / static_cast<std::uint64_t>(N);
        if ((F->p() - 1) % static_cast<std::uint64_t>(N) == 0) {
            base = F->d() == 1 ? nullptr : FiniteField::make(F->p(), 1);
            base_step = (F->p() - 1) / static_cast<std::uint64_t>(N);
        } else {
            base_step = 0;
        }
    }

    long long exponent(std::uint32_t f) const {
        // f^((q-1)/N) lies in mu_N
        std::uint32_t m = F->pow(f, power);
        if (base_step == 0) {
            // mu_N not in the prime field: fall back to this field's generator
            return static_cast<long long>((F->dlog(m) / ((F->q() - 1) / N)) *
                                          static_cast<std::uint64_t>(k) % N);
        }
        const FiniteField* B = base ? base.get() : F;
        // m has a prime-subfield code
        return static_cast<long long>((B->dlog(m) / base_step) *
                                      static_cast<std::uint64_t>(k) %
                                      static_cast<std::uint64_t>(N));
    }
};

}  // namespace detail

/// S = sum over x with h(x, lambda) != 0 of chi_q^k(f_i(x)), exact in
/// Q(zeta_N). Minus S is the Frobenius trace on the chi^k-eigenspace.
inline CycloNum hyp_point_sum(const CurveFamily& fam, const std::vector<long long>& lambda,
                              long long k, const FieldPtr& F) {
    if (((k % fam.N) + fam.N) % fam.N == 0)
        throw HypothesisViolation("trivial character rejected for eigenspace sums");
    detail::ChiQEvaluator chi(F, fam.N, k);
    auto codes = detail::lambda_codes(fam, lambda, F);
    ZetaSum acc(fam.N);
    for (std::uint64_t x = 0; x < F->q(); ++x) {
        std::uint64_t e = 0;
        bool on_branch = false;
        for (size_t j = 0; j < codes.size(); ++j) {
            std::uint32_t diff = F->sub(static_cast<std::uint32_t>(x), codes[j]);
            if (diff == 0) { on_branch = true; break; }
            std::uint64_t ij = ((fam.exps[j] % static_cast<long long>(F->q() - 1)) +
                                static_cast<long long>(F->q() - 1)) % (F->q() - 1);
            e = (e + F->dlog(diff) * ij) % (F->q() - 1);
        }
        if (on_branch) continue;
        acc.add(chi.exponent(F->exp(e)));
    }
    return acc.to_cyclo();
}

struct AffineCountReport {
    std::uint64_t count = 0;                 // points with y != 0, h != 0
    std::uint64_t x_count = 0;               // #(x : h(x) != 0), the k = 0 term
    std::vector<CycloNum> eigen_sums;        // k = 1 .. N-1
    bool decomposition_exact = false;
};

/// Counts affine points of y^N = f_i(x) with y != 0 by direct enumeration
/// and verifies the exact character-eigenspace decomposition.
inline AffineCountReport curve_affine_count(const CurveFamily& fam,
                                            const std::vector<long long>& lambda,
                                            const FieldPtr& F) {
    if ((F->q() - 1) % static_cast<std::uint64_t>(fam.N) != 0)
        throw CongruenceViolation("q != 1 mod N");
    auto codes = detail::lambda_codes(fam, lambda, F);
    // how many y != 0 have y^N = c
    std::vector<std::uint32_t> nth_count(F->q(), 0);
    for (std::uint64_t y = 1; y < F->q(); ++y)
        nth_count[F->pow(static_cast<std::uint32_t>(y), static_cast<std::uint64_t>(fam.N))]++;
    AffineCountReport rep;
    for (std::uint64_t x = 0; x < F->q(); ++x) {
        std::uint32_t f = 1;
        bool on_branch = false;
        for (size_t j = 0; j < codes.size(); ++j) {
            std::uint32_t diff = F->sub(static_cast<std::uint32_t>(x), codes[j]);
            if (diff == 0) { on_branch = true; break; }
            std::uint64_t ij = ((fam.exps[j] % static_cast<long long>(F->q() - 1)) +
                                static_cast<long long>(F->q() - 1)) % (F->q() - 1);
            f = F->mul(f, F->pow(diff, ij));
        }
        if (on_branch) continue;
        rep.x_count += 1;
        rep.count += nth_count[f];
    }
    CycloNum total(Rational(static_cast<long long>(rep.x_count)), fam.N);
    for (long long k = 1; k < fam.N; ++k) {
        rep.eigen_sums.push_back(hyp_point_sum(fam, lambda, k, F));
        total = total + rep.eigen_sums.back();
    }
    CycloNum expected(Rational(static_cast<long long>(rep.count)), fam.N);
    rep.decomposition_exact = (total == expected);
    if (!rep.decomposition_exact)
        throw Error("eigenspace decomposition does not reproduce the affine count");
    return rep;
}

/// Frobenius data for one (family, lambda, chi^k, p): power sums and the
/// degree-(r+1) characteristic polynomial over Q(zeta_N).
struct FrobeniusData {
    std::uint64_t p = 0;
    long long N = 2;
    long long k = 1;
    std::vector<long long> lambda;
    std::vector<CycloNum> power_sums;  // S_1 .. S_m (traces of Frob powers)
    std::vector<CycloNum> charpoly;    // coefficient of T^j at index j, degree r+1
};

/// Builds S_d = -hyp_point_sum over F_{p^d} for d = 1..m, assembles the
/// characteristic polynomial via Newton's identities from S_1..S_{r+1}, and
/// verifies the predicted S_d against the computed ones for d > r+1.
inline FrobeniusData frobenius_charpoly(const CurveFamily& fam,
                                        const std::vector<long long>& lambda, long long k,
                                        std::uint64_t p, unsigned m,
                                        std::uint64_t bound = default_field_bound()) {
    fam.require_hypotheses();
    if (std::gcd(((k % fam.N) + fam.N) % fam.N, fam.N) != 1)
        throw HypothesisViolation("character exponent must be a unit mod N");
    const unsigned n = static_cast<unsigned>(fam.r() + 1);
    if (m < n) throw Error("need at least r+1 power sums");
    FrobeniusData data;
    data.p = p;
    data.N = fam.N;
    data.k = k;
    data.lambda = lambda;
    for (unsigned d = 1; d <= m; ++d) {
        FieldPtr F = FiniteField::make(p, d, nullptr, bound);
        data.power_sums.push_back(-hyp_point_sum(fam, lambda, k, F));
    }
    // Newton: e_j = (1/j) sum_{i=1..j} (-1)^(i-1) e_{j-i} p_i
    std::vector<CycloNum> e(n + 1, CycloNum::zero(fam.N));
    e[0] = CycloNum::one(fam.N);
    for (unsigned j = 1; j <= n; ++j) {
        CycloNum s = CycloNum::zero(fam.N);
        for (unsigned i = 1; i <= j; ++i) {
            CycloNum term = e[j - i] * data.power_sums[i - 1];
            s = (i % 2 == 1) ? s + term : s - term;
        }
        e[j] = s * CycloNum(Rational(1, static_cast<long long>(j)), fam.N);
    }
    data.charpoly.assign(n + 1, CycloNum::zero(fam.N));
    for (unsigned j = 0; j <= n; ++j) {
        CycloNum c = e[j];
        if (j % 2 == 1) c = -c;
        data.charpoly[n - j] = c;  // coefficient of T^(n-j) is (-1)^j e_j
    }
    // consistency of the higher power sums
    for (unsigned d = n + 1; d <= m; ++d) {
        CycloNum pred = CycloNum::zero(fam.N);
        for (unsigned i = 1; i <= n; ++i) {
            CycloNum term = e[i] * data.power_sums[d - i - 1];
            pred = (i % 2 == 1) ? pred + term : pred - term;
        }
        if (pred != data.power_sums[d - 1])
            throw NewtonInconsistency("predicted S_" + std::to_string(d) +
                                      " differs from the computed sum");
    }
    return data;
}

struct PurityReport {
    double max_rel_deviation = 0.0;
    double sqrt_q = 0.0;
};

/// Checks |alpha| = sqrt(p) for every root alpha of the charpoly at every
/// embedding of Q(zeta_N). Throws PurityViolation beyond 1e-6 relative.
inline PurityReport purity_check(const FrobeniusData& data, double tol = 1e-6) {
    if (data.charpoly.empty()) throw Error("purity_check: no charpoly present");
    PurityReport rep;
    rep.sqrt_q = std::sqrt(static_cast<double>(data.p));
    for (long long u = 1; u < data.N; ++u) {
        if (std::gcd(u, data.N) != 1) continue;
        std::vector<std::complex<double>> coeffs;
        for (const auto& c : data.charpoly) coeffs.push_back(c.lifted(data.N).embed(u));
        for (const auto& root : complex_roots(coeffs)) {
            double dev = std::abs(std::abs(root) - rep.sqrt_q) / rep.sqrt_q;
            rep.max_rel_deviation = std::max(rep.max_rel_deviation, dev);
            if (dev > tol)
                throw PurityViolation("root of modulus " + std::to_string(std::abs(root)) +
                                      " violates weight-1 purity at embedding " +
                                      std::to_string(u));
        }
    }
    return rep;
}

/// Hypergeometric parameters (kc/N, k(a+b+c)/N - 1, k(a+c)/N) of the
/// chi^k deRham eigenspace of y^N = x^a (x-1)^b (x-lambda)^c.
inline std::array<Rational, 3> katz_connection_params(long long N, long long a, long long b,
                                                      long long c, long long k) {
    auto bad = [N](long long v) { return ((v % N) + N) % N == 0; };
    if (bad(a) || bad(b) || bad(c) || bad(a + b + c))
        throw HypothesisViolation("N must not divide a, b, c, a+b+c");
    if (std::gcd(((k % N) + N) % N, N) != 1)
        throw HypothesisViolation("k must be a unit mod N");
    return {Rational(k * c, N), Rational(k * (a + b + c), N) - Rational(1),
            Rational(k * (a + c), N)};
}

}  // namespace hypertrace

#endif
