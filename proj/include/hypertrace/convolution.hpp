#ifndef HYPERTRACE_CONVOLUTION_HPP
#define HYPERTRACE_CONVOLUTION_HPP

#include "cyclomatrix.hpp"
#include "monodromy.hpp"

namespace hypertrace {

/// An exact matrix tuple (M_1, ..., M_m) in GL_d(Q(zeta)) with product 1.
/// The last entry is understood as the local monodromy at infinity.
struct MatrixTuple {
    long rank;
    std::vector<CMat> mats;

    MatrixTuple(long d, std::vector<CMat> ms) : rank(d), mats(std::move(ms)) {
        if (mats.size() < 2) throw Error("need at least two matrices");
        CMat prod = cmat_identity(static_cast<size_t>(rank));
        for (const auto& m : mats) {
            if (m.size() != static_cast<size_t>(rank))
                throw Error("matrix size mismatch");
            prod = cmat_mul(prod, m);
        }
        if (!cmat_is_identity(prod))
            throw DeterminantViolation("matrix tuple product is not the identity");
    }

    size_t points() const { return mats.size(); }
};

/// Builds a rank-1 tuple of scalars zeta_L^(e_i); exponents must sum to
/// 0 mod L.
inline MatrixTuple kummer_matrix_tuple(long long L, const std::vector<long long>& exponents) {
    std::vector<CMat> mats;
    long long total = 0;
    for (long long e : exponents) {
        mats.push_back({{CycloNum::root_of_unity(L, e)}});
        total += e;
    }
    if (((total % L) + L) % L != 0)
        throw DeterminantViolation("kummer exponents must sum to 0 mod L");
    return MatrixTuple(1, std::move(mats));
}

namespace detail {

/// The Dettweiler-Reiter big matrices: B_k is the identity outside block row
/// k, whose blocks are (lam (A_1 - 1), ..., lam (A_{k-1} - 1), lam A_k,
/// A_{k+1} - 1, ..., A_p - 1).
inline std::vector<CMat> dr_big_matrices(const std::vector<CMat>& A, const CycloNum& lam) {
    const size_t p = A.size();
    const size_t n = A[0].size();
    std::vector<CMat> B;
    for (size_t k = 0; k < p; ++k) {
        CMat b = cmat_identity(p * n);
        for (size_t j = 0; j < p; ++j) {
            CMat block;
            if (j < k) block = cmat_scaled(cmat_sub_identity(A[j]), lam);
            else if (j == k) block = cmat_scaled(A[k], lam);
            else block = cmat_sub_identity(A[j]);
            for (size_t r = 0; r < n; ++r)
                for (size_t c = 0; c < n; ++c)
                    b[k * n + r][j * n + c] = block[r][c];
        }
        B.push_back(std::move(b));
    }
    return B;
}

/// Coordinates of the invariant subspace K + L inside V^p: K is the direct
/// sum of ker(A_k - 1) in block position k, L the common kernel of the B_k.
inline std::vector<CVec> dr_junk_subspace(const std::vector<CMat>& A,
                                          const std::vector<CMat>& B) {
    const size_t p = A.size();
    const size_t n = A[0].size();
    std::vector<CVec> vecs;
    for (size_t k = 0; k < p; ++k) {
        for (const auto& v : cmat_kernel(cmat_sub_identity(A[k]))) {
            CVec big(p * n, CycloNum::zero());
            for (size_t i = 0; i < n; ++i) big[k * n + i] = v[i];
            vecs.push_back(std::move(big));
        }
    }
    CMat stacked;
    for (const auto& b : B) {
        CMat bmi = cmat_sub_identity(b);
        for (auto& row : bmi) stacked.push_back(std::move(row));
    }
    for (auto& v : cmat_kernel(std::move(stacked))) vecs.push_back(std::move(v));
    return vecs;
}

/// Action of each B on the quotient V^p / span(junk).
inline std::vector<CMat> dr_quotient_action(const std::vector<CMat>& B,
                                            const std::vector<CVec>& junk) {
    const size_t N = B[0].size();
    // reduce junk to an independent spanning set with pivot bookkeeping
    CMat red;
    for (const auto& v : junk) red.push_back(v);
    auto pivots = cmat_row_reduce(red);
    const size_t s = pivots.size();
    std::vector<bool> is_pivot(N, false);
    for (size_t c : pivots) is_pivot[c] = true;
    // basis: junk pivot rows first, then standard vectors on free coordinates
    CMat P_cols;  // columns of the change of basis
    for (size_t r = 0; r < s; ++r) P_cols.push_back(red[r]);
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < N; ++c)
        if (!is_pivot[c]) {
            CVec e(N, CycloNum::zero());
            e[c] = CycloNum::one();
            P_cols.push_back(std::move(e));
            free_cols.push_back(c);
        }
    // P has the basis as columns: P[i][j] = P_cols[j][i]
    CMat P(N, CVec(N, CycloNum::zero()));
    for (size_t j = 0; j < N; ++j)
        for (size_t i = 0; i < N; ++i) P[i][j] = P_cols[j][i];
    CMat Pinv = cmat_inverse(P);
    std::vector<CMat> out;
    for (const auto& b : B) {
        CMat C = cmat_mul(Pinv, cmat_mul(b, P));
        // invariance: lower-left block must vanish
        for (size_t i = s; i < N; ++i)
            for (size_t j = 0; j < s; ++j)
                if (!C[i][j].is_zero()) throw Error("junk subspace is not invariant");
        CMat q(N - s, CVec(N - s, CycloNum::zero()));
        for (size_t i = s; i < N; ++i)
            for (size_t j = s; j < N; ++j) q[i - s][j - s] = C[i][j];
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace detail

/// Dettweiler-Reiter middle convolution MC_lambda. The input tuple lists the
/// finite-point matrices first and the infinity matrix last; the output has
/// the same shape. MC_1 is the identity functor.
inline MatrixTuple middle_convolution(const MatrixTuple& t, const CycloNum& lambda) {
    if (lambda.is_zero()) throw Error("middle convolution needs lambda != 0");
    if (lambda == CycloNum::one(lambda.level())) return t;
    if (t.rank <= 4 && !generates_full_algebra(t.mats, static_cast<size_t>(t.rank)))
        throw ReducibleInput("input tuple is reducible");
    std::vector<CMat> finite(t.mats.begin(), t.mats.end() - 1);
    auto B = detail::dr_big_matrices(finite, lambda);
    auto junk = detail::dr_junk_subspace(finite, B);
    auto quot = detail::dr_quotient_action(B, junk);
    // rebuild the infinity matrix from the product condition
    CMat prod = cmat_identity(quot[0].size());
    for (const auto& m : quot) prod = cmat_mul(prod, m);
    quot.push_back(cmat_inverse(prod));
    const long out_rank = static_cast<long>(quot[0].size());
    return MatrixTuple(out_rank, std::move(quot));
}

/// Local eigen-exponent data of a matrix tuple, as a MonodromyTuple over the
/// default points 0, 1, ..., m-2, infinity (the catalog's convention).
inline MonodromyTuple tuple_local_data(const MatrixTuple& t, long long L) {
    std::vector<std::pair<PointId, LocalDatum>> local;
    for (size_t k = 0; k < t.mats.size(); ++k) {
        std::vector<Rational> exps;
        for (auto& [e, mult] : root_of_unity_eigenvalues(t.mats[k], L))
            for (long i = 0; i < mult; ++i) exps.emplace_back(e, L);
        LocalDatum datum(std::move(exps));
        if (datum.is_trivial()) continue;
        PointId pt = (k + 1 == t.mats.size()) ? PointId::infinity()
                                              : PointId::finite(Rational(static_cast<long long>(k)));
        local.emplace_back(std::move(pt), std::move(datum));
    }
    return MonodromyTuple(t.rank, std::move(local));
}

/// True when M is a pseudoreflection: the eigenvalue 1 has multiplicity
/// rank - 1 and the remaining eigenvalue is nontrivial.
inline bool is_pseudoreflection(const CMat& m, long long L) {
    auto eig = root_of_unity_eigenvalues(m, L);
    long ones = 0, others = 0;
    for (auto& [e, mult] : eig) {
        if (e == 0) ones = mult;
        else others += mult;
    }
    return ones == static_cast<long>(m.size()) - 1 && others == 1;
}

}  // namespace hypertrace

#endif
