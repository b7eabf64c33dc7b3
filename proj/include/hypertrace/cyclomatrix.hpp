#ifndef HYPERTRACE_CYCLOMATRIX_HPP
#define HYPERTRACE_CYCLOMATRIX_HPP

#include <vector>

#include "cyclotomic.hpp"

namespace hypertrace {

/// Dense matrix over Q(zeta); rows of equal length.
using CMat = std::vector<std::vector<CycloNum>>;
using CVec = std::vector<CycloNum>;

inline CMat cmat_identity(size_t n) {
    CMat m(n, CVec(n, CycloNum::zero()));
    for (size_t i = 0; i < n; ++i) m[i][i] = CycloNum::one();
    return m;
}

inline CMat cmat_mul(const CMat& a, const CMat& b) {
    size_t n = a.size(), k = b.size(), c = b[0].size();
    CMat r(n, CVec(c, CycloNum::zero()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j].is_zero()) continue;
            for (size_t l = 0; l < c; ++l)
                if (!b[j][l].is_zero()) r[i][l] = r[i][l] + a[i][j] * b[j][l];
        }
    return r;
}

inline CVec cmat_apply(const CMat& a, const CVec& v) {
    CVec r(a.size(), CycloNum::zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (!a[i][j].is_zero() && !v[j].is_zero()) r[i] = r[i] + a[i][j] * v[j];
    return r;
}

inline bool cmat_is_identity(const CMat& a) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) {
            if (i == j && !(a[i][j] == CycloNum::one())) return false;
            if (i != j && !a[i][j].is_zero()) return false;
        }
    return true;
}

inline CMat cmat_sub_identity(CMat a) {  // A - I
    for (size_t i = 0; i < a.size(); ++i) a[i][i] = a[i][i] - CycloNum::one();
    return a;
}

inline CMat cmat_scaled(CMat a, const CycloNum& s) {
    for (auto& row : a)
        for (auto& v : row) v = v * s;
    return a;
}

/// Gauss-Jordan inverse; throws on singular input.
inline CMat cmat_inverse(CMat a) {
    const size_t n = a.size();
    CMat inv = cmat_identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw Error("singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        CycloNum d = a[col][col].inverse();
        for (size_t j = 0; j < n; ++j) {
            a[col][j] = a[col][j] * d;
            inv[col][j] = inv[col][j] * d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            CycloNum f = a[i][col];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] = a[i][j] - f * a[col][j];
                inv[i][j] = inv[i][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

/// Row echelon reduction in place; returns pivot columns.
inline std::vector<size_t> cmat_row_reduce(CMat& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    const size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        CycloNum d = m[row][col].inverse();
        for (size_t j = col; j < cols; ++j) m[row][j] = m[row][j] * d;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            CycloNum f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline size_t cmat_rank(CMat m) { return cmat_row_reduce(m).size(); }

/// Basis of the right kernel of m (as column vectors).
inline std::vector<CVec> cmat_kernel(CMat m) {
    const size_t cols = m.empty() ? 0 : m[0].size();
    auto pivots = cmat_row_reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<CVec> basis;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        CVec v(cols, CycloNum::zero());
        v[free_col] = CycloNum::one();
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Dimension of the span of a set of vectors.
inline size_t span_dim(const std::vector<CVec>& vecs) {
    if (vecs.empty()) return 0;
    CMat m = vecs;
    return cmat_rank(std::move(m));
}

/// Eigenvalue exponents (of zeta_L) with multiplicities, assuming the matrix
/// is semisimple with all eigenvalues in mu_L. Throws NonSemisimple if the
/// eigenspaces do not fill the rank.
inline std::vector<std::pair<long long, long>> root_of_unity_eigenvalues(const CMat& a,
                                                                         long long L) {
    const size_t n = a.size();
    std::vector<std::pair<long long, long>> out;
    size_t total = 0;
    for (long long k = 0; k < L; ++k) {
        CMat shifted = a;
        CycloNum z = CycloNum::root_of_unity(L, k);
        for (size_t i = 0; i < n; ++i) shifted[i][i] = shifted[i][i] - z;
        size_t dim = cmat_kernel(std::move(shifted)).size();
        if (dim) {
            out.emplace_back(k, static_cast<long>(dim));
            total += dim;
        }
    }
    if (total != n)
        throw NonSemisimple("matrix is not semisimple with mu_L eigenvalues");
    return out;
}

/// Burnside criterion: the tuple acts (geometrically) irreducibly iff the
/// algebra generated by the matrices has full dimension d^2.
inline bool generates_full_algebra(const std::vector<CMat>& mats, size_t d) {
    auto flatten = [d](const CMat& m) {
        CVec v;
        v.reserve(d * d);
        for (const auto& row : m)
            for (const auto& x : row) v.push_back(x);
        return v;
    };
    std::vector<CMat> basis{cmat_identity(d)};
    std::vector<CVec> flat{flatten(basis[0])};
    size_t dim = 1;
    for (size_t next = 0; next < basis.size(); ++next) {
        for (const auto& m : mats) {
            CMat prod = cmat_mul(m, basis[next]);
            auto f = flatten(prod);
            std::vector<CVec> trial = flat;
            trial.push_back(f);
            if (span_dim(trial) > dim) {
                basis.push_back(std::move(prod));
                flat.push_back(std::move(f));
                ++dim;
                if (dim == d * d) return true;
            }
        }
    }
    return dim == d * d;
}

}  // namespace hypertrace

#endif
