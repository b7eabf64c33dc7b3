#include <doctest.h>

#include <hypertrace/convolution.hpp>

using namespace hypertrace;

namespace {

// eigen-exponent multiset of each matrix of the tuple, as sorted lists
std::vector<std::vector<std::pair<long long, long>>> local_spectra(const MatrixTuple& t,
                                                                   long long L) {
    std::vector<std::vector<std::pair<long long, long>>> out;
    for (const auto& m : t.mats) out.push_back(root_of_unity_eigenvalues(m, L));
    return out;
}

}  // namespace

TEST_CASE("MC_1 is the identity functor") {
    MatrixTuple k = kummer_matrix_tuple(12, {3, 4, 5});
    MatrixTuple out = middle_convolution(k, CycloNum::one(12));
    CHECK(out.rank == 1);
    CHECK(local_spectra(out, 12) == local_spectra(k, 12));
}

TEST_CASE("Kummer to hypergeometric: rank 2 with a pseudoreflection at 1") {
    // rank-1 tuple at {0, 1, inf} with scalars zeta^3, zeta^4, zeta^5 (L = 12)
    MatrixTuple k = kummer_matrix_tuple(12, {3, 4, 5});
    CycloNum lam = CycloNum::root_of_unity(12, 2);
    MatrixTuple out = middle_convolution(k, lam);
    REQUIRE(out.rank == 2);
    REQUIRE(out.points() == 3);

    // at 0: {lam * a, 1}; at 1: pseudoreflection {1, lam * b}
    auto e0 = root_of_unity_eigenvalues(out.mats[0], 12);
    REQUIRE(e0.size() == 2);
    CHECK(e0[0] == std::pair<long long, long>(0, 1));
    CHECK(e0[1] == std::pair<long long, long>(5, 1));  // 3 + 2

    CHECK(is_pseudoreflection(out.mats[1], 12));
    auto e1 = root_of_unity_eigenvalues(out.mats[1], 12);
    bool has_lam_b = false;
    for (auto& [e, m] : e1) has_lam_b = has_lam_b || e == 6;  // 4 + 2
    CHECK(has_lam_b);

    // the local shape is rigid
    CHECK(rigidity_index(tuple_local_data(out, 12)) == 2);
}

TEST_CASE("MC applied at the degenerate scalar gives a unipotent block") {
    // the Kummer scalar at a finite point equal to lambda^-1 produces a
    // non-semisimple pseudoreflection in the convolution
    MatrixTuple k = kummer_matrix_tuple(12, {1, 5, 6});
    MatrixTuple fwd = middle_convolution(k, CycloNum::root_of_unity(12, 7));
    CHECK_THROWS_AS(root_of_unity_eigenvalues(fwd.mats[1], 12), NonSemisimple);
}

TEST_CASE("MC_lambda then MC_lambda^-1 recovers the input") {
    for (auto exps : std::vector<std::vector<long long>>{{3, 4, 5}, {2, 4, 6}}) {
        MatrixTuple k = kummer_matrix_tuple(12, exps);
        CycloNum lam = CycloNum::root_of_unity(12, 7);
        CycloNum lam_inv = CycloNum::root_of_unity(12, 5);
        MatrixTuple fwd = middle_convolution(k, lam);
        MatrixTuple back = middle_convolution(fwd, lam_inv);
        CHECK(back.rank == k.rank);
        CHECK(local_spectra(back, 12) == local_spectra(k, 12));
        CHECK(rigidity_index(tuple_local_data(back, 12)) ==
              rigidity_index(tuple_local_data(k, 12)));

        // and on the rank-2 hypergeometric output itself
        MatrixTuple fwd2 = middle_convolution(fwd, lam);
        MatrixTuple back2 = middle_convolution(fwd2, lam_inv);
        CHECK(back2.rank == fwd.rank);
        CHECK(local_spectra(back2, 12) == local_spectra(fwd, 12));
        CHECK(rigidity_index(tuple_local_data(back2, 12)) ==
              rigidity_index(tuple_local_data(fwd, 12)));
    }
}

TEST_CASE("reducible input is rejected") {
    // block-diagonal rank-2 tuple: direct sum of two Kummer tuples
    auto z = [](long long k) { return CycloNum::root_of_unity(12, k); };
    CMat m1{{z(3), CycloNum::zero()}, {CycloNum::zero(), z(4)}};
    CMat m2{{z(5), CycloNum::zero()}, {CycloNum::zero(), z(2)}};
    CMat m3{{z(4), CycloNum::zero()}, {CycloNum::zero(), z(6)}};
    MatrixTuple t(2, {m1, m2, m3});
    CHECK_THROWS_AS(middle_convolution(t, z(1)), ReducibleInput);
}

TEST_CASE("matrix tuple validation") {
    auto z = [](long long k) { return CycloNum::root_of_unity(12, k); };
    CHECK_THROWS_AS(MatrixTuple(1, {{{z(1)}}, {{z(2)}}}), DeterminantViolation);
    CHECK_THROWS_AS(kummer_matrix_tuple(12, {1, 2, 3}), DeterminantViolation);
    CHECK_NOTHROW(kummer_matrix_tuple(12, {1, 2, 9}));
}

TEST_CASE("eigenvalue extraction and semisimplicity") {
    auto z = [](long long k) { return CycloNum::root_of_unity(12, k); };
    CMat diag{{z(3), CycloNum::zero()}, {CycloNum::zero(), z(3)}};
    auto eig = root_of_unity_eigenvalues(diag, 12);
    REQUIRE(eig.size() == 1);
    CHECK(eig[0] == std::pair<long long, long>(3, 2));

    CMat jordan{{CycloNum::one(), CycloNum::one()}, {CycloNum::zero(), CycloNum::one()}};
    CHECK_THROWS_AS(root_of_unity_eigenvalues(jordan, 12), NonSemisimple);
}

TEST_CASE("burnside irreducibility") {
    auto z = [](long long k) { return CycloNum::root_of_unity(12, k); };
    // irreducible: hypergeometric pair from a middle convolution
    MatrixTuple h = middle_convolution(kummer_matrix_tuple(12, {3, 4, 5}), z(2));
    CHECK(generates_full_algebra(h.mats, 2));
    // reducible: simultaneously diagonal
    CMat m1{{z(3), CycloNum::zero()}, {CycloNum::zero(), z(4)}};
    CMat m2{{z(9), CycloNum::zero()}, {CycloNum::zero(), z(8)}};
    CHECK(!generates_full_algebra({m1, m2}, 2));
}

TEST_CASE("conjugation-orbit dimension cross-check for the rigidity formula") {
    // orbit dim of a semisimple class = d^2 - centralizer dim, computed
    // exactly as the rank of ad_M on gl_2; then
    // rig = 2 - (sum orbit dims - 2 (d^2 - 1)).
    auto z = [](long long k) { return CycloNum::root_of_unity(12, k); };
    auto orbit_dim = [&](const CMat& M) {
        // ad_M(X) = M X - X M as a 4x4 matrix acting on vec(X)
        CMat ad(4, CVec(4, CycloNum::zero()));
        for (size_t a = 0; a < 2; ++a)
            for (size_t b = 0; b < 2; ++b) {
                // basis element E_{ab}
                CMat E(2, CVec(2, CycloNum::zero()));
                E[a][b] = CycloNum::one();
                CMat br = cmat_mul(M, E);
                CMat rb = cmat_mul(E, M);
                for (size_t i = 0; i < 2; ++i)
                    for (size_t j = 0; j < 2; ++j)
                        ad[2 * i + j][2 * a + b] = br[i][j] - rb[i][j];
            }
        return cmat_rank(ad);
    };
    // four regular semisimple classes (the Lame/Legendre count)
    CMat reg{{z(0), CycloNum::zero()}, {CycloNum::zero(), z(6)}};
    // conjugate one of them to make the computation non-diagonal
    CMat P{{CycloNum::one(), z(1)}, {CycloNum::zero(), CycloNum::one()}};
    CMat conj = cmat_mul(P, cmat_mul(reg, cmat_inverse(P)));
    long total_orbit = 0;
    for (int i = 0; i < 4; ++i) total_orbit += static_cast<long>(orbit_dim(i == 0 ? conj : reg));
    long moduli = total_orbit - 2 * (4 - 1);
    CHECK(moduli == 2);
    std::vector<std::pair<PointId, LocalDatum>> lame;
    for (int i = 0; i < 3; ++i)
        lame.emplace_back(PointId::finite(Rational(i)),
                          LocalDatum({Rational(0), Rational(1, 2)}));
    lame.emplace_back(PointId::infinity(), LocalDatum({Rational(0), Rational(1, 2)}));
    CHECK(rigidity_index(MonodromyTuple(2, std::move(lame))) == 2 - moduli);

    // three-point H^can count: orbit dims 2+2+2, moduli 0, rig 2
    long hyp_orbit = static_cast<long>(orbit_dim(conj)) * 3;
    CHECK(2 - (hyp_orbit - 6) == 2);
}
